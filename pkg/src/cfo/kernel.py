"""One deterministic Central Force Optimization run.

Arrays are step-major: ``positions[j, p, i]`` is coordinate ``i`` of probe
``p`` at step ``j``. Probe and step indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from . import benchmarks
from .errors import ConfigurationError, ContainmentError, InvalidInputError, RunAbortedError
from .reposition import RepositionPolicy, advance_frep, outside_mask, retrieve_errant

Objective = Union[str, Callable[[np.ndarray], np.ndarray]]


class DecisionSpace:
    """Axis-aligned box that can be shrunk around a point and reset."""

    def __init__(self, lower, upper):
        lower = np.array(lower, dtype=float)
        upper = np.array(upper, dtype=float)
        if lower.ndim != 1 or lower.shape != upper.shape or lower.size == 0:
            raise InvalidInputError("lower and upper must be non-empty 1-D arrays of equal length")
        if not (np.all(np.isfinite(lower)) and np.all(np.isfinite(upper))):
            raise InvalidInputError("bounds must be finite")
        if np.any(lower > upper):
            raise InvalidInputError("every lower bound must not exceed its upper bound")
        self.initial_lower = lower
        self.initial_upper = upper
        self.initial_lower.setflags(write=False)
        self.initial_upper.setflags(write=False)
        self.lower = lower.copy()
        self.upper = upper.copy()
        self.diag_length = float(np.sqrt(np.sum((upper - lower) ** 2)))

    @classmethod
    def for_function(cls, fid: str) -> "DecisionSpace":
        spec = benchmarks.get_spec(fid)
        return cls(spec.lower, spec.upper)

    @property
    def dims(self) -> int:
        return self.lower.size

    def copy(self) -> "DecisionSpace":
        new = DecisionSpace(self.initial_lower, self.initial_upper)
        new.lower[:] = self.lower
        new.upper[:] = self.upper
        return new

    def contains(self, points) -> np.ndarray | bool:
        return ~outside_mask(np.asarray(points, dtype=float), self.lower, self.upper)

    def shrink(self, best, factor: float = 0.5) -> "DecisionSpace":
        shrink_space(self, best, factor)
        return self

    def reset(self) -> "DecisionSpace":
        return reset_space(self)

    def __repr__(self):
        return f"DecisionSpace(lower={self.lower.tolist()}, upper={self.upper.tolist()})"


def shrink_space(space: DecisionSpace, best, factor: float = 0.5) -> DecisionSpace:
    """Pull both bounds of every axis toward ``best`` by ``factor`` of the gap.

    Axes where ``best`` lies outside the current interval collapse onto
    ``best`` clamped into that interval.
    """
    if not 0 < factor <= 1:
        raise ConfigurationError(f"shrink factor must lie in (0, 1], got {factor}")
    best = np.asarray(best, dtype=float)
    lo, hi = space.lower, space.upper
    outside = (best < lo) | (best > hi)
    new_lo = lo + factor * (best - lo)
    new_hi = hi - factor * (hi - best)
    pinned = np.clip(best, lo, hi)
    new_lo = np.where(outside, pinned, new_lo)
    new_hi = np.where(outside, pinned, new_hi)
    crossed = new_lo > new_hi
    new_lo = np.where(crossed, pinned, new_lo)
    new_hi = np.where(crossed, pinned, new_hi)
    space.lower[:] = new_lo
    space.upper[:] = new_hi
    return space


def reset_space(space: DecisionSpace) -> DecisionSpace:
    space.lower[:] = space.initial_lower
    space.upper[:] = space.initial_upper
    return space


@dataclass(frozen=True)
class KernelConfig:
    max_steps: int = 1000
    alpha: float = 1.0
    beta: float = 1.0
    shrink_interval: int = 20
    shrink_factor: float = 0.5
    saturation_window: int = 25
    saturation_warmup_extra: int = 10
    saturation_tol: float = 1e-6
    distance_epsilon: float = 1e-10
    check_containment: bool = True

    def __post_init__(self):
        if self.max_steps < 1:
            raise ConfigurationError(f"max_steps must be >= 1, got {self.max_steps}")
        if self.saturation_window < 1:
            raise ConfigurationError(f"saturation_window must be >= 1, got {self.saturation_window}")
        if not 0 < self.shrink_factor <= 1:
            raise ConfigurationError(f"shrink_factor must lie in (0, 1], got {self.shrink_factor}")
        if self.shrink_interval < 1:
            raise ConfigurationError(f"shrink_interval must be >= 1, got {self.shrink_interval}")


@dataclass(frozen=True)
class BestRecord:
    fitness: float
    probe: int
    step: int


@dataclass
class RunState:
    """Position, acceleration and fitness history of one run."""

    positions: np.ndarray
    accelerations: np.ndarray
    fitness: np.ndarray
    current_step: int = 0
    eval_count: int = 0

    @classmethod
    def allocate(cls, max_steps: int, n_probes: int, dims: int) -> "RunState":
        return cls(
            positions=np.zeros((max_steps + 1, n_probes, dims)),
            accelerations=np.zeros((max_steps + 1, n_probes, dims)),
            fitness=np.zeros((max_steps + 1, n_probes)),
        )

    @property
    def n_probes(self) -> int:
        return self.positions.shape[1]

    def trimmed(self) -> "RunState":
        """View restricted to the steps actually computed."""
        n = self.current_step + 1
        return RunState(
            self.positions[:n], self.accelerations[:n], self.fitness[:n], self.current_step, self.eval_count
        )


@dataclass
class RunResult:
    best: BestRecord
    last_step: int
    eval_count: int
    history: RunState

    @property
    def best_position(self) -> np.ndarray:
        return self.history.positions[self.best.step, self.best.probe]


def unit_step(z: float) -> int:
    return 1 if z >= 0 else 0


def init_probe_lines(space: DecisionSpace, probes_per_dim: int, gamma: float) -> np.ndarray:
    """Initial probes on axis-parallel lines crossing the diagonal at ``gamma``.

    Returns an array of shape ``(probes_per_dim * dims, dims)``; probes
    ``probes_per_dim * i`` through ``probes_per_dim * (i + 1) - 1`` lie on
    the line parallel to axis ``i``, evenly spaced from lower to upper bound.
    """
    if probes_per_dim < 2:
        raise ConfigurationError(f"need at least 2 probes per dimension, got {probes_per_dim}")
    if not 0 <= gamma <= 1:
        raise ConfigurationError(f"gamma must lie in [0, 1], got {gamma}")
    lo, hi = space.lower, space.upper
    n_d = space.dims
    if n_d > 1 and probes_per_dim % 2:
        raise ConfigurationError(f"probes_per_dim must be even, got {probes_per_dim}")
    r = np.tile(lo + gamma * (hi - lo), (probes_per_dim * n_d, 1))
    k = np.arange(probes_per_dim)
    for i in range(n_d):
        delta = (hi[i] - lo[i]) / (probes_per_dim - 1)
        r[probes_per_dim * i + k, i] = lo[i] + k * delta
    return np.clip(r, lo, hi)


def compute_accelerations(positions, fitness, alpha: float = 1.0, beta: float = 1.0) -> np.ndarray:
    """Gravitational pull on every probe from every fitter (or equal) probe.

    Contributions from probes at zero distance are exactly zero. Terms are
    accumulated over the attracting probe in ascending index order.
    """
    positions = np.asarray(positions, dtype=float)
    fitness = np.asarray(fitness, dtype=float)
    diff = positions[:, None, :] - positions[None, :, :]  # [n, p] = R_n - R_p
    dist2 = np.einsum("npi,npi->np", diff, diff)
    dm = fitness[:, None] - fitness[None, :]
    active = (dm >= 0) & (dist2 != 0)
    mass = np.where(active, dm, 0.0)
    if alpha != 1:
        mass = mass**alpha
    dist = np.sqrt(dist2)
    if beta != 1:
        dist = dist**beta
    weight = np.divide(mass, dist, out=np.zeros_like(mass), where=active)
    diff *= weight[:, :, None]
    # reducing over the leading axis accumulates n = 0, 1, 2, ... in order
    return diff.sum(axis=0)


def advance_positions(positions, accelerations) -> np.ndarray:
    return np.asarray(positions) + np.asarray(accelerations)


def _step_best(row: np.ndarray, step: int) -> BestRecord:
    # last probe achieving the max wins ties
    top = row.max()
    probe = row.size - 1 - int(np.argmax(row[::-1] == top))
    return BestRecord(float(top), probe, step)


def update_best(record: BestRecord | None, row, step: int) -> BestRecord:
    """Fold step ``step``'s fitness row into a running best (``>=`` update)."""
    candidate = _step_best(np.asarray(row, dtype=float), step)
    if record is None or candidate.fitness >= record.fitness:
        return candidate
    return record


def best_so_far(state: RunState, through_step: int) -> BestRecord:
    """Full rescan for the best fitness through ``through_step``.

    Ties go to the latest step, then the highest probe index.
    """
    m = state.fitness[: through_step + 1]
    flat = m.ravel()
    top = flat.max()
    idx = flat.size - 1 - int(np.argmax(flat[::-1] == top))
    step, probe = divmod(idx, m.shape[1])
    return BestRecord(float(top), probe, step)


def has_saturated(fitness, j: int, config: KernelConfig = KernelConfig()) -> bool:
    """True when the windowed mean of per-step best fitness matches step ``j``'s best."""
    window = config.saturation_window
    if j < window + config.saturation_warmup_extra:
        return False
    per_step = np.asarray(fitness)[j - window + 1 : j + 1].max(axis=1).tolist()
    total = 0.0
    for b in per_step:
        total += b
    return abs(total / window - per_step[-1]) <= config.saturation_tol


def _make_evaluator(objective: Objective, dims: int, noise):
    if callable(objective):
        return lambda x: np.asarray(objective(x), dtype=float)
    spec = benchmarks.get_spec(objective)
    if spec.dims != dims:
        raise InvalidInputError(f"{spec.id} has {spec.dims} dimensions but the space has {dims}")
    return lambda x: benchmarks.evaluate_many(spec.id, x, noise)


def run_single(
    objective: Objective,
    space: DecisionSpace,
    probes_per_dim: int,
    gamma: float,
    policy: RepositionPolicy = RepositionPolicy(),
    config: KernelConfig = KernelConfig(),
    noise=None,
) -> RunResult:
    """Fly one probe swarm from the probe-line start until saturation or ``max_steps``.

    ``objective`` is a benchmark id or a callable mapping an ``(n, dims)``
    array to ``n`` fitness values. ``space`` is reset before returning.
    """
    n_d = space.dims
    n_p = probes_per_dim * n_d
    evaluate = _make_evaluator(objective, n_d, noise)
    state = RunState.allocate(config.max_steps, n_p, n_d)
    R, A, M = state.positions, state.accelerations, state.fitness
    lo, hi = space.lower, space.upper  # views; shrink updates them in place
    policy = policy.fresh()

    def fitness_at(j):
        values = evaluate(R[j])
        bad = np.flatnonzero(~np.isfinite(values))
        if bad.size:
            p = int(bad[0])
            raise RunAbortedError(f"non-finite fitness {values[p]!r} at probe {p}, step {j}", p, j)
        M[j] = values
        state.eval_count += n_p

    def check_contained(j):
        if config.check_containment and outside_mask(R[j], lo, hi).any():
            p = int(np.flatnonzero(outside_mask(R[j], lo, hi))[0])
            raise ContainmentError(f"probe {p} outside the decision space after retrieval at step {j}")

    reset_space(space)
    try:
        R[0] = init_probe_lines(space, probes_per_dim, gamma)
        fitness_at(0)
        best = update_best(None, M[0], 0)
        last_step = config.max_steps
        for j in range(1, config.max_steps + 1):
            state.current_step = j
            R[j] = R[j - 1] + A[j - 1]
            retrieve_errant(R, A, j, lo, hi, policy, config.distance_epsilon)
            check_contained(j)
            fitness_at(j)
            A[j] = compute_accelerations(R[j], M[j], config.alpha, config.beta)
            best = update_best(best, M[j], j)
            policy = advance_frep(policy)
            if j >= config.shrink_interval and j % config.shrink_interval == 0:
                shrink_space(space, R[best.step, best.probe], config.shrink_factor)
                retrieve_errant(R, A, j, lo, hi, policy, config.distance_epsilon)
                check_contained(j)
            if has_saturated(M, j, config):
                last_step = j
                break
    finally:
        reset_space(space)
    return RunResult(best, last_step, state.eval_count, state.trimmed())
