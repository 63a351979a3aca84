"""The 23-function benchmark suite, negated so that CFO maximizes.

Functions F1-F13 are the 30-dimensional unimodal and many-local-optima
problems; F14-F23 are the low-dimensional problems with few local optima.
Definitions follow the classic 23-function suite used with the Group
Search Optimizer comparison.

Penalized functions use ``u(x, a, k, m)`` with ``(a, k, m) = (10, 100, 4)``
for F12 and ``(5, 100, 4)`` for F13; F12 maps ``y_i = 1 + (x_i + 1) / 4``.

F7 adds uniform ``[0, 1)`` noise to every evaluation. The noise is drawn
from an explicit :class:`NoiseSource` so that runs stay reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import InvalidInputError

# Shekel's foxholes centres, 2 x 25.
_FOXHOLES_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
FOXHOLES_A = np.vstack([np.tile(_FOXHOLES_GRID, 5), np.repeat(_FOXHOLES_GRID, 5)])

KOWALIK_A = np.array(
    [0.1957, 0.1947, 0.1735, 0.1600, 0.0844, 0.0627, 0.0456, 0.0342, 0.0323, 0.0235, 0.0246]
)
KOWALIK_B = 1.0 / np.array([0.25, 0.5, 1.0, 2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0, 16.0])

HARTMAN3_A = np.array(
    [[3.0, 10.0, 30.0], [0.1, 10.0, 35.0], [3.0, 10.0, 30.0], [0.1, 10.0, 35.0]]
)
HARTMAN3_P = np.array(
    [
        [0.3689, 0.1170, 0.2673],
        [0.4699, 0.4387, 0.7470],
        [0.1091, 0.8732, 0.5547],
        [0.0381, 0.5743, 0.8828],
    ]
)
HARTMAN6_A = np.array(
    [
        [10.0, 3.0, 17.0, 3.5, 1.7, 8.0],
        [0.05, 10.0, 17.0, 0.1, 8.0, 14.0],
        [3.0, 3.5, 1.7, 10.0, 17.0, 8.0],
        [17.0, 8.0, 0.05, 10.0, 0.1, 14.0],
    ]
)
HARTMAN6_P = np.array(
    [
        [0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886],
        [0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991],
        [0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650],
        [0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381],
    ]
)
HARTMAN_C = np.array([1.0, 1.2, 3.0, 3.2])

SHEKEL_A = np.array(
    [
        [4.0, 4.0, 4.0, 4.0],
        [1.0, 1.0, 1.0, 1.0],
        [8.0, 8.0, 8.0, 8.0],
        [6.0, 6.0, 6.0, 6.0],
        [3.0, 7.0, 3.0, 7.0],
        [2.0, 9.0, 2.0, 9.0],
        [5.0, 5.0, 3.0, 3.0],
        [8.0, 1.0, 8.0, 1.0],
        [6.0, 2.0, 6.0, 2.0],
        [7.0, 3.6, 7.0, 3.6],
    ]
)
SHEKEL_C = np.array([0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5])

# Kowalik's rational terms have poles inside the box; a pole evaluates to
# this finite penalty instead of +inf.
_POLE_PENALTY = 1e100


class NoiseSource:
    """Seeded uniform ``[0, 1)`` stream for the noisy quartic function."""

    def __init__(self, seed: int = 0, *, entropy: tuple[int, ...] = ()):
        self.seed = int(seed)
        self._rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([self.seed, *entropy])))

    @classmethod
    def for_cell(cls, seed: int, probes_per_dim: int, gamma_index: int) -> "NoiseSource":
        return cls(seed, entropy=(probes_per_dim, gamma_index))

    def uniform(self, n: int) -> np.ndarray:
        return self._rng.random(n)


# --- minimization forms, vectorized over the leading axis --------------------


def _sphere(x):
    return np.sum(x**2, axis=-1)


def _schwefel_2_22(x):
    a = np.abs(x)
    return np.sum(a, axis=-1) + np.prod(a, axis=-1)


def _schwefel_1_2(x):
    return np.sum(np.cumsum(x, axis=-1) ** 2, axis=-1)


def _schwefel_2_21(x):
    return np.max(np.abs(x), axis=-1)


def _rosenbrock(x):
    head, tail = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (tail - head**2) ** 2 + (head - 1.0) ** 2, axis=-1)


def _step(x):
    return np.sum(np.floor(x + 0.5) ** 2, axis=-1)


def _quartic(x):
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(i * x**4, axis=-1)


def _schwefel_2_26(x):
    return -np.sum(x * np.sin(np.sqrt(np.abs(x))), axis=-1)


def _rastrigin(x):
    return np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def _ackley(x):
    n = x.shape[-1]
    return (
        -20.0 * np.exp(-0.2 * np.sqrt(np.sum(x**2, axis=-1) / n))
        - np.exp(np.sum(np.cos(2.0 * np.pi * x), axis=-1) / n)
        + 20.0
        + np.e
    )


def _griewank(x):
    i = np.arange(1, x.shape[-1] + 1)
    return np.sum(x**2, axis=-1) / 4000.0 - np.prod(np.cos(x / np.sqrt(i)), axis=-1) + 1.0


def _penalty(x, a, k, m):
    return np.sum(
        np.where(x > a, k * (x - a) ** m, 0.0) + np.where(x < -a, k * (-x - a) ** m, 0.0),
        axis=-1,
    )


def _penalized_1(x):
    n = x.shape[-1]
    y = 1.0 + (x + 1.0) / 4.0
    core = (
        10.0 * np.sin(np.pi * y[..., 0]) ** 2
        + np.sum((y[..., :-1] - 1.0) ** 2 * (1.0 + 10.0 * np.sin(np.pi * y[..., 1:]) ** 2), axis=-1)
        + (y[..., -1] - 1.0) ** 2
    )
    return np.pi / n * core + _penalty(x, 10.0, 100.0, 4)


def _penalized_2(x):
    core = (
        np.sin(3.0 * np.pi * x[..., 0]) ** 2
        + np.sum((x[..., :-1] - 1.0) ** 2 * (1.0 + np.sin(3.0 * np.pi * x[..., 1:]) ** 2), axis=-1)
        + (x[..., -1] - 1.0) ** 2 * (1.0 + np.sin(2.0 * np.pi * x[..., -1]) ** 2)
    )
    return 0.1 * core + _penalty(x, 5.0, 100.0, 4)


def _foxholes(x):
    diff = x[..., :, None] - FOXHOLES_A  # (..., 2, 25)
    j = np.arange(1, 26)
    inner = np.sum(1.0 / (j + np.sum(diff**6, axis=-2)), axis=-1)
    return 1.0 / (1.0 / 500.0 + inner)


def _kowalik(x):
    x = x[..., :, None]  # (..., 4, 1) against 11 data points
    b = KOWALIK_B
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        ratio = x[..., 0, :] * (b**2 + b * x[..., 1, :]) / (b**2 + b * x[..., 2, :] + x[..., 3, :])
        value = np.sum((KOWALIK_A - ratio) ** 2, axis=-1)
    value = np.nan_to_num(value, nan=_POLE_PENALTY, posinf=_POLE_PENALTY)
    return np.minimum(value, _POLE_PENALTY)


def _six_hump_camel(x):
    x1, x2 = x[..., 0], x[..., 1]
    return 4.0 * x1**2 - 2.1 * x1**4 + x1**6 / 3.0 + x1 * x2 - 4.0 * x2**2 + 4.0 * x2**4


def _branin(x):
    x1, x2 = x[..., 0], x[..., 1]
    return (
        (x2 - 5.1 / (4.0 * np.pi**2) * x1**2 + 5.0 / np.pi * x1 - 6.0) ** 2
        + 10.0 * (1.0 - 1.0 / (8.0 * np.pi)) * np.cos(x1)
        + 10.0
    )


def _goldstein_price(x):
    x1, x2 = x[..., 0], x[..., 1]
    a = 1.0 + (x1 + x2 + 1.0) ** 2 * (
        19.0 - 14.0 * x1 + 3.0 * x1**2 - 14.0 * x2 + 6.0 * x1 * x2 + 3.0 * x2**2
    )
    b = 30.0 + (2.0 * x1 - 3.0 * x2) ** 2 * (
        18.0 - 32.0 * x1 + 12.0 * x1**2 + 48.0 * x2 - 36.0 * x1 * x2 + 27.0 * x2**2
    )
    return a * b


def _hartman(a, p):
    def f(x):
        inner = np.sum(a * (x[..., None, :] - p) ** 2, axis=-1)
        return -np.sum(HARTMAN_C * np.exp(-inner), axis=-1)

    return f


def _shekel(m):
    a, c = SHEKEL_A[:m], SHEKEL_C[:m]

    def f(x):
        d2 = np.sum((x[..., None, :] - a) ** 2, axis=-1)
        return -np.sum(1.0 / (d2 + c), axis=-1)

    return f


# --- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class BenchmarkSpec:
    """Identity of one benchmark problem.

    ``known_max`` is the tabulated maximum as conventionally reported for the
    suite (rounded for several problems). ``global_max`` is the precise
    maximum of the implemented formula, used where an exact upper bound is
    needed.
    """

    id: str
    name: str
    dims: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]
    known_max: float
    global_max: float
    noisy: bool
    group: str

    @property
    def token(self) -> str:
        return self.id.lower()

    @property
    def number(self) -> int:
        return int(self.id[1:])


def _box(dims, lo, hi):
    return (float(lo),) * dims, (float(hi),) * dims


def _build_registry():
    rows = [
        # id, name, dims, bounds, known_max, global_max, group, minimization form
        ("F1", "sphere", 30, _box(30, -100, 100), 0.0, 0.0, "unimodal", _sphere),
        ("F2", "schwefel_2_22", 30, _box(30, -10, 10), 0.0, 0.0, "unimodal", _schwefel_2_22),
        ("F3", "schwefel_1_2", 30, _box(30, -100, 100), 0.0, 0.0, "unimodal", _schwefel_1_2),
        ("F4", "schwefel_2_21", 30, _box(30, -100, 100), 0.0, 0.0, "unimodal", _schwefel_2_21),
        ("F5", "rosenbrock", 30, _box(30, -30, 30), 0.0, 0.0, "unimodal", _rosenbrock),
        ("F6", "step", 30, _box(30, -100, 100), 0.0, 0.0, "unimodal", _step),
        ("F7", "quartic_noise", 30, _box(30, -1.28, 1.28), 0.0, 0.0, "unimodal", _quartic),
        ("F8", "schwefel_2_26", 30, _box(30, -500, 500), 12569.5, 12569.486618173014,
         "multimodal-many", _schwefel_2_26),
        ("F9", "rastrigin", 30, _box(30, -5.12, 5.12), 0.0, 0.0, "multimodal-many", _rastrigin),
        ("F10", "ackley", 30, _box(30, -32, 32), 0.0, 0.0, "multimodal-many", _ackley),
        ("F11", "griewank", 30, _box(30, -600, 600), 0.0, 0.0, "multimodal-many", _griewank),
        ("F12", "penalized_1", 30, _box(30, -50, 50), 0.0, 0.0, "multimodal-many", _penalized_1),
        ("F13", "penalized_2", 30, _box(30, -50, 50), 0.0, 0.0, "multimodal-many", _penalized_2),
        ("F14", "shekel_foxholes", 2, _box(2, -65.536, 65.536), -1.0, -0.9980038377944496,
         "multimodal-few", _foxholes),
        ("F15", "kowalik", 4, _box(4, -5, 5), -3.075e-4, -3.0748598780560e-4,
         "multimodal-few", _kowalik),
        ("F16", "six_hump_camel", 2, _box(2, -5, 5), 1.0316285, 1.0316284534898774,
         "multimodal-few", _six_hump_camel),
        ("F17", "branin", 2, ((-5.0, 0.0), (10.0, 15.0)), -0.398, -0.39788735772973816,
         "multimodal-few", _branin),
        ("F18", "goldstein_price", 2, _box(2, -2, 2), -3.0, -3.0, "multimodal-few", _goldstein_price),
        ("F19", "hartman_3", 3, _box(3, 0, 1), 3.86, 3.8627797873327,
         "multimodal-few", _hartman(HARTMAN3_A, HARTMAN3_P)),
        ("F20", "hartman_6", 6, _box(6, 0, 1), 3.32, 3.3223680114155147,
         "multimodal-few", _hartman(HARTMAN6_A, HARTMAN6_P)),
        ("F21", "shekel_5", 4, _box(4, 0, 10), 10.0, 10.153199679058231, "multimodal-few", _shekel(5)),
        ("F22", "shekel_7", 4, _box(4, 0, 10), 10.0, 10.402940566818664, "multimodal-few", _shekel(7)),
        ("F23", "shekel_10", 4, _box(4, 0, 10), 10.0, 10.536409816692046, "multimodal-few", _shekel(10)),
    ]
    specs, forms = {}, {}
    for fid, name, dims, (lo, hi), known, glob, group, form in rows:
        specs[fid] = BenchmarkSpec(fid, name, dims, lo, hi, known, glob, fid == "F7", group)
        forms[fid] = form
    return specs, forms


_SPECS, _FORMS = _build_registry()


def list_functions() -> list[BenchmarkSpec]:
    """All benchmark specs in id order (F1 first, F23 last)."""
    return list(_SPECS.values())


def get_spec(fid: str) -> BenchmarkSpec:
    """Look up a spec by id, accepting ``"F8"`` as well as the CLI token ``"f8"``."""
    key = str(fid).strip().upper()
    try:
        return _SPECS[key]
    except KeyError:
        raise InvalidInputError(f"unknown benchmark function {fid!r}") from None


def minimization_form(fid: str) -> Callable[[np.ndarray], np.ndarray]:
    """The raw (non-negated, noise-free) objective for ``fid``."""
    return _FORMS[get_spec(fid).id]


def evaluate_many(fid: str, x, noise: NoiseSource | None = None) -> np.ndarray:
    """Fitness of every row of ``x`` (shape ``(n, dims)``), in row order.

    Noise for F7 is drawn once per row, in row order.
    """
    spec = get_spec(fid)
    x = np.asarray(x, dtype=float)
    if x.ndim != 2 or x.shape[1] != spec.dims:
        raise InvalidInputError(
            f"{spec.id} expects points of dimension {spec.dims}, got array of shape {x.shape}"
        )
    if not np.all(np.isfinite(x)):
        raise InvalidInputError(f"{spec.id}: non-finite coordinate in input")
    if spec.noisy and noise is None:
        raise InvalidInputError(f"{spec.id} is noisy and needs a NoiseSource")
    if not spec.noisy and noise is not None:
        raise InvalidInputError(f"{spec.id} is deterministic; no NoiseSource expected")
    value = _FORMS[spec.id](x)
    if spec.noisy:
        value = value + noise.uniform(x.shape[0])
    return -value


def evaluate(fid: str, x, noise: NoiseSource | None = None) -> float:
    """Fitness (negated benchmark value) at a single point ``x``."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise InvalidInputError(f"expected a 1-D point, got shape {x.shape}")
    return float(evaluate_many(fid, x[None, :], noise)[0])
