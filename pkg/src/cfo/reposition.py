"""Errant-probe retrieval: coordinate-wise, directional and mixed schedules.

A probe whose trajectory update carries it outside the decision space is
pulled back in. The coordinate-wise rule moves each violating coordinate a
fraction ``frep`` of the way from the boundary toward the probe's previous
coordinate. The directional rule keeps the probe on its acceleration line
and places it a fraction ``frep`` of the distance to the first boundary
plane crossed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import ConfigurationError, GeometryDegeneracyError


class Scheme(str, Enum):
    COORDINATE_ONLY = "none"
    DIRECTIONAL = "every"
    MIXED = "mixed"


@dataclass(frozen=True)
class RepositionPolicy:
    """Which retrieval rule is used at each step, plus the cycling ``frep``.

    ``interval`` only matters for the mixed scheme: the directional rule is
    used at steps where ``j % interval == 0`` and the coordinate rule
    otherwise. ``frep`` defaults to ``frep_init``.
    """

    scheme: Scheme = Scheme.COORDINATE_ONLY
    interval: int = 2
    frep_init: float = 0.5
    frep_delta: float = 0.1
    frep_min: float = 0.05
    frep: float | None = None
    eta_zero_compat: bool = False

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.interval < 1:
            raise ConfigurationError(f"reposition interval must be >= 1, got {self.interval}")
        if not 0 < self.frep_min <= 1:
            raise ConfigurationError(f"frep_min must lie in (0, 1], got {self.frep_min}")
        if not self.frep_min <= self.frep_init <= 1:
            raise ConfigurationError(f"frep_init must lie in [frep_min, 1], got {self.frep_init}")
        if self.frep_delta <= 0:
            raise ConfigurationError(f"frep_delta must be positive, got {self.frep_delta}")
        if self.frep is None:
            object.__setattr__(self, "frep", float(self.frep_init))

    @property
    def token(self) -> str:
        if self.scheme is Scheme.MIXED:
            return f"mixed:{self.interval}"
        return self.scheme.value

    def directional_at(self, j: int) -> bool:
        if self.scheme is Scheme.DIRECTIONAL:
            return True
        if self.scheme is Scheme.MIXED:
            return j % self.interval == 0
        return False

    def fresh(self) -> "RepositionPolicy":
        """Copy with ``frep`` restored to its initial value."""
        return replace(self, frep=self.frep_init)


def parse_policy(token: str, repos_interval: int = 2, **overrides) -> RepositionPolicy:
    """Build a policy from a CLI token: ``none``, ``every``, ``mixed`` or ``mixed:<k>``."""
    text = token.strip().lower()
    if text == "none":
        return RepositionPolicy(Scheme.COORDINATE_ONLY, repos_interval, **overrides)
    if text == "every":
        return RepositionPolicy(Scheme.DIRECTIONAL, repos_interval, **overrides)
    if text == "mixed":
        return RepositionPolicy(Scheme.MIXED, repos_interval, **overrides)
    if text.startswith("mixed:"):
        try:
            k = int(text.split(":", 1)[1])
        except ValueError:
            raise ConfigurationError(f"bad mixed interval in scheme {token!r}") from None
        return RepositionPolicy(Scheme.MIXED, k, **overrides)
    raise ConfigurationError(f"unknown reposition scheme {token!r}")


def advance_frep(policy: RepositionPolicy) -> RepositionPolicy:
    """Increment ``frep`` by ``frep_delta``, wrapping to ``frep_min`` past 1."""
    # rounding keeps the cycle on its decimal values instead of drifting by ulps
    frep = round(policy.frep + policy.frep_delta, 12)
    if frep > 1.0:
        frep = policy.frep_min
    return replace(policy, frep=frep)


@dataclass(frozen=True)
class BoundaryExit:
    eta_star: float
    d_max: float


def clamp_coordinatewise(prev, cur, lower, upper, frep):
    """Coordinate-wise retrieval of ``cur`` given the previous position ``prev``.

    Works on single points or stacked ``(n, dims)`` arrays. In-bounds
    coordinates are returned untouched.
    """
    prev = np.asarray(prev, dtype=float)
    cur = np.asarray(cur, dtype=float)
    out = np.where(cur < lower, np.maximum(lower + frep * (prev - lower), lower), cur)
    out = np.where(cur > upper, np.minimum(upper - frep * (upper - prev), upper), out)
    # prev may itself lie outside a freshly shrunk box
    return np.clip(out, lower, upper)


def _exit_many(lower, upper, starts, ends, eps, eta_zero_compat):
    """Row-wise exit parameters; returns ``(eta_star, d_max, ok)``."""
    delta = ends - starts
    moving = np.abs(delta) > eps
    safe = np.where(moving, delta, 1.0)
    etas = np.concatenate([(lower - starts) / safe, (upper - starts) / safe], axis=-1)
    live = np.concatenate([moving, moving], axis=-1)
    if eta_zero_compat:
        etas = np.where(live, etas, 0.0)
        valid = etas >= 0.0
    else:
        valid = live & (etas > 0.0)
    eta_star = np.min(np.where(valid, etas, np.inf), axis=-1)
    ok = np.any(valid, axis=-1)
    if not eta_zero_compat:
        # eta* > 1: start sits on a face and moves straight out of it
        ok &= eta_star <= 1.0
    with np.errstate(invalid="ignore"):
        d_max = eta_star * np.sqrt(np.sum(delta**2, axis=-1))
    return eta_star, d_max, ok


def line_box_exit(lower, upper, start, end, eps=1e-10, eta_zero_compat=False) -> BoundaryExit:
    """First crossing of the segment ``start -> end`` with a boundary plane.

    ``eta`` parametrizes ``start + eta * (end - start)``; the exit is the
    smallest strictly positive plane intersection. Axes along which the
    segment moves by at most ``eps`` yield no candidates. With
    ``eta_zero_compat`` such axes yield ``eta = 0`` and zero is accepted as
    an exit, which usually leaves the probe where it started.
    """
    start = np.asarray(start, dtype=float)[None, :]
    end = np.asarray(end, dtype=float)[None, :]
    eta_star, d_max, ok = _exit_many(lower, upper, start, end, eps, eta_zero_compat)
    if not ok[0]:
        raise GeometryDegeneracyError(
            f"segment has no boundary crossing in (0, 1] (nearest forward eta={eta_star[0]})"
        )
    return BoundaryExit(float(eta_star[0]), float(d_max[0]))


def reposition_directional_many(prev, cur, accel, lower, upper, frep, eps=1e-10, eta_zero_compat=False):
    """Row-wise :func:`reposition_directional` for ``(n, dims)`` arrays."""
    prev = np.asarray(prev, dtype=float)
    cur = np.asarray(cur, dtype=float)
    accel = np.asarray(accel, dtype=float)
    mag = np.sqrt(np.sum(accel**2, axis=-1))
    with np.errstate(divide="ignore", invalid="ignore"):
        _, d_max, ok = _exit_many(lower, upper, prev, cur, eps, eta_zero_compat)
        moved = prev + (frep * d_max)[:, None] * accel / mag[:, None]
    use = ok & (mag > eps)
    fallback = clamp_coordinatewise(prev, cur, lower, upper, frep)
    return np.where(use[:, None], np.clip(moved, lower, upper), fallback)


def reposition_directional(prev, cur, accel, lower, upper, frep, eps=1e-10, eta_zero_compat=False):
    """Move ``prev`` along ``accel`` by ``frep * d_max`` and return the new point.

    Falls back to :func:`clamp_coordinatewise` when the acceleration is
    (numerically) zero or the exit geometry degenerates.
    """
    rows = [np.asarray(v, dtype=float)[None, :] for v in (prev, cur, accel)]
    return reposition_directional_many(*rows, lower, upper, frep, eps, eta_zero_compat)[0]


def outside_mask(points, lower, upper):
    """Boolean per row: True where any coordinate lies outside ``[lower, upper]``."""
    return np.any((points < lower) | (points > upper), axis=-1)


def retrieve_errant(positions, accelerations, j, lower, upper, policy, eps=1e-10):
    """Retrieve every errant probe at step ``j`` in place.

    ``positions`` and ``accelerations`` are step-major histories of shape
    ``(steps, n_probes, dims)``. The directional branch may also rewrite
    step ``j - 1`` for probes that were outside at both steps, which only
    happens right after the space has been shrunk.
    """
    cur = positions[j]
    prev = positions[j - 1]
    frep = policy.frep
    if not policy.directional_at(j):
        if outside_mask(cur, lower, upper).any():
            positions[j] = clamp_coordinatewise(prev, cur, lower, upper, frep)
        return
    errant = outside_mask(cur, lower, upper)
    if not errant.any():
        return
    was_outside = outside_mask(prev, lower, upper)
    fly = np.flatnonzero(errant & ~was_outside)
    if fly.size:
        cur[fly] = reposition_directional_many(
            prev[fly], cur[fly], accelerations[j - 1, fly], lower, upper, frep, eps, policy.eta_zero_compat
        )
    for p in np.flatnonzero(errant & was_outside):
        if j >= 2:
            prev[p] = clamp_coordinatewise(positions[j - 2, p], prev[p], lower, upper, frep)
        else:
            prev[p] = np.clip(prev[p], lower, upper)
        cur[p] = clamp_coordinatewise(prev[p], cur[p], lower, upper, frep)
