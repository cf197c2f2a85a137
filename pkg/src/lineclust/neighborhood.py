"""Membership in scaled density neighbourhoods and the relation between lines.

The neighbourhood of a line l1 with density f1 and scale alpha1 is the set of
points whose distance to l1 is strictly below alpha1 * f1 at the closest
parameter.  The (asymmetric) relation "l1 relates to l2" holds when

    version 1:  min distance(l1, l2) < alpha1              (no densities)
    version 2:  some point of l2 lies in l1's neighbourhood, with alpha1
                derived from a target volume V
    version 3:  same witness test with alpha1 given directly

The witness test minimizes

    phi(s) = dist(g2(s), l1) - alpha1 * f1(t*(s))

over l2's parameter domain intersected with the effective window of l2's own
density (its declared support).  phi can be multimodal: the density may have
several influential bumps along t*(s) and dist has kinks where the projection
clamps at a segment end.  The search therefore scans a uniform grid and then
runs golden-section refinement around every local minimum; a relation is
reported only for an actually evaluated phi(s) < 0, so false positives are
impossible and misses are bounded by the grid resolution (configurable via
search_samples).
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import ConfigurationError
from .geometry import SegmentLike, closest_point, min_distance
from .profiles import (
    Profile,
    density,
    effective_window,
    exact_volume_scaling_factor,
    peak_density,
    scaling_factor,
)

PerLineAlpha = Union[float, Sequence[float], Mapping[int, float]]
PerLineProfile = Union[Profile, Sequence[Optional[Profile]], Mapping[int, Optional[Profile]]]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class NeighbourhoodSpec:
    """Version selector plus the parameters the chosen version needs.

    c is the cardinality threshold.  alpha and profile may be a single value
    applied to every line, or a per-line sequence/mapping keyed by the line's
    index in the dataset.  An explicit None profile entry declares a line
    density-free (version 3 then falls back to the metric relation for that
    line, and its whole extent acts as the witness set); an absent key is a
    configuration error.
    """

    version: int
    c: int
    alpha: PerLineAlpha | None = None
    volume: float | None = None
    profile: PerLineProfile | None = None
    alpha_mode: str = "literal"  # "literal" or "exact-volume" (version 2)
    search_samples: int = 64
    search_tol: float = 1e-9

    def __post_init__(self):
        if self.version not in (1, 2, 3):
            raise ConfigurationError(f"version must be 1, 2 or 3, got {self.version}")
        if self.c < 1:
            raise ConfigurationError(f"cardinality c must be >= 1, got {self.c}")
        if self.search_samples < 2:
            raise ConfigurationError("search_samples must be >= 2")
        if self.search_tol <= 0:
            raise ConfigurationError("search_tol must be positive")
        if self.alpha_mode not in ("literal", "exact-volume"):
            raise ConfigurationError(f"unknown alpha_mode {self.alpha_mode!r}")
        if self.version == 1:
            if self.alpha is None:
                raise ConfigurationError("version 1 requires alpha")
            if self.profile is not None:
                raise ConfigurationError("version 1 takes no profile")
            if self.volume is not None:
                raise ConfigurationError("version 1 takes no volume")
        elif self.version == 2:
            if self.volume is None or self.volume <= 0:
                raise ConfigurationError("version 2 requires a positive volume V")
            if self.profile is None:
                raise ConfigurationError("version 2 requires a profile")
            if self.alpha is not None:
                raise ConfigurationError("version 2 derives alpha from V; do not pass alpha")
        else:
            if self.alpha is None:
                raise ConfigurationError("version 3 requires alpha")
            if self.profile is None:
                raise ConfigurationError("version 3 requires a profile")
            if self.volume is not None:
                raise ConfigurationError("version 3 takes alpha directly, not a volume")

    def alpha_for(self, i: int | None) -> float:
        a = self.alpha
        if a is None:
            raise ConfigurationError("no alpha configured")
        if isinstance(a, Mapping):
            if i is None or i not in a:
                raise ConfigurationError(f"no alpha for line index {i}")
            value = a[i]
        elif isinstance(a, Sequence):
            if i is None or not 0 <= i < len(a):
                raise ConfigurationError(f"no alpha for line index {i}")
            value = a[i]
        else:
            value = a
        value = float(value)
        if value <= 0:
            raise ConfigurationError(f"alpha must be positive, got {value}")
        return value

    def profile_for(self, i: int | None) -> Profile | None:
        p = self.profile
        if p is None or isinstance(p, Profile):
            return p
        if isinstance(p, Mapping):
            if i is None or i not in p:
                raise ConfigurationError(f"no profile entry for line index {i}")
            return p[i]
        if i is None or not 0 <= i < len(p):
            raise ConfigurationError(f"no profile entry for line index {i}")
        return p[i]


# -- membership and version 1 ------------------------------------------------

def contains_point(l: SegmentLike, p: Profile, alpha: float, point) -> bool:
    """Is the point strictly inside the alpha-scaled density neighbourhood."""
    cp = closest_point(point, l)
    return cp.distance < alpha * density(p, cp.t_star)


def relates_v1(l1: SegmentLike, l2: SegmentLike, alpha1: float) -> bool:
    """Metric relation: minimum distance strictly below alpha1."""
    # centre-distance lower bound; skips the exact solve for far pairs
    gap = float(np.linalg.norm(l1.center - l2.center)) - l1.half_length - l2.half_length
    if not (l1.is_line or l2.is_line) and gap >= alpha1:
        return False
    return min_distance(l1, l2).distance < alpha1


# -- witness search for the probabilistic versions ----------------------------

def _reach_window(l1: SegmentLike, p1: Profile) -> tuple[float, float]:
    """Range of t*(s) values the projection onto l1 can produce, intersected
    with the density's effective window when l1 is an infinite line."""
    if l1.is_line:
        return effective_window(p1)
    return (0.0, 1.0)


def _line_candidate_window(l1: SegmentLike, l2: SegmentLike, threshold: float,
                           reach: tuple[float, float],
                           dmin) -> tuple[float, float] | None:
    """Finite s-interval that must contain any witness on an infinite l2.

    A witness needs dist(g2(s), l1) < threshold and, when l1 is a line, a
    projection parameter inside the density window.  For a segment l1 the
    triangle inequality gives dist >= |d2| * |s - s_min| - (d_min + L1), so
    candidates live in a ball around the closest approach.  For a line l1 the
    projection parameter is affine in s, which pins the preimage of the
    window; in the perpendicular case the squared distance is an explicit
    quadratic in s.
    """
    if not l1.is_line:
        speed = math.sqrt(l2.sq_length)
        radius = (threshold + dmin.distance + 2.0 * l1.half_length) / speed
        return (dmin.t2 - radius, dmin.t2 + radius)
    a = l1.sq_length
    d1, d2 = l1.direction, l2.direction
    beta = float(d2 @ d1) / a
    t0 = float((l2.x - l1.x) @ d1) / a
    if abs(beta) > 1e-12:
        s_a = (reach[0] - t0) / beta
        s_b = (reach[1] - t0) / beta
        return (min(s_a, s_b), max(s_a, s_b))
    # perpendicular directions: t*(s) is constant
    if not reach[0] <= t0 <= reach[1]:
        return None
    # dist^2(s) = |r + d2 s|^2 - t0^2 * a with r = l2.x - l1.x
    r = l2.x - l1.x
    qa = l2.sq_length
    qb = 2.0 * float(r @ d2)
    qc = float(r @ r) - t0 * t0 * a - threshold * threshold
    disc = qb * qb - 4.0 * qa * qc
    if disc <= 0.0:
        return None
    root = math.sqrt(disc)
    return ((-qb - root) / (2.0 * qa), (-qb + root) / (2.0 * qa))


def _golden_min(phi, lo: float, hi: float, tol: float) -> float:
    """Minimum value found by golden-section search on [lo, hi]."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = phi(x1), phi(x2)
    best = min(f1, f2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = phi(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = phi(x2)
        if f1 < best:
            best = f1
        if f2 < best:
            best = f2
        if best < 0.0:
            break
    return best


def relates_prob(l1: SegmentLike, profile1: Profile, alpha1: float,
                 l2: SegmentLike, profile2: Profile | None = None, *,
                 search_samples: int = 64, search_tol: float = 1e-9) -> bool:
    """Witness test: does any point of l2 (within its own declared support)
    fall strictly inside l1's alpha-scaled density neighbourhood."""
    if l1.dim != l2.dim:
        raise ValueError(f"dimension mismatch: {l1.dim}-d vs {l2.dim}-d")
    if alpha1 <= 0:
        raise ConfigurationError(f"alpha must be positive, got {alpha1}")
    reach = _reach_window(l1, profile1)
    if reach[1] < reach[0]:
        return False
    cap = peak_density(profile1, *reach)
    if cap <= 0.0:
        return False
    threshold = alpha1 * cap
    dmin = min_distance(l1, l2)
    if dmin.distance >= threshold:
        return False

    # witness domain on l2
    if l2.is_line:
        window = None
    else:
        window = (0.0, 1.0)
    if profile2 is not None:
        w2 = effective_window(profile2)
        if window is None:
            window = w2
        else:
            window = (max(window[0], w2[0]), min(window[1], w2[1]))
        if window[1] < window[0]:
            return False
    if window is None:
        window = _line_candidate_window(l1, l2, threshold, reach, dmin)
        if window is None:
            return False

    def phi(s: float) -> float:
        cp = closest_point(l2.x + l2.direction * s, l1)
        return cp.distance - alpha1 * density(profile1, cp.t_star)

    lo, hi = window
    if l2.is_degenerate or hi - lo <= search_tol:
        return phi(lo) < 0.0

    grid = np.linspace(lo, hi, search_samples)
    vals = np.empty(search_samples)
    for k, s in enumerate(grid):
        vals[k] = phi(float(s))
        if vals[k] < 0.0:
            return True

    # refine every local minimum of the sampled phi
    for k in range(search_samples):
        left = vals[k - 1] if k > 0 else math.inf
        right = vals[k + 1] if k < search_samples - 1 else math.inf
        if vals[k] <= left and vals[k] <= right:
            blo = grid[k - 1] if k > 0 else grid[k]
            bhi = grid[k + 1] if k < search_samples - 1 else grid[k]
            if bhi > blo:
                if _golden_min(phi, float(blo), float(bhi), search_tol) < 0.0:
                    return True
    return False


# -- dispatch and neighbour sets ----------------------------------------------

class RelationEvaluator:
    """Evaluates the relation over a fixed dataset, with memoized per-line
    derived quantities and a relation-evaluation counter.

    Version 2 scaling factors are derived once per source line and cached;
    the cache is write-once and idempotent, so concurrent evaluation of
    relation rows is safe.
    """

    def __init__(self, U: Sequence[SegmentLike], spec: NeighbourhoodSpec,
                 threads: int = 1):
        self.U = list(U)
        self.spec = spec
        self.threads = max(1, threads)
        self.eval_count = 0
        self._alpha_cache: dict[int, float] = {}
        self._pool = None

    def alpha_of(self, i: int) -> float:
        spec = self.spec
        if spec.version != 2:
            return spec.alpha_for(i)
        cached = self._alpha_cache.get(i)
        if cached is None:
            p = spec.profile_for(i)
            if p is None:
                raise ConfigurationError(
                    f"version 2 cannot derive alpha for line {i} without a profile")
            l = self.U[i]
            if spec.alpha_mode == "exact-volume":
                cached = exact_volume_scaling_factor(spec.volume, p, l, l.dim)
            else:
                cached = scaling_factor(spec.volume, p, l, l.dim)
            self._alpha_cache[i] = cached
        return cached

    def _relates_uncounted(self, i: int, j: int) -> bool:
        spec = self.spec
        l1, l2 = self.U[i], self.U[j]
        if spec.version == 1:
            return relates_v1(l1, l2, spec.alpha_for(i))
        p1 = spec.profile_for(i)
        alpha1 = self.alpha_of(i)
        if p1 is None:
            # declared density-free: Definition-style metric fallback
            return relates_v1(l1, l2, alpha1)
        return relates_prob(l1, p1, alpha1, l2, spec.profile_for(j),
                            search_samples=spec.search_samples,
                            search_tol=spec.search_tol)

    def relates(self, i: int, j: int) -> bool:
        self.eval_count += 1
        return self._relates_uncounted(i, j)

    def neighbor_set(self, i: int) -> set[int]:
        n = len(self.U)
        if self.threads == 1:
            result = {j for j in range(n) if self.relates(i, j)}
            return result
        if self._pool is None:
            from concurrent.futures import ThreadPoolExecutor
            self._pool = ThreadPoolExecutor(max_workers=self.threads)
        chunk = (n + self.threads - 1) // self.threads
        ranges = [range(k, min(k + chunk, n)) for k in range(0, n, chunk)]

        def scan(rng):
            hits = [j for j in rng if self._relates_uncounted(i, j)]
            return hits, len(rng)

        result = set()
        for hits, evals in self._pool.map(scan, ranges):
            result.update(hits)
            self.eval_count += evals
        return result

    def close(self):
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None


def relates(l1: SegmentLike, l2: SegmentLike, spec: NeighbourhoodSpec,
            i: int | None = None, j: int | None = None) -> bool:
    """Single-pair relation under a spec.  i and j are the line indices in
    the dataset; they are only needed when alpha/profile are per-line."""
    if spec.version == 1:
        return relates_v1(l1, l2, spec.alpha_for(i))
    p1 = spec.profile_for(i)
    if spec.version == 2:
        if p1 is None:
            raise ConfigurationError("version 2 requires a profile for the source line")
        if spec.alpha_mode == "exact-volume":
            alpha1 = exact_volume_scaling_factor(spec.volume, p1, l1, l1.dim)
        else:
            alpha1 = scaling_factor(spec.volume, p1, l1, l1.dim)
    else:
        alpha1 = spec.alpha_for(i)
    if p1 is None:
        return relates_v1(l1, l2, alpha1)
    return relates_prob(l1, p1, alpha1, l2, spec.profile_for(j),
                        search_samples=spec.search_samples,
                        search_tol=spec.search_tol)


def neighbor_set(l: SegmentLike, U: Sequence[SegmentLike],
                 spec: NeighbourhoodSpec) -> set[int]:
    """Indices of all dataset lines l relates to (itself included, since the
    relation is reflexive whenever l can reach its own density)."""
    for i, candidate in enumerate(U):
        if candidate is l:
            break
    else:
        raise ValueError("l must be an element of U")
    return RelationEvaluator(U, spec).neighbor_set(i)
