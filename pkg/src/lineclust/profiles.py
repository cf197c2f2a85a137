"""Density profiles over the line parameter t, and revolution volumes.

A profile is a continuous probability density in the parameter t of a
line's map g(t) = x + (y - x) * t.  Six families are supported:

    uniform(a, b)        1/(b-a) on [a, b]
    normal(mu, var)      Gaussian with mean mu and *variance* var
    ellipsoidal(a, b)    half-ellipse (2/(pi*a)) * sqrt(1 - (t/a)^2) on [-a, a]
    gamma(shape, rate)   rate^k t^(k-1) e^(-rate t) / Gamma(k) on [0, inf)
    beta(a1, a2)         t^(a1-1) (1-t)^(a2-1) / B(a1, a2) on [0, 1]
    exponential(rate)    rate * e^(-rate t) on [0, inf)

Gamma and beta shapes below 1 are rejected: they make the density unbounded
at a support endpoint, and every consumer here assumes a continuous bounded
density.  The ellipsoidal `b` parameter is validated but cancels under
normalization (the height is fixed at 2/(pi*a) so the density integrates
to 1); it is accepted for symmetry with the two-parameter families.

Revolution volumes: rotating a density f around its carrier segment sweeps,
in R^n, a region whose cross-section at parameter t is an (n-1)-ball of
radius f(t), so

    V = c_{n-1} * |y - x| * integral of f(t)^(n-1) dt

with c_m the unit m-ball volume.  Unbounded supports are truncated at the
1e-6 quantile window for both this integral and the neighbourhood search.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special

from .errors import ConfigurationError
from .geometry import SegmentLike

FAMILIES = ("uniform", "normal", "ellipsoidal", "gamma", "beta", "exponential")

#: quantile used to truncate unbounded supports (quadrature and search)
WINDOW_EPS = 1e-6


class Support(NamedTuple):
    lo: float
    hi: float

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)


@dataclass(frozen=True)
class Profile:
    """An immutable density profile: a family name plus its parameters."""

    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(f"unknown profile family {self.family!r}")
        object.__setattr__(self, "params", tuple(float(v) for v in self.params))
        p = self.params
        checks = {
            "uniform": (len(p) == 2 and p[0] < p[1], "uniform needs a < b"),
            "normal": (len(p) == 2 and p[1] > 0, "normal needs variance > 0"),
            "ellipsoidal": (len(p) == 2 and p[0] > 0 and p[1] > 0,
                            "ellipsoidal needs a > 0 and b > 0"),
            "gamma": (len(p) == 2 and p[0] >= 1 and p[1] > 0,
                      "gamma needs shape >= 1 (bounded density) and rate > 0"),
            "beta": (len(p) == 2 and p[0] >= 1 and p[1] >= 1,
                     "beta needs both shapes >= 1 (bounded density)"),
            "exponential": (len(p) == 1 and p[0] > 0, "exponential needs rate > 0"),
        }
        ok, msg = checks[self.family]
        if not ok:
            raise ConfigurationError(f"{msg}, got {p}")

    # -- constructors ------------------------------------------------------

    @classmethod
    def uniform(cls, a: float, b: float) -> "Profile":
        return cls("uniform", (a, b))

    @classmethod
    def normal(cls, mean: float, variance: float) -> "Profile":
        return cls("normal", (mean, variance))

    @classmethod
    def ellipsoidal(cls, a: float, b: float) -> "Profile":
        return cls("ellipsoidal", (a, b))

    @classmethod
    def gamma(cls, shape: float, rate: float) -> "Profile":
        return cls("gamma", (shape, rate))

    @classmethod
    def beta(cls, a1: float, a2: float) -> "Profile":
        return cls("beta", (a1, a2))

    @classmethod
    def exponential(cls, rate: float) -> "Profile":
        return cls("exponential", (rate,))

    # -- density -----------------------------------------------------------

    def pdf(self, t):
        """Density at parameter t (scalar or array), zero outside the support."""
        t = np.asarray(t, dtype=np.float64)
        fam, p = self.family, self.params
        if fam == "uniform":
            a, b = p
            return np.where((t >= a) & (t <= b), 1.0 / (b - a), 0.0)
        if fam == "normal":
            mu, var = p
            return np.exp(-0.5 * (t - mu) ** 2 / var) / math.sqrt(2.0 * math.pi * var)
        if fam == "ellipsoidal":
            a = p[0]
            u = np.clip(t / a, -1.0, 1.0)
            inside = np.abs(t) <= a
            return np.where(inside, (2.0 / (math.pi * a)) * np.sqrt(1.0 - u * u), 0.0)
        if fam == "gamma":
            k, lam = p
            # t^(k-1) with 0^0 = 1 covers the k = 1 endpoint
            base = np.power(np.maximum(t, 0.0), k - 1.0)
            val = (lam ** k / math.gamma(k)) * base * np.exp(-lam * np.maximum(t, 0.0))
            return np.where(t >= 0, val, 0.0)
        if fam == "beta":
            a1, a2 = p
            inside = (t >= 0) & (t <= 1)
            tc = np.clip(t, 0.0, 1.0)
            norm = math.exp(math.lgamma(a1 + a2) - math.lgamma(a1) - math.lgamma(a2))
            return np.where(inside, norm * np.power(tc, a1 - 1.0) * np.power(1.0 - tc, a2 - 1.0), 0.0)
        lam = p[0]  # exponential
        return np.where(t >= 0, lam * np.exp(-lam * np.maximum(t, 0.0)), 0.0)

    def support(self) -> Support:
        """Closure of {t : pdf(t) > 0}."""
        fam, p = self.family, self.params
        if fam == "uniform":
            return Support(p[0], p[1])
        if fam == "normal":
            return Support(-math.inf, math.inf)
        if fam == "ellipsoidal":
            return Support(-p[0], p[0])
        if fam == "beta":
            return Support(0.0, 1.0)
        return Support(0.0, math.inf)  # gamma, exponential

    def quantile(self, q: float) -> float:
        """Inverse CDF at q in (0, 1)."""
        if not 0.0 < q < 1.0:
            raise ValueError(f"quantile argument must lie in (0, 1), got {q}")
        fam, p = self.family, self.params
        if fam == "uniform":
            a, b = p
            return a + (b - a) * q
        if fam == "normal":
            mu, var = p
            return mu + math.sqrt(2.0 * var) * float(special.erfinv(2.0 * q - 1.0))
        if fam == "gamma":
            k, lam = p
            return float(special.gammaincinv(k, q)) / lam
        if fam == "beta":
            a1, a2 = p
            return float(special.betaincinv(a1, a2, q))
        if fam == "exponential":
            return -math.log1p(-q) / p[0]
        # ellipsoidal: invert the semicircle CDF by bisection
        a = p[0]
        lo, hi = -a, a
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            u = mid / a
            cdf = 0.5 + (u * math.sqrt(max(0.0, 1.0 - u * u)) + math.asin(u)) / math.pi
            if cdf < q:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    def mode(self) -> float:
        """Parameter of the density maximum (every family is unimodal)."""
        fam, p = self.family, self.params
        if fam == "uniform":
            return 0.5 * (p[0] + p[1])
        if fam == "normal":
            return p[0]
        if fam == "ellipsoidal":
            return 0.0
        if fam == "gamma":
            k, lam = p
            return (k - 1.0) / lam
        if fam == "beta":
            a1, a2 = p
            if a1 + a2 == 2.0:  # beta(1,1): constant density
                return 0.5
            return (a1 - 1.0) / (a1 + a2 - 2.0)
        return 0.0  # exponential


def density(p: Profile, t: float) -> float:
    """Scalar density value at t."""
    return float(p.pdf(t))


def effective_window(p: Profile, eps: float = WINDOW_EPS) -> tuple[float, float]:
    """Quantile window [Q(eps), Q(1-eps)] intersected with the support.

    Bounded supports are returned whole; the window only truncates tails.
    """
    if not 0.0 < eps < 0.5:
        raise ValueError(f"eps must lie in (0, 0.5), got {eps}")
    sup = p.support()
    if sup.bounded:
        return (sup.lo, sup.hi)
    lo = p.quantile(eps)
    hi = p.quantile(1.0 - eps)
    return (max(lo, sup.lo), min(hi, sup.hi))


def peak_density(p: Profile, lo: float | None = None, hi: float | None = None) -> float:
    """Supremum of the density on [lo, hi] (defaults: the effective window).

    Every family is unimodal, so the supremum on an interval is the density
    at the mode clamped into the interval; the endpoints are taken as a
    safety max.
    """
    if lo is None or hi is None:
        wlo, whi = effective_window(p)
        lo = wlo if lo is None else lo
        hi = whi if hi is None else hi
    if hi < lo:
        return 0.0
    m = min(max(p.mode(), lo), hi)
    return max(density(p, m), density(p, lo), density(p, hi))


# -- profile text form -----------------------------------------------------

def parse_profile(text: str) -> Profile:
    """Parse the textual form `family:p1,p2`, e.g. `uniform:-4,4`.

    Family names are case-insensitive; exponential takes a single parameter.
    """
    head, sep, tail = text.strip().partition(":")
    fam = head.strip().lower()
    if fam not in FAMILIES:
        raise ConfigurationError(f"unknown profile family in {text!r}")
    if not sep or not tail.strip():
        raise ConfigurationError(f"profile {text!r} is missing parameters")
    try:
        params = tuple(float(v) for v in tail.split(","))
    except ValueError as exc:
        raise ConfigurationError(f"bad profile parameters in {text!r}: {exc}") from None
    return Profile(fam, params)


def format_profile(p: Profile) -> str:
    return p.family + ":" + ",".join(f"{v:.17g}" for v in p.params)


# -- unit balls and adaptive quadrature -------------------------------------

def unit_ball_volume(m: int) -> float:
    """Volume of the unit ball in R^m: pi^(m/2) / Gamma(m/2 + 1)."""
    if m < 1:
        raise ValueError(f"dimension must be >= 1, got {m}")
    return math.pi ** (m / 2.0) / math.gamma(m / 2.0 + 1.0)


# Gauss-Kronrod 7-15 pair on [-1, 1]; the 7-point Gauss rule is embedded in
# the 15-point Kronrod extension, giving the error estimate for free.
_XGK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
])

_NODES = np.concatenate([-_XGK[:7], _XGK[7:8], _XGK[6::-1]])
_KRONROD_W = np.concatenate([_WGK[:7], _WGK[7:8], _WGK[6::-1]])
_GAUSS_W = np.zeros(15)
for _i, _w in zip((1, 3, 5), _WG[:3]):
    _GAUSS_W[_i] = _GAUSS_W[14 - _i] = _w
_GAUSS_W[7] = _WG[3]


def _gk15(fn, lo: float, hi: float) -> tuple[float, float]:
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    vals = np.asarray(fn(mid + half * _NODES), dtype=np.float64)
    kron = half * float(_KRONROD_W @ vals)
    gauss = half * float(_GAUSS_W @ vals)
    return kron, abs(kron - gauss)


def adaptive_quadrature(fn, lo: float, hi: float, rel_tol: float = 1e-8,
                        max_intervals: int = 1 << 16) -> float:
    """Globally adaptive Gauss-Kronrod integration of a vectorized fn.

    The worst interval (largest error estimate) is bisected until the summed
    error drops below rel_tol of the integral, or the interval cap is hit.
    Subdivision naturally concentrates at support endpoints where profile
    families lose smoothness.
    """
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("quadrature needs finite integration bounds")
    if hi <= lo:
        return 0.0
    val, err = _gk15(fn, lo, hi)
    total, total_err = val, err
    heap = [(-err, 0, lo, hi, val)]
    tick = 1
    count = 1
    while total_err > rel_tol * max(abs(total), 1e-300) and count < max_intervals:
        neg_err, _, a, b, old = heapq.heappop(heap)
        m = 0.5 * (a + b)
        v1, e1 = _gk15(fn, a, m)
        v2, e2 = _gk15(fn, m, b)
        total += (v1 + v2) - old
        total_err += (e1 + e2) - (-neg_err)
        heapq.heappush(heap, (-e1, tick, a, m, v1))
        heapq.heappush(heap, (-e2, tick + 1, m, b, v2))
        tick += 2
        count += 1
    return total


# -- revolution volumes and scaling factors ---------------------------------

def neighbourhood_volume(p: Profile, l: SegmentLike, n: int,
                         scale: float = 1.0) -> float:
    """Volume swept by rotating the scaled density around the carrier.

    V = c_{n-1} * |y - x| * integral of (scale * f(t))^(n-1) over the
    effective window.  With scale = 1 this is the base density-neighbourhood
    volume that the scaling factor normalizes against.
    """
    if n < 2:
        raise ValueError(f"ambient dimension must be >= 2, got {n}")
    if scale <= 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    if l.is_degenerate:
        raise ValueError("degenerate segment: zero-length axis of revolution")
    lo, hi = effective_window(p)
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise ValueError("profile window is not finite; volume does not exist")
    arc = math.sqrt(l.sq_length)  # parametrization speed |y - x|
    power = n - 1

    def integrand(t):
        return (scale * p.pdf(t)) ** power

    integral = adaptive_quadrature(integrand, lo, hi)
    vol = unit_ball_volume(n - 1) * arc * integral
    if not math.isfinite(vol) or vol <= 0.0:
        raise ValueError(f"neighbourhood volume is not finite/positive: {vol}")
    return vol


def scaling_factor(V: float, p: Profile, l: SegmentLike, n: int) -> float:
    """Ratio of the target volume to the base neighbourhood volume."""
    if V <= 0.0:
        raise ValueError(f"volume parameter must be positive, got {V}")
    return V / neighbourhood_volume(p, l, n, 1.0)


def exact_volume_scaling_factor(V: float, p: Profile, l: SegmentLike, n: int) -> float:
    """Scale that makes the *scaled* neighbourhood volume equal V exactly.

    The swept volume grows like scale^(n-1), so this is the (n-1)-th root of
    the plain ratio; for n = 2 the two coincide.
    """
    if V <= 0.0:
        raise ValueError(f"volume parameter must be positive, got {V}")
    return (V / neighbourhood_volume(p, l, n, 1.0)) ** (1.0 / (n - 1))
