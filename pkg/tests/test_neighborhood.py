import math

import numpy as np
import pytest

from lineclust.errors import ConfigurationError
from lineclust.geometry import closest_point, line, min_distance, segment
from lineclust.neighborhood import (
    NeighbourhoodSpec,
    RelationEvaluator,
    contains_point,
    neighbor_set,
    relates,
    relates_prob,
    relates_v1,
)
from lineclust.profiles import Profile, density

UNIT = segment((0.0, 0.0), (1.0, 0.0))
U01 = Profile.uniform(0.0, 1.0)


class TestSpecValidation:
    def test_version_rows(self):
        NeighbourhoodSpec(version=1, c=2, alpha=1.0)
        NeighbourhoodSpec(version=2, c=2, volume=2.0, profile=U01)
        NeighbourhoodSpec(version=3, c=2, alpha=1.0, profile=U01)

    @pytest.mark.parametrize("kwargs", [
        dict(version=1, c=2),                                  # no alpha
        dict(version=1, c=2, alpha=1.0, profile=U01),          # profile forbidden
        dict(version=1, c=2, alpha=1.0, volume=1.0),           # volume forbidden
        dict(version=2, c=2, profile=U01),                     # no volume
        dict(version=2, c=2, volume=2.0),                      # no profile
        dict(version=2, c=2, volume=2.0, profile=U01, alpha=1.0),
        dict(version=3, c=2, profile=U01),                     # no alpha
        dict(version=3, c=2, alpha=1.0),                       # no profile
        dict(version=1, c=0, alpha=1.0),                       # c >= 1
        dict(version=4, c=2, alpha=1.0),
    ])
    def test_rejected(self, kwargs):
        with pytest.raises(ConfigurationError):
            NeighbourhoodSpec(**kwargs)

    def test_per_line_lookup(self):
        spec = NeighbourhoodSpec(version=1, c=1, alpha={0: 2.0, 1: 0.5})
        assert spec.alpha_for(0) == 2.0
        assert spec.alpha_for(1) == 0.5
        with pytest.raises(ConfigurationError):
            spec.alpha_for(2)
        with pytest.raises(ConfigurationError):
            spec.alpha_for(None)

    def test_sequence_profile_none_is_allowed_but_gap_is_not(self):
        spec = NeighbourhoodSpec(version=3, c=1, alpha=1.0, profile=[U01, None])
        assert spec.profile_for(0) == U01
        assert spec.profile_for(1) is None
        with pytest.raises(ConfigurationError):
            spec.profile_for(2)


class TestContainsPoint:
    def test_inside(self):
        assert contains_point(UNIT, U01, 1.0, (0.5, 0.5))

    def test_boundary_excluded(self):
        assert not contains_point(UNIT, U01, 1.0, (0.5, 1.0))

    def test_gaussian_tail(self):
        p = Profile.normal(0.5, 0.0025)
        # density at the clamped parameter 1.0 is ~1.5e-22, far below 0.5
        assert not contains_point(UNIT, p, 1.0, (0.999, 0.5))
        assert contains_point(UNIT, p, 1.0, (0.5, 0.5))


class TestRelatesV1:
    def test_threshold(self):
        l1 = segment((0, 0), (1, 0))
        l2 = segment((0, 2), (1, 2))
        assert not relates_v1(l1, l2, 1.0)
        assert not relates_v1(l1, l2, 2.0)  # strict
        assert relates_v1(l1, l2, 3.0)

    def test_reflexive(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            x = rng.uniform(-5, 5, 3)
            l = segment(x, x + rng.normal(size=3))
            assert relates_v1(l, l, rng.uniform(0.01, 10))

    def test_matches_plain_min_distance(self):
        # the centre-gap fast path must never change the answer
        rng = np.random.default_rng(2)
        for _ in range(500):
            dim = int(rng.integers(2, 5))
            l1 = segment(rng.uniform(-5, 5, dim), rng.uniform(-5, 5, dim))
            l2 = segment(rng.uniform(-5, 5, dim), rng.uniform(-5, 5, dim))
            alpha = rng.uniform(0.05, 6)
            assert relates_v1(l1, l2, alpha) == (min_distance(l1, l2).distance < alpha)


class TestRelatesProb:
    def test_self_relation(self):
        assert relates_prob(UNIT, U01, 1.0, UNIT, U01)

    def test_constant_tube_reject(self):
        l2 = segment((0, 1), (1, 1))
        assert not relates_prob(UNIT, U01, 0.5, l2, U01)
        assert relates_prob(UNIT, U01, 1.5, l2, U01)

    def test_gaussian_mode_reachable_endpoint(self):
        p = Profile.normal(0.5, 0.01)
        alpha = 2.0 / density(p, 0.5)  # alpha * f(0.5) = 2
        l2 = segment((0.5, 1.5), (0.5, 3.0))
        assert relates_prob(UNIT, p, alpha, l2)
        # dense-grid oracle on the same pair
        s = np.linspace(0, 1, 10001)
        pts = l2.x + s[:, None] * l2.direction
        phi = np.array([
            closest_point(q, UNIT).distance - alpha * density(p, closest_point(q, UNIT).t_star)
            for q in pts
        ])
        assert phi.min() < 0

    def test_degenerate_target_reduces_to_contains(self):
        rng = np.random.default_rng(9)
        for _ in range(50):
            p = Profile.normal(rng.uniform(0.2, 0.8), rng.uniform(0.01, 0.2))
            alpha = rng.uniform(0.2, 3)
            q = rng.uniform(-1, 2, 2)
            target = segment(q, q)
            assert relates_prob(UNIT, p, alpha, target) == contains_point(UNIT, p, alpha, q)

    def test_empty_witness_window(self):
        # l2's declared support lies entirely outside its parameter range
        away = Profile.uniform(2.0, 3.0)
        assert not relates_prob(UNIT, U01, 5.0, segment((0, 0.1), (1, 0.1)), away)

    def test_v1_equivalence_on_constant_tubes(self):
        # uniform profile of height h covering [0,1]: the witness test equals
        # the metric test at threshold alpha * h whenever the closest
        # approach projects to l1's interior
        rng = np.random.default_rng(33)
        checked = 0
        while checked < 500:
            a = rng.uniform(-1.0, 0.0)
            b = rng.uniform(1.0, 2.0)
            prof = Profile.uniform(a, b)
            h = 1.0 / (b - a)
            x = rng.uniform(-5, 5, 2)
            d = rng.normal(size=2)
            d /= np.linalg.norm(d)
            L1 = rng.uniform(1.0, 3.0)
            l1 = segment(x, x + L1 * d)
            t_star = rng.uniform(0.25, 0.75)
            u = np.array([-d[1], d[0]])
            delta = rng.uniform(0.05, 2.0)
            alpha = rng.uniform(0.05, 3.0)
            if abs(delta - alpha * h) < 1e-3:
                continue  # stay away from the strict boundary
            m = l1.x + t_star * L1 * d + delta * u
            L2 = rng.uniform(0.1, 0.2) * L1
            l2 = segment(m - 0.5 * L2 * d, m + 0.5 * L2 * d)
            assert relates_prob(l1, prof, alpha, l2, prof) == \
                relates_v1(l1, l2, alpha * h) == (delta < alpha * h)
            checked += 1

    def test_monotone_in_alpha(self):
        rng = np.random.default_rng(57)
        for _ in range(500):
            p = Profile.normal(rng.uniform(0.2, 0.8), rng.uniform(0.0025, 0.1))
            l1 = segment(rng.uniform(-3, 3, 2), rng.uniform(-3, 3, 2))
            l2 = segment(rng.uniform(-3, 3, 2), rng.uniform(-3, 3, 2))
            alpha = rng.uniform(0.1, 2)
            if relates_prob(l1, p, alpha, l2):
                assert relates_prob(l1, p, alpha * rng.uniform(1.0, 4.0), l2)

    def test_agrees_with_dense_scan(self):
        # production search vs a 1e-4-step scan; near-zero minima excluded
        rng = np.random.default_rng(71)
        families = ["uniform", "normal", "gamma", "beta", "exponential", "ellipsoidal"]
        checked = 0
        trials = 0
        while checked < 500 and trials < 3000:
            trials += 1
            fam = families[int(rng.integers(len(families)))]
            if fam == "uniform":
                a = rng.uniform(-0.5, 0.3)
                p1 = Profile.uniform(a, a + rng.uniform(0.4, 1.5))
            elif fam == "normal":
                p1 = Profile.normal(rng.uniform(0, 1), rng.uniform(0.0025, 0.09))
            elif fam == "gamma":
                p1 = Profile.gamma(rng.uniform(1, 4), rng.uniform(1, 12))
            elif fam == "beta":
                p1 = Profile.beta(rng.uniform(1, 8), rng.uniform(1, 8))
            elif fam == "exponential":
                p1 = Profile.exponential(rng.uniform(0.5, 12))
            else:
                p1 = Profile.ellipsoidal(rng.uniform(0.5, 1.5), 1.0)
            l1 = segment(rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2))
            l2 = segment(rng.uniform(-2, 2, 2), rng.uniform(-2, 2, 2))
            if l1.is_degenerate or l2.is_degenerate:
                continue
            alpha = rng.uniform(0.1, 2.5)
            s = np.linspace(0.0, 1.0, 10001)
            pts = l2.x + s[:, None] * l2.direction
            diff = pts - l1.x
            t = np.clip(diff @ l1.direction / l1.sq_length, 0.0, 1.0)
            feet = l1.x + t[:, None] * l1.direction
            dist = np.linalg.norm(pts - feet, axis=1)
            phi = dist - alpha * p1.pdf(t)
            if abs(phi.min()) < 1e-6:
                continue  # boundary case by construction
            assert relates_prob(l1, p1, alpha, l2) == (phi.min() < 0), (
                f"{p1} alpha={alpha} phi_min={phi.min()}")
            checked += 1
        assert checked == 500


class TestDispatch:
    def test_v2_uniform_cylinder_alpha_one(self):
        seg3 = segment((0, 0, 0), (1, 0, 0))
        spec2 = NeighbourhoodSpec(version=2, c=1, volume=math.pi, profile=U01)
        spec3 = NeighbourhoodSpec(version=3, c=1, alpha=1.0, profile=U01)
        other = segment((0.3, 0.5, 0), (0.7, 0.5, 0))
        far = segment((0.3, 1.5, 0), (0.7, 1.5, 0))
        assert relates(seg3, other, spec2) == relates(seg3, other, spec3) is True
        assert relates(seg3, far, spec2) == relates(seg3, far, spec3) is False

    def test_v1_regime(self):
        l1 = segment((0, 0), (4, 0))
        l2 = segment((0, 5), (4, 5))
        spec = NeighbourhoodSpec(version=1, c=1, alpha=12.0)
        assert relates(l1, l2, spec)

    def test_v3_none_profile_falls_back_to_metric(self):
        spec = NeighbourhoodSpec(version=3, c=1, alpha=1.5, profile=[None, U01])
        l1 = segment((0, 0), (1, 0))
        l2 = segment((0, 1), (1, 1))
        assert relates(l1, l2, spec, i=0, j=1) == relates_v1(l1, l2, 1.5)

    def test_v2_none_profile_is_an_error(self):
        spec = NeighbourhoodSpec(version=2, c=1, volume=1.0, profile=[None])
        with pytest.raises(ConfigurationError):
            relates(UNIT, UNIT, spec, i=0, j=0)

    def test_asymmetry_witness(self):
        l1 = segment((0, 0), (1, 0))
        l2 = segment((0, 2), (1, 2))
        spec = NeighbourhoodSpec(version=1, c=1, alpha={0: 3.0, 1: 0.5})
        assert relates(l1, l2, spec, i=0, j=1)
        assert not relates(l2, l1, spec, i=1, j=0)

    def test_reflexivity_across_versions(self):
        rng = np.random.default_rng(13)
        for _ in range(1000):
            dim = int(rng.integers(2, 5))
            x = rng.uniform(-5, 5, dim)
            l = segment(x, x + rng.normal(size=dim))
            version = int(rng.integers(1, 4))
            if version == 1:
                spec = NeighbourhoodSpec(version=1, c=1, alpha=float(rng.uniform(0.01, 5)))
            else:
                # density positive somewhere inside the parameter interior
                p = Profile.normal(rng.uniform(0.1, 0.9), rng.uniform(0.01, 0.5))
                if version == 2:
                    if l.is_degenerate:
                        continue  # no volume for a zero-length axis
                    spec = NeighbourhoodSpec(version=2, c=1,
                                             volume=float(rng.uniform(0.5, 4)), profile=p)
                else:
                    spec = NeighbourhoodSpec(version=3, c=1,
                                             alpha=float(rng.uniform(0.01, 5)), profile=p)
            assert relates(l, l, spec, i=0, j=0)


class TestNeighborSet:
    def test_singleton(self):
        spec = NeighbourhoodSpec(version=1, c=1, alpha=1.0)
        assert neighbor_set(UNIT, [UNIT], spec) == {0}

    def test_collinear_triple(self):
        U = [segment((0, 0), (1, 0)), segment((1.5, 0), (2.5, 0)), segment((3, 0), (4, 0))]
        spec = NeighbourhoodSpec(version=1, c=1, alpha=1.0)
        assert neighbor_set(U[0], U, spec) == {0, 1}
        assert neighbor_set(U[1], U, spec) == {0, 1, 2}
        assert neighbor_set(U[2], U, spec) == {1, 2}

    def test_requires_membership(self):
        spec = NeighbourhoodSpec(version=1, c=1, alpha=1.0)
        with pytest.raises(ValueError):
            neighbor_set(segment((9, 9), (9.5, 9)), [UNIT], spec)

    def test_evaluator_counts(self):
        U = [segment((0, 0), (1, 0)), segment((5, 0), (6, 0))]
        ev = RelationEvaluator(U, NeighbourhoodSpec(version=1, c=1, alpha=1.0))
        ev.neighbor_set(0)
        ev.neighbor_set(1)
        assert ev.eval_count == 4

    def test_threaded_rows_match_serial(self):
        rng = np.random.default_rng(77)
        U = [segment(rng.uniform(0, 20, 2), rng.uniform(0, 20, 2)) for _ in range(40)]
        spec = NeighbourhoodSpec(version=1, c=2, alpha=4.0)
        serial = RelationEvaluator(U, spec)
        threaded = RelationEvaluator(U, spec, threads=4)
        for i in range(len(U)):
            assert serial.neighbor_set(i) == threaded.neighbor_set(i)
        assert serial.eval_count == threaded.eval_count
        threaded.close()

    def test_v2_alpha_memoized(self):
        U = [segment((0, 0, 0), (1, 0, 0)), segment((0, 0.5, 0), (1, 0.5, 0))]
        spec = NeighbourhoodSpec(version=2, c=1, volume=math.pi, profile=U01)
        ev = RelationEvaluator(U, spec)
        ev.neighbor_set(0)
        first = dict(ev._alpha_cache)
        ev.neighbor_set(0)
        assert ev._alpha_cache == first
        assert ev.alpha_of(0) == pytest.approx(1.0, rel=1e-9)


class TestInfiniteLineTargets:
    def test_line_source_with_profile(self):
        # density along an infinite line; window makes the search finite
        src = line((0.0, 0.0), (1.0, 0.0))
        p = Profile.normal(0.0, 1.0)
        near = segment((0.0, 0.2), (0.5, 0.2))
        far = segment((0.0, 5.0), (0.5, 5.0))
        alpha = 1.0
        assert relates_prob(src, p, alpha, near)
        assert not relates_prob(src, p, alpha, far)

    def test_line_target_without_profile(self):
        # witness may sit anywhere on the infinite target
        src = segment((0.0, 0.0), (1.0, 0.0))
        target = line((40.0, 0.5), (41.0, 0.5))  # passes right above src
        assert relates_prob(src, U01, 1.0, target)
        target_far = line((40.0, 5.0), (41.0, 5.0))
        assert not relates_prob(src, U01, 1.0, target_far)

    def test_perpendicular_line_target(self):
        src = line((0.0, 0.0), (1.0, 0.0))
        p = Profile.normal(0.0, 0.04)
        vertical_hit = line((0.0, -3.0), (0.0, 4.0))   # crosses the mode
        vertical_miss = line((9.0, -3.0), (9.0, 4.0))  # crosses far in the tail
        assert relates_prob(src, p, 1.0, vertical_hit)
        assert not relates_prob(src, p, 1.0, vertical_miss)
