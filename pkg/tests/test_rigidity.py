import pytest

from wickstar.errors import DomainError
from wickstar.functions import BasisFpq, PolyFn
from wickstar.rigidity import (InvarianceExperiment, elliptic_invariant_indices,
                               fpq_on_g, fpq_proj, hyperbolic_fixed_point_demo,
                               invariant_dimension, obstruction_check)
from wickstar.sampling import rng_for, sample_gpoints, sample_omega_points
from wickstar.sphere import MoebiusMap, SpherePoint
from wickstar.surfaces import scaling_kernel

OBSTRUCTION_GRID = [0.05, -0.05, 0.08j, -0.08j]


def test_projective_basis_matches_affine_values():
    z, w = SpherePoint.finite(0.3 + 0.1j), SpherePoint.finite(-0.2 + 0.4j)
    for p in range(3):
        for q in range(3):
            assert fpq_proj(p, q, z, w) == pytest.approx(
                BasisFpq(p, q).eval(z.value(), w.value()))


def test_projective_basis_extends_to_infinity():
    # f_{0,1}(z, w) = w/(1-zw) tends to 0 as z -> inf; the projective
    # formula reaches that point without a limit
    val = fpq_proj(0, 1, SpherePoint.infinity(), SpherePoint.finite(0.5))
    assert val == pytest.approx(0.0)
    # f_{1,0}(inf, w) = z/(1-zw) -> -1/w
    val = fpq_proj(1, 0, SpherePoint.infinity(), SpherePoint.finite(0.5))
    assert val == pytest.approx(-2.0)
    with pytest.raises(DomainError):
        fpq_proj(1, 1, SpherePoint.finite(2.0), SpherePoint.finite(0.5))


def test_transported_basis_is_invariant_exactly_when_expected():
    # the configuration-space transport of the constant is invariant
    # under everything; the coordinate-like elements are not
    f00 = fpq_on_g(0, 0)
    f11 = fpq_on_g(1, 1)
    gamma = MoebiusMap.scaling(2.0)
    from wickstar.sphere import gamma_hat
    for pt in sample_gpoints(rng_for(5), 10):
        moved = gamma_hat(gamma, pt)
        assert f00(moved) == pytest.approx(f00(pt))
    diffs = [abs(f11(gamma_hat(gamma, pt)) - f11(pt))
             for pt in sample_gpoints(rng_for(6), 10)]
    assert max(diffs) > 1e-3


def test_invariant_dimension_needs_enough_samples():
    basis = [fpq_on_g(p, q) for p in range(2) for q in range(2)]
    with pytest.raises(DomainError):
        InvarianceExperiment([MoebiusMap.scaling(2.0)], basis,
                             sample_gpoints(rng_for(1), 5))


def test_invariant_dimension_small_case():
    generators = [MoebiusMap.scaling(2.0)]
    shift = MoebiusMap.translation(1.0)
    generators.append(shift.compose(generators[0]).compose(shift.inverse()))
    basis = [fpq_on_g(p, q) for p in range(2) for q in range(2)]
    samples = [pt for pt in sample_gpoints(rng_for(11), 60, spread=1.5,
                                           min_sep=0.4)
               if all(abs(f(pt)) < 50 for f in basis)]
    exp = InvarianceExperiment(generators, basis, samples[:20])
    dim, svals = invariant_dimension(exp)
    assert dim == 1
    assert svals[-1] <= 1e-8 * max(1.0, svals[0])


def test_elliptic_congruence_filter():
    pts = sample_omega_points(rng_for(3), 30)
    kept = elliptic_invariant_indices(2, 2, pts)
    assert set(kept) == {(p, q) for p in range(3) for q in range(3)
                         if (p - q) % 2 == 0}
    kept3 = elliptic_invariant_indices(3, 2, pts, tol=1e-8)
    assert set(kept3) == {(p, q) for p in range(3) for q in range(3)
                          if (p - q) % 3 == 0}


def test_hyperbolic_fixed_point_derivatives_vanish():
    gamma = MoebiusMap.scaling(2.0)
    f = scaling_kernel(PolyFn([0, 1, 0.5]))
    samples = sample_gpoints(rng_for(9), 25)
    mags = hyperbolic_fixed_point_demo(gamma, f, order=3, samples=samples)
    assert len(mags) == 4
    for m in mags[1:]:
        assert m < 1e-6


def test_hyperbolic_demo_refuses_bad_inputs():
    samples = sample_gpoints(rng_for(9), 10)
    with pytest.raises(DomainError):
        hyperbolic_fixed_point_demo(MoebiusMap.translation(1.0),
                                    scaling_kernel(PolyFn([0, 1])), 2, samples)
    with pytest.raises(DomainError):
        hyperbolic_fixed_point_demo(MoebiusMap.rotation(0.5),
                                    scaling_kernel(PolyFn([0, 1])), 2, samples)
    with pytest.raises(DomainError):
        hyperbolic_fixed_point_demo(MoebiusMap.scaling(2.0),
                                    lambda p: p.z.value(), 2, samples)


def test_obstruction_verdicts():
    rep = obstruction_check(2.0, OBSTRUCTION_GRID, degree=3)
    assert rep.verdict == "obstructed"
    assert rep.alpha == 0j and rep.beta in (1 + 0j, -1 + 0j)
    assert rep.residuals["h2_margin"] > 1e-3
    assert rep.residuals["h1_defect_nonconstant"] > 1e-3
    assert rep.residuals["h_constant_solution"] < 1e-10

    const = obstruction_check(2.0, OBSTRUCTION_GRID, degree=0)
    assert const.verdict == "constant-only"

    with pytest.raises(DomainError):
        obstruction_check(0.9, OBSTRUCTION_GRID, degree=2)
    with pytest.raises(DomainError):
        obstruction_check(2.0, [0.05, 0.05, 0.05, 0.05], degree=2)
