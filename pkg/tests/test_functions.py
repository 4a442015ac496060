import cmath
import math
from fractions import Fraction

import pytest

from wickstar.errors import DomainError, SeriesOrderError
from wickstar.exact import QC
from wickstar.functions import (BasisFpq, BiPoly, ExpFn, Jet, PolyFn,
                                SeriesFn, entire_from_json, entire_to_json,
                                moebius_jet)
from wickstar.sphere import MoebiusMap


# jets -----------------------------------------------------------------------


def test_jet_of_polynomial_reproduces_taylor_coefficients():
    p = PolyFn([1, -2, 0, 3])  # 1 - 2t + 3t^3
    x0 = 0.4 - 0.2j
    jet = p.eval_jet(Jet.variable(x0, 4))
    for n in range(5):
        expected = p.derivative(n).eval(x0)[0] / math.factorial(n)
        assert jet.coeffs[n] == pytest.approx(expected)


def test_jet_reciprocal_and_division():
    j = PolyFn([2, 1, -1]).eval_jet(Jet.variable(0.3, 5))
    one = j * j.reciprocal()
    assert one.coeffs[0] == pytest.approx(1)
    for c in one.coeffs[1:]:
        assert c == pytest.approx(0)
    with pytest.raises(ZeroDivisionError):
        Jet([0, 1, 1]).reciprocal()


def test_jet_exp_matches_derivatives():
    x0 = 0.2 + 0.1j
    jet = (Jet.variable(x0, 4) * (2 - 1j)).exp()
    for n in range(5):
        expected = (2 - 1j) ** n * cmath.exp((2 - 1j) * x0) / math.factorial(n)
        assert jet.coeffs[n] == pytest.approx(expected)


def test_jet_order_mismatch_is_an_error():
    with pytest.raises(ValueError):
        Jet([1, 2]) + Jet([1, 2, 3])


def test_jet_arithmetic_stays_exact_on_exact_scalars():
    j = Jet.variable(QC(Fraction(1, 3)), 3)
    out = (j * j + 1) / QC(2)
    assert out.coeffs[0] == QC(Fraction(10, 18))
    assert all(isinstance(c, QC) for c in out.coeffs)


def test_moebius_jet_matches_pointwise_action():
    m = MoebiusMap.disk_automorphism(0.2 - 0.3j, 0.5)
    x0 = 0.1 + 0.2j
    jet = moebius_jet(m, Jet.variable(x0, 3))
    assert jet.coeffs[0] == pytest.approx(m.apply(x0))
    eps = 1e-6
    fd = (m.apply(x0 + eps) - m.apply(x0 - eps)) / (2 * eps)
    assert jet.coeffs[1] == pytest.approx(fd, rel=1e-5)


# entire functions ------------------------------------------------------------


def test_polyfn_calculus():
    p = PolyFn([0, 0, 0, 1])  # t^3
    assert p.degree == 3
    assert p.derivative(2) == PolyFn([0, 6])
    assert p.derivative(5).is_zero
    assert p.eval(2)[0] == 8
    assert (p + PolyFn([1]) * 2).eval(1)[0] == 3
    assert (PolyFn([0, 1]) * PolyFn([0, 1])).coeffs == [0, 0, 1]


def test_polyfn_exact_coefficients_stay_exact():
    p = PolyFn([Fraction(1, 3), Fraction(1, 2)])
    assert p.derivative().coeffs == [Fraction(1, 2)]
    assert p.eval(Fraction(2))[0] == Fraction(4, 3)


def test_expfn_closed_form_derivatives():
    g = ExpFn(2 - 1j)
    v, err = g.derivative(3).eval(0.1)
    assert err == 0.0
    assert v == pytest.approx((2 - 1j) ** 3 * cmath.exp((2 - 1j) * 0.1))


def test_series_tail_certificate():
    # exp(t) truncated at order 6 with the true tail bound |a_k| <= 1/2^k... use
    # C = 1, rho = 2: |1/k!| <= 1/2^k fails for small k but holds past order 6
    g = SeriesFn([1 / math.factorial(k) for k in range(7)], rho=2.0, C=1.0)
    v, bound = g.eval(0.5)
    assert abs(v - math.exp(0.5)) <= bound
    with pytest.raises(DomainError):
        g.eval(2.5)
    with pytest.raises(SeriesOrderError):
        g.derivative(8)
    d = g.derivative(1)
    assert d.rho == 1.0 and d.C == 0.5


def test_entire_json_roundtrip():
    for g in (PolyFn([1 + 0j, 2 - 1j]), ExpFn(0.5 + 0.25j),
              SeriesFn([1, 0.5], rho=3.0, C=2.0)):
        back = entire_from_json(entire_to_json(g))
        assert type(back) is type(g)
        assert back.eval(0.2)[0] == pytest.approx(g.eval(0.2)[0])
    with pytest.raises(DomainError):
        entire_from_json({"type": "mystery"})


# bivariate polynomials --------------------------------------------------------


def test_bipoly_ring_operations():
    z, w = BiPoly.z(), BiPoly.w()
    f = (1 - z * w).pow(2)
    assert f.coeffs[(2, 2)] == 1 and f.coeffs[(1, 1)] == -2
    assert (f - f).is_zero
    assert (z * 0).is_zero
    assert f.zdeg == 2 and f.wdeg == 2


def test_bipoly_wirtinger_derivatives():
    f = BiPoly({(2, 1): 3})
    assert f.wirtinger("z") == BiPoly({(1, 1): 6})
    assert f.wirtinger("w") == BiPoly({(2, 0): 3})
    assert f.wirtinger("z").wirtinger("w") == f.wirtinger("w").wirtinger("z")


def test_bipoly_diagonal_evaluation_and_conjugation():
    f = BiPoly({(1, 0): 1, (0, 1): 1j})  # z + i conj(z)
    zv = 0.3 + 0.4j
    assert f.eval_diag(zv) == pytest.approx(zv + 1j * zv.conjugate())
    g = f.swap_conj()
    assert g.eval_diag(zv) == pytest.approx((zv + 1j * zv.conjugate()).conjugate())
    assert f.swap_conj().swap_conj() == f


def test_bipoly_real_symmetry_detection():
    assert BiPoly({(1, 1): 2, (0, 0): 1}).is_real_symmetric()
    assert BiPoly({(1, 0): 1j, (0, 1): -1j}).is_real_symmetric()
    assert not BiPoly({(1, 0): 1}).is_real_symmetric()


def test_bipoly_jet_evaluation_freezes_second_slot():
    f = BiPoly({(2, 1): 1, (0, 2): -1})
    w0 = 0.2 - 0.1j
    jet = f.eval_jet(Jet.variable(0.3, 2), w0)
    assert jet.coeffs[0] == pytest.approx(f.eval(0.3, w0))
    assert jet.coeffs[1] == pytest.approx(2 * 0.3 * w0)  # d/dz of z^2 w0
    assert jet.coeffs[2] == pytest.approx(w0)


def test_basis_family_values_and_pole():
    b = BasisFpq(2, 1)
    assert b.eval(0.5, 0.5) == pytest.approx(0.5 ** 3 / 0.75 ** 2)
    with pytest.raises(DomainError):
        b.eval(2, 0.5)
    with pytest.raises(ValueError):
        BasisFpq(-1, 0)
