import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudoiso import revolution as rv
from pseudoiso.core import PiMotion
from pseudoiso.errors import EmptyDomain, InvalidParams
from pseudoiso.surface import curvatures, fundamental_forms
from pseudoiso.verification import five_point_derivative, ode_deviation


def test_profile_needs_positive_range():
    with pytest.raises(EmptyDomain):
        rv.Profile.from_expr("u", (0.0, 1.0))
    with pytest.raises(EmptyDomain):
        rv.Profile.from_expr("u", (2.0, 1.0))


def test_make_revolution_points():
    sp = rv.make_revolution(rv.Profile.from_expr("u", (1.0, 2.0)))
    assert tuple(sp.point(1.5, 0.2)) == pytest.approx((1.5 * math.cosh(0.2), 1.5 * math.sinh(0.2), 1.5))
    tl = rv.make_revolution(rv.Profile.from_expr("u", (1.0, 2.0), rv.ProfileKind.TIMELIKE))
    assert tuple(tl.point(1.5, 0.2)) == pytest.approx((1.5 * math.sinh(0.2), 1.5 * math.cosh(0.2), 1.5))


def test_rotation_shifts_v():
    srf = rv.make_revolution(rv.Profile.from_expr("ln(u) + u^2", (1.0, 2.0)))
    m = PiMotion(0.4)
    assert tuple(m(srf.point(1.3, 0.1))) == pytest.approx(tuple(srf.point(1.3, 0.5)), rel=1e-14)


@pytest.mark.parametrize("kind", list(rv.ProfileKind))
def test_timelike_kind_metric(kind):
    ff = fundamental_forms(rv.make_revolution(rv.Profile.from_expr("u^2", (1.0, 2.0), kind)), (1.2, 0.3))
    assert ff.det_g == pytest.approx(-1.44)


def test_rev_gauss_examples():
    assert rv.rev_gauss(rv.Profile.from_expr("u", (1.0, 2.0)), 1.3) == 0.0
    K0 = 2.0
    prof = rv.Profile.from_expr(f"sqrt({K0})*u^2/2", (1.0, 2.0))
    assert rv.rev_gauss(prof, 1.7) == pytest.approx(K0)
    assert rv.rev_gauss(rv.Profile.from_expr("ln(u) + u^2", (1.0, 2.0)), 1.0) == pytest.approx(3.0)


def test_rev_mean_examples():
    assert rv.rev_mean(rv.Profile.from_expr("ln(u) + u^2", (1.0, 2.0)), 1.6) == pytest.approx(2.0)
    assert rv.rev_mean(rv.Profile.from_expr("-3*u^2/2 + 0.5*ln(u)", (1.0, 2.0)), 1.6) == pytest.approx(-3.0)
    assert rv.rev_mean(rv.Profile.from_expr("4*ln(u) - 1", (1.0, 2.0)), 1.6) == pytest.approx(0.0, abs=1e-15)


@given(st.floats(-2, 2), st.floats(-2, 2), st.floats(-2, 2), st.floats(1.0, 2.0))
def test_euler_gap_is_a_square(a, b, c, u):
    prof = rv.Profile.from_expr(f"{a!r}*u^3 + {b!r}*u^2 + {c!r}*ln(u)", (1.0, 2.0))
    gap = rv.euler_gap(prof, u)
    assert gap >= -1e-12
    j = prof.jet(u)
    assert gap == pytest.approx(0.25 * (j.d1 / u - j.d2) ** 2, rel=1e-9, abs=1e-12)


@given(st.floats(1.0, 2.0), st.floats(-1, 1))
def test_reduction_matches_general_formulas(u, v):
    prof = rv.Profile.from_expr("sin(u) + u^3/3", (1.0, 2.0), rv.ProfileKind.TIMELIKE)
    K, H = curvatures(rv.make_revolution(prof), (u, v))
    assert K == pytest.approx(rv.rev_gauss(prof, u), rel=1e-10, abs=1e-12)
    assert H == pytest.approx(rv.rev_mean(prof, u), rel=1e-10, abs=1e-12)


def test_solve_profile_examples():
    p = rv.solve_profile(rv.ConstantK(1.0), (1.0, 2.0))
    assert p.jet(1.5).value == pytest.approx(1.125)
    assert rv.rev_gauss(p, 1.5) == pytest.approx(1.0)
    p = rv.solve_profile(rv.ConstantH(2.0, 1.0, 0.0), (1.0, 2.0))
    assert p.jet(1.5).value == pytest.approx(1.5 ** 2 + math.log(1.5))
    rep = rv.verify_family(rv.ParabolicSphere(2.0, 0.0), grid=(10, 10))
    assert rep.K_stats["min"] == pytest.approx(4.0) and rep.H_stats["max"] == pytest.approx(2.0)


def test_parabolic_sphere_is_the_quadric():
    srf = rv.make_revolution(rv.solve_profile(rv.ParabolicSphere(2.0, 0.5), (1.0, 2.0)))
    x, y, z = srf.point(1.4, -0.6)
    assert z == pytest.approx(x * x - y * y + 0.5)


def test_solve_profile_errors():
    with pytest.raises(InvalidParams):
        rv.solve_profile(rv.ConstantK(0.0), (1.0, 2.0))
    with pytest.raises(InvalidParams):
        rv.solve_profile(rv.ConstantK(-1.0, -1.0), (1.0, 2.0))
    with pytest.raises(InvalidParams):
        rv.solve_profile(rv.ConstantK(1.0, sign=0), (1.0, 2.0))
    with pytest.raises(EmptyDomain):
        rv.solve_profile(rv.ConstantK(1.0, -4.0), (1.0, 2.0))
    with pytest.raises(EmptyDomain):
        rv.solve_profile(rv.ConstantK(-1.0, 4.0), (1.0, 2.5))


@pytest.mark.parametrize(
    "K0, c1, rng_u", [(1.0, 0.0, (1.0, 2.0)), (1.0, 1.0, (1.0, 2.0)), (2.0, -1.0, (1.0, 2.0)), (-1.0, 4.0, (0.5, 1.9))]
)
def test_constant_K(K0, c1, rng_u):
    rep = rv.verify_family(rv.ConstantK(K0, c1, 0.3), rng_u, grid=(20, 20))
    assert rep.max_abs_K_minus_K0 < 1e-8
    assert rep.passed
    prof = rv.solve_profile(rv.ConstantK(K0, c1), rng_u)
    u = 0.5 * sum(rng_u)
    assert five_point_derivative(lambda t: prof.jet(t).value, u) == pytest.approx(math.sqrt(c1 + K0 * u * u), abs=1e-8)


def test_descending_branch():
    rep = rv.verify_family(rv.ConstantK(1.0, 1.0, 0.0, sign=-1), grid=(10, 10))
    assert rep.max_abs_K_minus_K0 < 1e-8
    assert rv.solve_profile(rv.ConstantK(1.0, 1.0, 0.0, sign=-1), (1.0, 2.0)).jet(1.5).d1 < 0


@pytest.mark.parametrize("H0, c1", [(2.0, 1.0), (0.0, 1.0), (-1.0, 2.0)])
def test_constant_H(H0, c1):
    assert rv.verify_family(rv.ConstantH(H0, c1, 0.0), grid=(20, 20)).max_abs_H_minus_H0 < 1e-8


def test_minimal_and_flat():
    assert rv.verify_family(rv.Minimal(1.0, 0.0), grid=(20, 20)).max_abs_H_minus_H0 < 1e-9
    assert rv.verify_family(rv.Flat(2.0, 1.0), grid=(20, 20)).max_abs_K_minus_K0 < 1e-9


def test_parabolic_sphere_euler_equality_and_control():
    rep = rv.verify_family(rv.ParabolicSphere(2.0, 0.0))
    assert rep.max_abs_H2_minus_K < 1e-10
    assert rep.negative_control_H2_minus_K > 1e-8
    assert rep.passed


@pytest.mark.parametrize(
    "fam",
    [rv.ConstantK(1.0), rv.ConstantK(-1.0, 4.0), rv.ConstantH(2.0, 1.0), rv.Flat(1.5, -0.5),
     rv.Minimal(2.0, 0.0), rv.ParabolicSphere(1.0, 0.0)],
)
def test_ode_oracles(fam):
    rng_u = (1.0, 1.9) if isinstance(fam, rv.ConstantK) and fam.K0 < 0 else (1.0, 2.0)
    assert ode_deviation(fam, rng_u) < 1e-9


def test_flat_oracle_is_exact():
    us, f = rv.profile_ode_oracle(rv.Flat(3.0, 1.0), (1.0, 2.0))
    # rounding only, accumulated over 1000 steps
    np.testing.assert_allclose(f, 3.0 * us + 1.0, rtol=1e-13, atol=0)


def test_report_to_dict():
    d = rv.verify_family(rv.Minimal(), grid=(4, 4)).to_dict()
    assert d["family"] == "minimal" and d["grid"] == [4, 4] and d["passed"]
