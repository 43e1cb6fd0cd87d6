
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pseudoiso import curve as cv
from pseudoiso.core import XI, CausalClass, PiMotion, Vec3, pi_dot
from pseudoiso.errors import (
    MixedCausality,
    NotAdmissible,
    NotArcLength,
    NotLightlike,
    UnsupportedClass,
    ZeroCurvature,
)
from pseudoiso.verification import reconstruction_error, unit_speed_curve

from conftest import assert_vec_close


def C(x, y, z, r=(-1.0, 1.0), var="s"):
    return cv.CurveJet.from_exprs(x, y, z, var, r)


@pytest.mark.parametrize(
    "curve, cls",
    [
        (("cosh(s)", "sinh(s)", "s"), CausalClass.TIMELIKE),
        (("sinh(s)", "cosh(s)", "0"), CausalClass.SPACELIKE),
        (("s", "s", "s^3"), CausalClass.LIGHTLIKE),
        (("0", "0", "s"), CausalClass.ISOTROPIC),
    ],
)
def test_classify(curve, cls):
    assert cv.classify_curve(C(*curve), 64) is cls


def test_mixed_causality_names_both_samples():
    # tangent (1, 2s): spacelike near 0, timelike for |s| > 1/2
    with pytest.raises(MixedCausality, match="spacelike.*timelike"):
        cv.classify_curve(C("s", "s^2", "0", (0.0, 1.0)), 16)


def test_arclength():
    assert cv.is_arclength(C("cosh(s)", "sinh(s)", "sin(3*s)"))
    assert not cv.is_arclength(C("2*s", "0", "0"))
    assert cv.is_arclength(C("sinh(s)", "cosh(s)", "s^2"))


def test_admissible():
    assert cv.is_admissible(C("cosh(s)", "sinh(s)", "0"))
    assert not cv.is_admissible(C("s", "0", "s^2"))
    assert not cv.is_admissible(C("s", "s", "s^3"))


@pytest.mark.parametrize("s", [-1.0, 0.0, 0.4])
def test_curvature_of_hyperbolic_cylindrical_is_one(s):
    assert cv.curvature(C("cosh(s)", "sinh(s)", "exp(s)"), s) == pytest.approx(1.0, abs=1e-14)


def test_curvature_errors():
    assert cv.curvature(C("sinh(s)", "cosh(s)", "0"), 0.0) == 1.0
    with pytest.raises(NotArcLength):
        cv.curvature(C("cosh(2*s)", "sinh(2*s)", "s"), 0.3)
    with pytest.raises(NotAdmissible):
        cv.curvature(C("s", "0", "s^2"), 0.3)


def test_curvature_ratio_carries_sign():
    # timelike, with y' < 0: the ratio x''/y' is negative
    c = C("cosh(-s)", "sinh(-s)", "0")
    assert cv.curvature_ratio(c, 0.2) == pytest.approx(-1.0)
    assert cv.curvature(c, 0.2) == pytest.approx(1.0)


def test_torsion_examples():
    c = cv.constant_torsion_cylindrical(3.0, 0.5, -1.0, 2.0)
    for s in (-2.0, 0.0, 1.5):
        assert cv.torsion(c, s) == pytest.approx(3.0, abs=1e-12)
    assert cv.torsion(C("sinh(s)", "cosh(s)", "0"), 0.3) == 0.0
    flat = cv.constant_torsion_cylindrical(0, 0, 0, 0)
    assert flat.point(0.7).x3 == 0.0 and cv.torsion(flat, 0.7) == 0.0
    sq = cv.hyperbolic_cylindrical("s^2")
    for s in (-1.0, 0.5, 2.0):
        assert cv.torsion(sq, s) == pytest.approx(2 * s, abs=1e-13)


@given(st.floats(-5, 5), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-2, 2))
def test_constant_torsion_family(tau0, c1, c2, c3, s):
    inv = cv.curve_invariants(cv.constant_torsion_cylindrical(tau0, c1, c2, c3), s)
    assert inv.kappa == pytest.approx(1.0, abs=1e-12)
    assert inv.tau == pytest.approx(tau0, abs=1e-9)


def test_zero_curvature():
    with pytest.raises(ZeroCurvature):
        cv.torsion(C("cosh(1)*s", "sinh(1)*s", "s^3"), 0.2)
    with pytest.raises(ZeroCurvature):
        cv.frenet_frame(C("s", "0", "s^2"), 0.2)


def test_frenet_frames_at_zero():
    fr = cv.frenet_frame(C("cosh(s)", "sinh(s)", "s"), 0.0)
    assert fr == (Vec3(0, 1, 1), Vec3(1, 0, 0), XI)
    fr = cv.frenet_frame(C("sinh(s)", "cosh(s)", "0"), 0.0)
    assert fr == (Vec3(1, 0, 0), Vec3(0, 1, 0), XI)


def test_frenet_rhs_spacelike():
    # det(T~, N~) = 1 for this frame, so N' = kT + tau B
    fr = cv.FrenetFrame(Vec3(1, 0, 0), Vec3(0, 1, 0))
    dT, dN, dB = cv.frenet_rhs(CausalClass.SPACELIKE, 1.0, 0.0, fr)
    assert (dT, dN, dB) == (fr.N, fr.T, Vec3(0, 0, 0))


def test_frenet_rhs_timelike():
    fr = cv.frenet_frame(C("cosh(s)", "sinh(s)", "s"), 0.0)
    dT, dN, dB = cv.frenet_rhs(CausalClass.TIMELIKE, 1.0, 1.0, fr)
    assert dT == fr.N
    assert dN == fr.T - XI
    assert dB == Vec3(0, 0, 0)


def test_frenet_rhs_lightlike_unsupported():
    with pytest.raises(UnsupportedClass):
        cv.frenet_rhs(CausalClass.LIGHTLIKE, 1.0, 0.0, cv.FrenetFrame(Vec3(1, 1, 0), Vec3(1, 0, 0)))


@pytest.mark.parametrize("cls", [CausalClass.SPACELIKE, CausalClass.TIMELIKE])
@pytest.mark.parametrize("seed", range(4))
def test_frame_derivatives_match_system(cls, seed):
    c = unit_speed_curve(np.random.default_rng(seed), cls)
    h = 1e-5
    for s in (0.2, 0.5, 0.8):
        inv = cv.curve_invariants(c, s)
        fp, fm = cv.frenet_frame(c, s + h), cv.frenet_frame(c, s - h)
        dT, dN, _ = cv.frenet_rhs(cls, inv.kappa, inv.tau, cv.frenet_frame(c, s))
        assert_vec_close((fp.T - fm.T) / (2 * h), dT, 1e-6)
        assert_vec_close((fp.N - fm.N) / (2 * h), dN, 1e-6)


def test_reconstruct_helix():
    c = C("cosh(s)", "sinh(s)", "s + 2", (0.0, 1.0))
    out = cv.reconstruct_from_invariants(
        CausalClass.TIMELIKE, lambda s: 1.0, lambda s: 1.0,
        (c.point(0.0), cv.frenet_frame(c, 0.0)), (0.0, 1.0), 1e-3,
    )
    ref = np.array([tuple(c.point(s)) for s in out.s])
    assert np.max(np.abs(out.points - ref)) < 1e-10


def test_reconstruct_planar():
    init = (Vec3(0, 1, 0), cv.FrenetFrame(Vec3(1, 0, 0), Vec3(0, 1, 0)))
    out = cv.reconstruct_from_invariants(CausalClass.SPACELIKE, lambda s: 1.0, lambda s: 0.0,
                                         init, (0.0, 2.0), 1e-2)
    np.testing.assert_allclose(out.points[:, 2], 0.0, atol=1e-15)
    np.testing.assert_allclose(out.points[:, 0], np.sinh(out.s), rtol=1e-9)


def test_reconstruct_rejects_bad_step():
    init = (Vec3(0, 1, 0), cv.FrenetFrame(Vec3(1, 0, 0), Vec3(0, 1, 0)))
    with pytest.raises(ValueError):
        cv.reconstruct_from_invariants(CausalClass.SPACELIKE, abs, abs, init, (0.0, 1.0), 0.0)


@pytest.mark.parametrize("cls", [CausalClass.SPACELIKE, CausalClass.TIMELIKE])
def test_reconstruct_random_curves(cls):
    c = unit_speed_curve(np.random.default_rng(99), cls)
    assert reconstruction_error(c, cls) < 1e-6


def test_lightlike_plane_examples():
    assert cv.lightlike_plane(C("t", "t", "t^3", var="t")) == (-1, 0.0)
    sign, c0 = cv.lightlike_plane(C("t + 1", "-t", "exp(t)", var="t"))
    assert sign == 1 and c0 == pytest.approx(1.0)
    with pytest.raises(NotLightlike):
        cv.lightlike_plane(C("cosh(t)", "sinh(t)", "0", var="t"))


def test_moved_curve_keeps_invariants():
    c = cv.constant_torsion_cylindrical(2.0, 0.3, 0.1, 0.0, (-1.0, 1.0))
    m = PiMotion(0.8, 1.0, -2.0, 0.5, 3.0, -1.0)
    mc = cv.moved_curve(c, m)
    assert_vec_close(mc.point(0.3), m(c.point(0.3)), 1e-12)
    a, b = cv.curve_invariants(c, 0.3), cv.curve_invariants(mc, 0.3)
    assert b.kappa == pytest.approx(a.kappa, abs=1e-12)
    assert b.tau == pytest.approx(a.tau, abs=1e-11)


@pytest.mark.parametrize("cls", [CausalClass.SPACELIKE, CausalClass.TIMELIKE])
@pytest.mark.parametrize("seed", range(5))
def test_unit_speed_identities(cls, seed):
    c = unit_speed_curve(np.random.default_rng(100 + seed), cls)
    for s in (0.1, 0.6):
        _, d1, d2, _ = c.jets(s)
        inv = cv.curve_invariants(c, s)
        fr = cv.frenet_frame(c, s)
        assert d1.x1 * d2.x1 - d1.x2 * d2.x2 == pytest.approx(0.0, abs=1e-9)
        assert abs(inv.signed_det) == pytest.approx(inv.kappa, abs=1e-9)
        assert inv.kappa ** 2 == pytest.approx(abs(d2.x2 ** 2 - d2.x1 ** 2), rel=1e-12)
        t2, n2 = pi_dot(fr.T, fr.T), pi_dot(fr.N, fr.N)
        assert t2 == pytest.approx(1.0 if cls is CausalClass.SPACELIKE else -1.0, abs=1e-9)
        assert n2 == pytest.approx(-t2, abs=1e-9)
