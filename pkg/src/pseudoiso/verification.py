"""Numerical checks of every closed-form claim the library reproduces.

Each check returns one measured number and compares it with a fixed
tolerance: an upper bound for error measures, a lower bound for negative
controls. All randomness is seeded so reports are reproducible byte for byte.
"""

from __future__ import annotations

import functools
import math
from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import curve as cv
from . import revolution as rv
from . import surface as sf
from .core import CausalClass, PiMotion
from .errors import NoSuchPlane
from .expr import Jet1, eval_jet1, eval_jet2, parse

# -- random inputs ----------------------------------------------------------


def _c(rng, lo=-2.0, hi=2.0) -> str:
    return repr(round(float(rng.uniform(lo, hi)), 3))


def random_expr(rng, variables, depth=3) -> str:
    """A random expression that is smooth and finite on all of R^n."""
    if depth == 0 or rng.random() < 0.2:
        roll = rng.random()
        var = variables[rng.integers(len(variables))]
        if roll < 0.4:
            return var
        if roll < 0.8:
            return f"{_c(rng)}*{var}"
        return _c(rng)
    a = lambda: random_expr(rng, variables, depth - 1)  # noqa: E731
    op = rng.integers(13)
    if op == 0:
        return f"({a()} + {a()})"
    if op == 1:
        return f"({a()} - {a()})"
    if op == 2:
        return f"({a()})*({a()})"
    if op == 3:
        return f"({a()})/(1 + ({a()})^2)"
    if op == 4:
        return f"sin({a()})"
    if op == 5:
        return f"cos({a()})"
    if op == 6:
        return f"tanh({a()})"
    if op == 7:
        return f"exp(sin({a()}))"
    if op == 8:
        return f"sinh(cos({a()}))"
    if op == 9:
        return f"cosh(tanh({a()}))"
    if op == 10:
        return f"sqrt(1 + ({a()})^2)"
    if op == 11:
        return f"ln(2 + sin({a()}))"
    return f"(sin({a()}))^{rng.integers(2, 4)}"


def random_motion(rng, theta=1.0, shift=2.0) -> PiMotion:
    return PiMotion(float(rng.uniform(-theta, theta)), *map(float, rng.uniform(-shift, shift, 5)))


def _gauss_legendre(n=40):
    return np.polynomial.legendre.leggauss(n)


_GL = _gauss_legendre()


def unit_speed_curve(rng, cls: CausalClass, param_range=(0.0, 1.0)) -> cv.CurveJet:
    """A random arc-length admissible curve with non-constant curvature.

    The top-view tangent is (cosh phi, sinh phi) for spacelike curves and
    (sinh phi, cosh phi) for timelike ones, with phi quadratic and phi' kept
    away from zero on ``param_range``. Random reflections of x and y give
    both orientations; the height is a random expression.
    """
    lo, hi = param_range
    p1 = float(rng.uniform(0.5, 1.5)) * rng.choice([-1.0, 1.0])
    p2 = float(rng.uniform(-0.2, 0.2)) * abs(p1) / max(abs(lo), abs(hi), 1.0)
    p0 = float(rng.uniform(-0.5, 0.5))
    sx, sy = rng.choice([-1.0, 1.0], 2)
    x0, y0 = rng.uniform(-1, 1, 2)
    timelike = cls is CausalClass.TIMELIKE
    z_ast = parse(random_expr(rng, ["s"], 2), ["s"])
    nodes, weights = _GL

    def phi(s):
        return p0 + p1 * s + p2 * s * s, p1 + 2 * p2 * s, 2 * p2

    def integral(fn, s):
        if s == 0.0:
            return 0.0
        t = 0.5 * s * (nodes + 1.0)
        return 0.5 * s * float(np.dot(weights, fn(p0 + p1 * t + p2 * t * t)))

    def comp(first, sign, origin):
        # first=True: derivative cosh(phi); else sinh(phi)
        f0, f1 = (np.cosh, np.sinh) if first else (np.sinh, np.cosh)

        def fn(s, order=3):
            v, dv, ddv = phi(s)
            a, b = float(f0(v)), float(f1(v))
            return Jet1(
                sign * (origin + integral(f0, s)),
                sign * a,
                sign * dv * b,
                sign * (ddv * b + dv * dv * a),
            )

        return fn

    x = comp(not timelike, sx, x0)
    y = comp(timelike, sy, y0)
    return cv.CurveJet(x, y, functools.partial(eval_jet1, z_ast), param_range,
                       f"{cls} unit-speed curve")


def random_surface(rng, domain=((-1.0, 1.0), (-1.0, 1.0))) -> sf.SurfaceJet:
    """A random admissible surface: a sheared linear top view plus a small
    wobble (top-view Jacobian stays in [0.8, 2.2]·sign) and a random height.
    """
    while True:
        a, b, c, d = map(float, rng.uniform(-1.5, 1.5, 4))
        if abs(a * d - b * c) >= 1.5:
            break
    w = [(_c(rng, -1, 1), _c(rng, -1, 1)) for _ in range(2)]
    x = f"{a!r}*u + {b!r}*v + 0.05*sin({w[0][0]}*u + {w[0][1]}*v)"
    y = f"{c!r}*u + {d!r}*v + 0.05*cos({w[1][0]}*u + {w[1][1]}*v)"
    z = random_expr(rng, ["u", "v"], 3)
    return sf.SurfaceJet.from_exprs(x, y, z, ("u", "v"), domain)


def random_lightlike_curve(rng) -> tuple[cv.CurveJet, int]:
    """Random curve with x + sign*y constant, moved by a random motion."""
    a = float(rng.uniform(0.5, 2.0) * rng.choice([-1.0, 1.0]))
    c = float(rng.uniform(0.2, 2.0))
    b = float(rng.uniform(-0.4, 0.4) * abs(a) / c)
    sign = int(rng.choice([-1, 1]))
    k = _c(rng)
    x = f"{a!r}*t + {b!r}*sin({c!r}*t + {_c(rng)})"
    y = f"{-sign}*({x}) + {k}"
    z = random_expr(rng, ["t"], 2)
    crv = cv.CurveJet.from_exprs(x, y, z, "t", (-1.0, 1.0))
    return cv.moved_curve(crv, random_motion(rng, theta=0.5)), sign


def _mixed_err(a, b) -> float:
    """|a - b| scaled by max(1, |b|): absolute near zero, relative beyond."""
    return abs(a - b) / max(1.0, abs(b))


# -- check registry ---------------------------------------------------------


@dataclass
class Check:
    name: str
    criterion: int
    paper_ref: str
    tolerance: float
    run: Callable[[], float]
    lower_bound: bool = False
    suite: str = "paper"


@dataclass
class CheckResult:
    name: str
    criterion: int
    paper_ref: str
    measured: float
    tolerance: float
    comparison: str
    passed: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        if not math.isfinite(d["measured"]):
            d["measured"] = str(d["measured"])
        return d


CHECKS: list[Check] = []


def check(name, criterion, ref, tol, suite, lower_bound=False):
    def deco(fn):
        CHECKS.append(Check(name, criterion, ref, tol, fn, lower_bound, suite))
        return fn

    return deco


SUITES = ("paper", "curve", "surface", "revolution", "motion", "expr")


# 1 -------------------------------------------------------------------------

def _constant_torsion_samples():
    rng = np.random.default_rng(101)
    out = []
    for _ in range(3):
        c1, c2, c3 = map(float, rng.uniform(-2, 2, 3))
        crv = cv.constant_torsion_cylindrical(3.0, c1, c2, c3)
        out += [cv.curve_invariants(crv, s) for s in crv.samples(1000)]
    return out


@check("constant_torsion_kappa", 1, "hyperbolic cylindrical curve has curvature 1", 1e-9, "curve")
def _c1a():
    return max(abs(inv.kappa - 1.0) for inv in _constant_torsion_samples())


@check("constant_torsion_tau", 1,
       "z = tau0 s + c1 e^s - c2 e^-s + c3 gives torsion tau0 = 3", 1e-9, "curve")
def _c1b():
    return max(abs(inv.tau - 3.0) for inv in _constant_torsion_samples())


# 2 -------------------------------------------------------------------------

@check("torsion_law", 2, "torsion of (cosh s, sinh s, z) equals z' - z'''", 1e-9, "curve")
def _c2():
    rng = np.random.default_rng(202)
    worst = 0.0
    for _ in range(20):
        z = parse(random_expr(rng, ["s"], 3), ["s"])
        crv = cv.hyperbolic_cylindrical(z, (-1.0, 1.0))
        for s in crv.samples(25):
            j = eval_jet1(z, s)
            worst = max(worst, _mixed_err(cv.torsion(crv, s), j.d1 - j.d3))
    return worst


# 3 -------------------------------------------------------------------------

def _frenet_fd_error(crv, s, h=1e-5):
    cls = cv._unit_class(crv.jets(s)[1], s)
    inv = cv.curve_invariants(crv, s)
    fr = cv.frenet_frame(crv, s)
    fp, fm = cv.frenet_frame(crv, s + h), cv.frenet_frame(crv, s - h)
    dT = (fp.T - fm.T) / (2 * h)
    dN = (fp.N - fm.N) / (2 * h)
    rT, rN, rB = cv.frenet_rhs(cls, inv.kappa, inv.tau, fr)
    return max(dT.max_abs_diff(rT), dN.max_abs_diff(rN), max(abs(c) for c in rB))


@check("frenet_systems_fd", 3,
       "frame derivatives obey T' = kN, N' = kT + eps tau B, B' = 0", 1e-5, "curve")
def _c3a():
    rng = np.random.default_rng(303)
    worst = 0.0
    for i in range(20):
        cls = CausalClass.SPACELIKE if i % 2 == 0 else CausalClass.TIMELIKE
        crv = unit_speed_curve(rng, cls)
        for s in np.linspace(0.05, 0.95, 7):
            worst = max(worst, _frenet_fd_error(crv, float(s)))
    return worst


def reconstruction_error(crv, cls, s_range=(0.0, 1.0), step=1e-3) -> float:
    inv = functools.lru_cache(maxsize=8)(lambda s: cv.curve_invariants(crv, s))
    s0 = s_range[0]
    out = cv.reconstruct_from_invariants(
        cls, lambda s: inv(s).kappa, lambda s: inv(s).tau,
        (crv.point(s0), cv.frenet_frame(crv, s0)), s_range, step,
    )
    return max(float(np.max(np.abs(p - np.array(tuple(crv.point(s))))))
               for s, p in zip(out.s, out.points))


@check("frenet_reconstruction", 3,
       "integrating the Frenet system from (kappa, tau) rebuilds the curve", 1e-6, "curve")
def _c3b():
    rng = np.random.default_rng(304)
    worst = 0.0
    for cls in (CausalClass.SPACELIKE, CausalClass.TIMELIKE) * 2:
        worst = max(worst, reconstruction_error(unit_speed_curve(rng, cls), cls))
    return worst


# 4 -------------------------------------------------------------------------

@check("lightlike_plane", 4, "every lightlike curve lies in a plane x +- y = c", 1e-10, "curve")
def _c4():
    rng = np.random.default_rng(404)
    worst = 0.0
    for _ in range(20):
        crv, _sign = random_lightlike_curve(rng)
        if cv.classify_curve(crv, 64) is not CausalClass.LIGHTLIKE:
            return math.inf
        try:
            sign, c0 = cv.lightlike_plane(crv, 64)
        except NoSuchPlane:
            return math.inf
        for s in crv.samples(64):
            p = crv.point(s)
            worst = max(worst, abs(p.x1 + sign * p.x2 - c0))
    return worst


# 5 -------------------------------------------------------------------------

@check("det_g_identity", 5, "det g = -(x_1 y_2 - x_2 y_1)^2", 1e-9, "surface")
def _c5():
    rng = np.random.default_rng(505)
    worst = 0.0
    for _ in range(20):
        srf = random_surface(rng)
        for u in np.linspace(-1, 1, 10):
            for v in np.linspace(-1, 1, 10):
                ff = sf.fundamental_forms(srf, (u, v))
                worst = max(worst, abs(ff.det_g + ff.jacobian ** 2))
    return worst


# 6 -------------------------------------------------------------------------

@check("graph_xy_formulas", 6,
       "xy-graph: K = -u_xx u_yy + u_xy^2, H = (u_xx - u_yy)/2", 1e-9, "surface")
def _c6a():
    rng = np.random.default_rng(606)
    worst = 0.0
    for _ in range(20):
        u = parse(random_expr(rng, ["x", "y"], 3), ["x", "y"])
        srf = sf.graph_xy_surface(u)
        for p in rng.uniform(-1, 1, (10, 2)):
            K, H = sf.graph_xy_curvatures(u, p)
            Kg, Hg = sf.curvatures(srf, p)
            worst = max(worst, _mixed_err(K, Kg), _mixed_err(H, Hg))
    return worst


def random_yz_graph(rng) -> str:
    a = float(rng.uniform(1.0, 2.0) * rng.choice([-1.0, 1.0]))
    e = _c(rng, -0.2, 0.2)
    return (f"{a!r}*z + {random_expr(rng, ['y'], 2)} + "
            f"0.2*sin({_c(rng, -1, 1)}*y + {_c(rng, -1, 1)}*z) + {e}*y*z")


@check("graph_yz_formulas", 6,
       "yz-graph closed forms for K and H (positive top-view orientation)", 1e-9, "surface")
def _c6b():
    rng = np.random.default_rng(607)
    worst = 0.0
    for _ in range(20):
        u = parse(random_yz_graph(rng), ["y", "z"])
        srf = sf.graph_yz_surface(u)
        for p in rng.uniform(-1, 1, (10, 2)):
            K, H = sf.graph_yz_curvatures(u, p)
            Kg, Hg = sf.curvatures(srf, p, oriented=True)
            worst = max(worst, _mixed_err(K, Kg), _mixed_err(H, Hg))
    return worst


# 7 -------------------------------------------------------------------------

@check("revolution_reduction", 7,
       "surfaces of revolution: K = f'f''/u and H = (f'/u + f'')/2", 1e-9, "revolution")
def _c7():
    rng = np.random.default_rng(707)
    worst = 0.0
    kinds = (rv.ProfileKind.SPACELIKE, rv.ProfileKind.TIMELIKE) * 2
    for kind in kinds:
        prof = rv.Profile.from_expr(random_expr(rng, ["u"], 3), (1.0, 2.0), kind)
        srf = rv.make_revolution(prof, (-1.0, 1.0))
        us, vs, K, H = rv.sample_curvatures(srf, (50, 50))
        for i, u in enumerate(us):
            Kr, Hr = rv.rev_gauss(prof, u), rv.rev_mean(prof, u)
            worst = max(worst, max(_mixed_err(k, Kr) for k in K[i]),
                        max(_mixed_err(h, Hr) for h in H[i]))
    return worst


# 8 -------------------------------------------------------------------------

@check("example_flat", 8, "(u cosh v, u sinh v, u) is flat on [1,2]x[0,1]", 1e-9, "revolution")
def _c8a():
    prof = rv.Profile.from_expr("u", (1.0, 2.0))
    _, _, K, _ = rv.sample_curvatures(rv.make_revolution(prof, (0.0, 1.0)), (50, 50))
    return float(np.max(np.abs(K)))


@check("example_cmc", 8, "(u cosh v, u sinh v, ln u + u^2) has H = 2 on [1,2]x[-1,1]", 1e-9,
       "revolution")
def _c8b():
    prof = rv.Profile.from_expr("ln(u) + u^2", (1.0, 2.0))
    _, _, _, H = rv.sample_curvatures(rv.make_revolution(prof, (-1.0, 1.0)), (50, 50))
    return float(np.max(np.abs(H - 2.0)))


# 9 -------------------------------------------------------------------------

CONSTANT_K_CASES = (
    (1.0, 0.0, (1.0, 2.0)),
    (1.0, 1.0, (1.0, 2.0)),
    (2.0, -1.0, (1.0, 2.0)),
    (-1.0, 4.0, (0.5, 1.9)),
)


@check("constant_K_surfaces", 9, "constant-K profiles give K = K0 everywhere", 1e-8, "revolution")
def _c9a():
    worst = 0.0
    for K0, c1, rng_u in CONSTANT_K_CASES:
        rep = rv.verify_family(rv.ConstantK(K0, c1, 0.0), rng_u, (-1.0, 1.0))
        worst = max(worst, rep.max_abs_K_minus_K0)
    return worst


def five_point_derivative(fn, u, h=1e-3):
    return (fn(u - 2 * h) - 8 * fn(u - h) + 8 * fn(u + h) - fn(u + 2 * h)) / (12 * h)


@check("constant_K_derivative", 9,
       "the constant-K profile is an antiderivative of sqrt(c1 + K0 u^2)", 1e-8, "revolution")
def _c9b():
    worst = 0.0
    for K0, c1, (lo, hi) in CONSTANT_K_CASES:
        prof = rv.solve_profile(rv.ConstantK(K0, c1, 0.5), (lo, hi))
        value = lambda u: prof.jet(u).value  # noqa: E731
        for u in np.linspace(lo + 0.01, hi - 0.01, 101):
            worst = max(worst, abs(five_point_derivative(value, u) - math.sqrt(c1 + K0 * u * u)))
    return worst


# 10 ------------------------------------------------------------------------

@check("constant_H_surfaces", 10, "H0 u^2/2 + c1 ln u + c2 gives H = H0", 1e-8, "revolution")
def _c10a():
    worst = 0.0
    for H0, c1 in ((2.0, 1.0), (0.0, 1.0), (-1.0, 2.0)):
        rep = rv.verify_family(rv.ConstantH(H0, c1, 0.0), (1.0, 2.0), (-1.0, 1.0))
        worst = max(worst, rep.max_abs_H_minus_H0)
    return worst


@check("minimal_surfaces", 10, "c1 ln u + c2 gives a minimal surface", 1e-9, "revolution")
def _c10b():
    worst = 0.0
    for c1, c2 in ((1.0, 0.0), (-2.5, 1.0)):
        rep = rv.verify_family(rv.Minimal(c1, c2), (1.0, 2.0), (-1.0, 1.0))
        worst = max(worst, rep.max_abs_H_minus_H0)
    return worst


# 11 ------------------------------------------------------------------------

@functools.lru_cache(maxsize=1)
def _sphere_report():
    return rv.verify_family(rv.ParabolicSphere(2.0, 0.0), (1.0, 2.0), (-1.0, 1.0))


@check("parabolic_sphere_HK", 11, "z = x^2 - y^2 has H = 2 and K = 4", 1e-9, "revolution")
def _c11a():
    rep = _sphere_report()
    return max(rep.max_abs_H_minus_H0, rep.max_abs_K_minus_K0)


@check("parabolic_sphere_euler", 11, "parabolic spheres satisfy H^2 = K", 1e-10, "revolution")
def _c11b():
    return _sphere_report().max_abs_H2_minus_K


@check("parabolic_sphere_negative_control", 11,
       "perturbing the profile by 1e-3 u^3 breaks H^2 = K", 1e-8, "revolution", lower_bound=True)
def _c11c():
    return _sphere_report().negative_control_H2_minus_K


# 12 ------------------------------------------------------------------------

@check("motion_invariance", 12, "K, H, kappa and tau are invariant under motions", 1e-8,
       "motion")
def _c12():
    rng = np.random.default_rng(1212)
    cmc = rv.make_revolution(rv.solve_profile(rv.ConstantH(2.0, 1.0, 0.0), (1.0, 2.0)))
    worst = 0.0
    for i in range(20):
        m = random_motion(rng)
        srf = cmc if i % 2 == 0 else random_surface(rng)
        moved = sf.moved_surface(srf, m)
        (u0, u1), (v0, v1) = srf.param_domain
        for u in np.linspace(u0, u1, 5):
            for v in np.linspace(v0, v1, 5):
                K, H = sf.curvatures(srf, (u, v))
                Km, Hm = sf.curvatures(moved, (u, v))
                worst = max(worst, _mixed_err(Km, K), _mixed_err(Hm, H))
        c1, c2, c3 = map(float, rng.uniform(-1, 1, 3))
        crv = cv.constant_torsion_cylindrical(float(rng.uniform(-3, 3)), c1, c2, c3, (-1.0, 1.0))
        mc = cv.moved_curve(crv, m)
        for s in crv.samples(20):
            a, b = cv.curve_invariants(crv, s), cv.curve_invariants(mc, s)
            worst = max(worst, _mixed_err(b.kappa, a.kappa), _mixed_err(b.tau, a.tau))
    return worst


# 13 ------------------------------------------------------------------------

ODE_FAMILIES = (
    rv.ConstantK(1.0, 0.0, 0.0),
    rv.ConstantK(1.0, 1.0, 0.0),
    rv.ConstantK(2.0, -1.0, 0.0),
    rv.ConstantH(2.0, 1.0, 0.0),
    rv.ConstantH(-1.0, 2.0, 0.5),
    rv.Flat(1.5, -0.5),
    rv.Minimal(1.0, 0.0),
    rv.ParabolicSphere(2.0, 0.0),
)


def ode_deviation(fam, u_range=(1.0, 2.0), step=1e-3) -> float:
    prof = rv.solve_profile(fam, u_range)
    us, f = rv.profile_ode_oracle(fam, u_range, step)
    return max(abs(fi - prof.jet(u).value) for u, fi in zip(us, f))


@check("ode_oracles", 13, "closed-form profiles solve their defining ODEs", 1e-9, "revolution")
def _c13():
    return max(ode_deviation(fam) for fam in ODE_FAMILIES)


# 14 ------------------------------------------------------------------------

def _ad_fd_errors(rng, n=50, h=1e-5):
    first = second = 0.0
    for _ in range(n):
        ast = parse(random_expr(rng, ["s"], 3), ["s"])
        s = float(rng.uniform(-1, 1))
        j = eval_jet1(ast, s)
        jp, jm = eval_jet1(ast, s + h), eval_jet1(ast, s - h)
        first = max(first, _mixed_err((jp.value - jm.value) / (2 * h), j.d1))
        second = max(second, _mixed_err((jp.d1 - jm.d1) / (2 * h), j.d2))
    for _ in range(n):
        ast = parse(random_expr(rng, ["x", "y"], 3), ["x", "y"])
        x, y = map(float, rng.uniform(-1, 1, 2))
        j = eval_jet2(ast, x, y)
        xp, xm = eval_jet2(ast, x + h, y), eval_jet2(ast, x - h, y)
        yp, ym = eval_jet2(ast, x, y + h), eval_jet2(ast, x, y - h)
        first = max(first,
                    _mixed_err((xp.value - xm.value) / (2 * h), j.du),
                    _mixed_err((yp.value - ym.value) / (2 * h), j.dv))
        second = max(second,
                     _mixed_err((xp.du - xm.du) / (2 * h), j.duu),
                     _mixed_err((yp.du - ym.du) / (2 * h), j.duv),
                     _mixed_err((xp.dv - xm.dv) / (2 * h), j.duv),
                     _mixed_err((yp.dv - ym.dv) / (2 * h), j.dvv))
    return first, second


@functools.lru_cache(maxsize=1)
def _ad_fd():
    return _ad_fd_errors(np.random.default_rng(1414))


@check("ad_first_derivatives", 14, "jet first derivatives match central differences", 1e-6,
       "expr")
def _c14a():
    return _ad_fd()[0]


@check("ad_second_derivatives", 14, "jet second derivatives match central differences", 1e-4,
       "expr")
def _c14b():
    return _ad_fd()[1]


# -- runner -----------------------------------------------------------------


def select(suite: str = "paper") -> list[Check]:
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    return [c for c in CHECKS if suite == "paper" or c.suite == suite]


def run_check(c: Check, tol: float | None = None) -> CheckResult:
    tolerance = c.tolerance if (tol is None or c.lower_bound) else tol
    try:
        measured = float(c.run())
    except Exception as exc:  # a crashing check is a failed check
        measured = math.nan
        name = f"{c.name} ({type(exc).__name__}: {exc})"
    else:
        name = c.name
    if c.lower_bound:
        passed = measured > tolerance
    else:
        passed = measured < tolerance
    return CheckResult(name, c.criterion, c.paper_ref, measured, tolerance,
                       ">" if c.lower_bound else "<", bool(passed))


def run_suite(suite: str = "paper", tol: float | None = None) -> list[CheckResult]:
    """Run every check of ``suite``. ``tol`` overrides upper-bound tolerances."""
    return [run_check(c, tol) for c in select(suite)]
