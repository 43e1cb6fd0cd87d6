"""Spacelike and timelike curves: invariants, Frenet frames, reconstruction.

All curvature quantities assume the curve is parameterised by arc length,
i.e. ``|x'^2 - y'^2| = 1``. Non-unit-speed input is rejected, never
silently reparameterised.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .core import XI, CausalClass, Vec3, det2, det3, pi_dot
from .errors import (
    Irregular,
    MixedCausality,
    NoSuchPlane,
    NotAdmissible,
    NotArcLength,
    NotLightlike,
    UnsupportedClass,
    ZeroCurvature,
)
from .expr import ExprAst, Jet1, eval_jet1, parse
from .ode import rk4

ARCLENGTH_TOL = 1e-9
#: below this |det(top-view α', α'')| the osculating plane counts as isotropic
ADMISSIBLE_TOL = 1e-12
#: relative band for calling a tangent lightlike: |<α',α'>| <= tol * |α~'|^2
LIGHTLIKE_RTOL = 1e-12

JetFn = Callable[[float], Jet1]


@dataclass(frozen=True)
class CurveJet:
    """A parametric curve s -> (x(s), y(s), z(s)) with third-order jets."""

    x: JetFn
    y: JetFn
    z: JetFn
    param_range: tuple[float, float] = (0.0, 1.0)
    label: str = ""

    @classmethod
    def from_exprs(cls, x, y, z, var="s", param_range=(0.0, 1.0)) -> CurveJet:
        """Build from three expressions (strings or parsed ASTs) in ``var``."""
        asts = [e if isinstance(e, ExprAst) else parse(e, [var]) for e in (x, y, z)]
        fns = [functools.partial(eval_jet1, a) for a in asts]
        label = ", ".join(str(a.source or a) for a in asts)
        return cls(*fns, param_range=tuple(param_range), label=label)

    def jets(self, s: float) -> tuple[Vec3, Vec3, Vec3, Vec3]:
        """(α, α', α'', α''') at ``s``."""
        jx, jy, jz = self.x(s), self.y(s), self.z(s)
        return tuple(Vec3(jx[k], jy[k], jz[k]) for k in range(4))

    def point(self, s: float) -> Vec3:
        return self.jets(s)[0]

    def samples(self, n: int) -> np.ndarray:
        if n < 2:
            raise ValueError("need at least two samples")
        return np.linspace(*self.param_range, n)


class FrenetFrame(NamedTuple):
    T: Vec3
    N: Vec3
    B: Vec3 = XI


class CurveInvariants(NamedTuple):
    kappa: float
    tau: float
    signed_det: float


def _tangent_class(d1: Vec3) -> CausalClass:
    speed2 = d1.x1 ** 2 + d1.x2 ** 2
    if speed2 == 0.0:
        if d1.x3 == 0.0:
            raise Irregular("α'(s) = 0")
        return CausalClass.ISOTROPIC
    q = pi_dot(d1, d1)
    if abs(q) <= LIGHTLIKE_RTOL * speed2:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def classify_curve(c: CurveJet, n_samples: int = 64) -> CausalClass:
    """Common causal class of the tangent over a uniform grid."""
    first = None
    for s in c.samples(n_samples):
        d1 = c.jets(s)[1]
        try:
            cls = _tangent_class(d1)
        except Irregular:
            raise Irregular(f"α'({s!r}) = 0") from None
        if first is None:
            first = (s, cls)
        elif cls is not first[1]:
            raise MixedCausality(
                f"tangent is {first[1]} at s={first[0]!r} but {cls} at s={s!r}"
            )
    return first[1]


def is_arclength(c: CurveJet, n_samples: int = 64, tol: float = ARCLENGTH_TOL) -> bool:
    cls = classify_curve(c, n_samples)
    if cls not in (CausalClass.SPACELIKE, CausalClass.TIMELIKE):
        return False
    for s in c.samples(n_samples):
        d1 = c.jets(s)[1]
        if abs(abs(pi_dot(d1, d1)) - 1.0) > tol:
            return False
    return True


def is_admissible(c: CurveJet, n_samples: int = 64) -> bool:
    """No isotropic osculating plane at any sample: det(α~', α~'') != 0."""
    for s in c.samples(n_samples):
        _, d1, d2, _ = c.jets(s)
        if d1 == Vec3(0.0, 0.0, 0.0):
            raise Irregular(f"α'({s!r}) = 0")
        if abs(det2(d1.x1, d1.x2, d2.x1, d2.x2)) <= ADMISSIBLE_TOL:
            return False
    return True


def _unit_class(d1: Vec3, s) -> CausalClass:
    q = pi_dot(d1, d1)
    if abs(abs(q) - 1.0) > ARCLENGTH_TOL:
        raise NotArcLength(f"<α',α'> = {q!r} at s={s!r}, expected ±1")
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def _kappa(cls: CausalClass, d2: Vec3) -> float:
    if cls is CausalClass.SPACELIKE:
        r = d2.x2 ** 2 - d2.x1 ** 2
    else:
        r = d2.x1 ** 2 - d2.x2 ** 2
    return math.sqrt(max(r, 0.0))


def curve_invariants(c: CurveJet, s: float) -> CurveInvariants:
    """Curvature, torsion and the signed top-view determinant at ``s``."""
    _, d1, d2, d3 = c.jets(s)
    cls = _unit_class(d1, s)
    kappa = _kappa(cls, d2)
    if kappa <= ADMISSIBLE_TOL:
        raise ZeroCurvature(f"κ({s!r}) = {kappa!r}")
    return CurveInvariants(
        kappa=kappa,
        tau=det3(d1, d2, d3) / kappa ** 2,
        signed_det=det2(d1.x1, d1.x2, d2.x1, d2.x2),
    )


def curvature(c: CurveJet, s: float) -> float:
    """Nonnegative curvature of an arc-length curve.

    Spacelike: sqrt(y''^2 - x''^2); timelike: sqrt(x''^2 - y''^2). The
    signed value det(α~', α~'') is available from ``curve_invariants``.
    """
    _, d1, d2, _ = c.jets(s)
    cls = _unit_class(d1, s)
    if abs(det2(d1.x1, d1.x2, d2.x1, d2.x2)) <= ADMISSIBLE_TOL:
        raise NotAdmissible(f"isotropic osculating plane at s={s!r}")
    return _kappa(cls, d2)


def curvature_ratio(c: CurveJet, s: float) -> float:
    """The quotient form y''/x' (spacelike) or x''/y' (timelike), sign included."""
    _, d1, d2, _ = c.jets(s)
    cls = _unit_class(d1, s)
    if cls is CausalClass.SPACELIKE:
        return d2.x2 / d1.x1
    return d2.x1 / d1.x2


def torsion(c: CurveJet, s: float) -> float:
    return curve_invariants(c, s).tau


def frenet_frame(c: CurveJet, s: float) -> FrenetFrame:
    _, d1, d2, _ = c.jets(s)
    cls = _unit_class(d1, s)
    kappa = _kappa(cls, d2)
    if kappa <= ADMISSIBLE_TOL:
        raise ZeroCurvature(f"κ({s!r}) = {kappa!r}")
    return FrenetFrame(d1, d2 / kappa, XI)


def orientation(frame: FrenetFrame) -> float:
    """Sign of det(T~, N~); equals the sign of det(α~', α~'')."""
    return math.copysign(1.0, det2(frame.T.x1, frame.T.x2, frame.N.x1, frame.N.x2))


def frenet_rhs(cls: CausalClass, kappa: float, tau: float, frame: FrenetFrame):
    """Derivatives (T', N', B') of the Frenet frame.

    T' = κN and B' = 0 for both classes. N' = κT + ε τ B where ε is the sign
    of det(T~, N~): the top-view part of N' is fixed by differentiating
    <N,N> = ∓1 and <T,N> = 0, and ε comes from comparing the z-component of
    N' with the torsion determinant.
    """
    if cls not in (CausalClass.SPACELIKE, CausalClass.TIMELIKE):
        raise UnsupportedClass(f"no Frenet system for {cls} curves")
    T, N, B = frame
    eps = orientation(frame)
    return kappa * N, kappa * T + (eps * tau) * B, Vec3(0.0, 0.0, 0.0)


@dataclass
class SampledCurve:
    s: np.ndarray
    points: np.ndarray  # (n, 3)
    T: np.ndarray
    N: np.ndarray


def reconstruct_from_invariants(
    cls: CausalClass,
    kappa_fn: Callable[[float], float],
    tau_fn: Callable[[float], float],
    init: tuple[Vec3, FrenetFrame],
    s_range: tuple[float, float],
    step: float,
) -> SampledCurve:
    """Integrate α' = T together with the Frenet system by RK4."""
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    if cls not in (CausalClass.SPACELIKE, CausalClass.TIMELIKE):
        raise UnsupportedClass(f"no Frenet system for {cls} curves")
    p0, frame0 = init
    eps = orientation(frame0)

    def rhs(s, y):
        k = kappa_fn(s)
        if abs(k) <= ADMISSIBLE_TOL:
            raise ZeroCurvature(f"κ({s!r}) = {k!r} during integration")
        t_, n_ = y[3:6], y[6:9]
        dn = k * t_
        dn[2] += eps * tau_fn(s)
        return np.concatenate([t_, k * n_, dn])

    y0 = np.array([*p0, *frame0.T, *frame0.N], dtype=float)
    ts, ys = rk4(rhs, s_range[0], y0, s_range[1], step)
    return SampledCurve(ts, ys[:, 0:3], ys[:, 3:6], ys[:, 6:9])


def lightlike_plane(c: CurveJet, n_samples: int = 64, tol: float = 1e-10):
    """Return ``(sign, c0)`` with x(s) + sign*y(s) = c0 along a lightlike curve."""
    ss = c.samples(n_samples)
    for s in ss:
        if _tangent_class(c.jets(s)[1]) is not CausalClass.LIGHTLIKE:
            raise NotLightlike(f"tangent at s={s!r} is not lightlike")
    pts = np.array([tuple(c.point(s)) for s in ss])
    best = None
    for sign in (1, -1):
        w = pts[:, 0] + sign * pts[:, 1]
        spread = float(np.max(np.abs(w - w[0])))
        if spread <= tol and (best is None or spread < best[2]):
            best = (sign, float(np.mean(w)), spread)
    if best is None:
        raise NoSuchPlane("neither x + y nor x - y is constant along the curve")
    return best[0], best[1]


def hyperbolic_cylindrical(z, param_range=(-math.pi, math.pi)) -> CurveJet:
    """The timelike unit-speed curve (cosh s, sinh s, z(s))."""
    return CurveJet.from_exprs("cosh(s)", "sinh(s)", z, "s", param_range)


def constant_torsion_cylindrical(tau0, c1, c2, c3, param_range=(-math.pi, math.pi)) -> CurveJet:
    z = f"{tau0!r}*s + {c1!r}*exp(s) - {c2!r}*exp(-s) + {c3!r}"
    return hyperbolic_cylindrical(z, param_range)


def moved_curve(c: CurveJet, m) -> CurveJet:
    """The image of ``c`` under the motion ``m``, same parameter."""
    ch, sh = math.cosh(m.theta), math.sinh(m.theta)
    rows = ((ch, sh, 0.0, m.a), (sh, ch, 0.0, m.b), (m.d, m.e, 1.0, m.c))

    def comp(row):
        cx, cy, cz, const = row

        def fn(s):
            vals = [cx * a + cy * b + cz * d for a, b, d in zip(c.x(s), c.y(s), c.z(s))]
            vals[0] += const
            return Jet1(*vals)

        return fn

    return CurveJet(*(comp(r) for r in rows), param_range=c.param_range, label=c.label)
