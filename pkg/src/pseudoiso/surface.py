"""Admissible timelike surfaces: fundamental forms, K and H.

The unit normal of every admissible surface is the isotropic vector
xi = (0, 0, 1). The second fundamental form is

    h_ij = det(r_1, r_2, r_ij) / sqrt|det g|

so its sign follows the parameter order. Swapping the parameters flips H but
leaves K unchanged. ``oriented=True`` divides by the signed top-view Jacobian
instead, which coincides with the default whenever that Jacobian is positive.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .core import XI, PiMotion, Vec3, det2, det3, pi_dot
from .errors import DegenerateMetric, NotArcLength, SingularGraph
from .expr import ExprAst, Jet1, Jet2, eval_jet1, eval_jet2, parse

DEGENERATE_TOL = 1e-12
ARCLENGTH_TOL = 1e-9

JetFn2 = Callable[[float, float], Jet2]


@dataclass(frozen=True)
class SurfaceJet:
    """A parameterised surface (u1, u2) -> r with second-order jets."""

    x: JetFn2
    y: JetFn2
    z: JetFn2
    param_domain: tuple[tuple[float, float], tuple[float, float]] = ((0.0, 1.0), (0.0, 1.0))
    variables: tuple[str, str] = ("u", "v")
    label: str = ""

    @classmethod
    def from_exprs(cls, x, y, z, variables=("u", "v"), param_domain=((0.0, 1.0), (0.0, 1.0))):
        asts = [e if isinstance(e, ExprAst) else parse(e, list(variables)) for e in (x, y, z)]
        fns = [functools.partial(eval_jet2, a) for a in asts]
        label = ", ".join(str(a.source or a) for a in asts)
        return cls(*fns, param_domain=param_domain, variables=tuple(variables), label=label)

    def jets(self, u1: float, u2: float):
        """(r, r_1, r_2, r_11, r_12, r_22) at the parameter point."""
        jx, jy, jz = self.x(u1, u2), self.y(u1, u2), self.z(u1, u2)
        return tuple(Vec3(jx[k], jy[k], jz[k]) for k in range(6))

    def point(self, u1: float, u2: float) -> Vec3:
        jx, jy, jz = self.x(u1, u2), self.y(u1, u2), self.z(u1, u2)
        return Vec3(jx.value, jy.value, jz.value)


class FundamentalForms(NamedTuple):
    g11: float
    g12: float
    g22: float
    h11: float
    h12: float
    h22: float
    det_g: float
    jacobian: float  # x_1 y_2 - x_2 y_1 of the top view


def top_jacobian(r1: Vec3, r2: Vec3) -> float:
    return det2(r1.x1, r1.x2, r2.x1, r2.x2)


def _forms(jets, where, oriented=False) -> FundamentalForms:
    _, r1, r2, r11, r12, r22 = jets
    jac = top_jacobian(r1, r2)
    if abs(jac) < DEGENERATE_TOL:
        raise DegenerateMetric(f"top-view Jacobian {jac!r} vanishes at {where}")
    g11, g12, g22 = pi_dot(r1, r1), pi_dot(r1, r2), pi_dot(r2, r2)
    det_g = g11 * g22 - g12 * g12
    if not det_g < 0:
        raise DegenerateMetric(f"induced metric not of index 1 at {where}: det g = {det_g!r}")
    norm = jac if oriented else math.sqrt(abs(det_g))
    return FundamentalForms(
        g11,
        g12,
        g22,
        det3(r1, r2, r11) / norm,
        det3(r1, r2, r12) / norm,
        det3(r1, r2, r22) / norm,
        det_g,
        jac,
    )


def fundamental_forms(sj: SurfaceJet, p, oriented: bool = False) -> FundamentalForms:
    return _forms(sj.jets(*p), p, oriented)


def curvatures_from_forms(ff: FundamentalForms) -> tuple[float, float]:
    K = (ff.h11 * ff.h22 - ff.h12 ** 2) / ff.det_g
    H = (ff.g11 * ff.h22 - 2 * ff.g12 * ff.h12 + ff.g22 * ff.h11) / (2 * ff.det_g)
    return K, H


def curvatures(sj: SurfaceJet, p, oriented: bool = False) -> tuple[float, float]:
    """(K, H) at ``p``."""
    return curvatures_from_forms(fundamental_forms(sj, p, oriented))


def gauss_curvature(sj: SurfaceJet, p) -> float:
    return curvatures(sj, p)[0]


def mean_curvature(sj: SurfaceJet, p, oriented: bool = False) -> float:
    return curvatures(sj, p, oriented)[1]


# -- graphs -----------------------------------------------------------------


def _coord(index):
    def fn(u1, u2):
        return Jet2((u1, u2)[index], float(index == 0), float(index == 1))

    return fn


def _as_ast(u, variables):
    return u if isinstance(u, ExprAst) else parse(u, list(variables))


def graph_xy_surface(u, domain=((-1.0, 1.0), (-1.0, 1.0))) -> SurfaceJet:
    """The graph (x, y, u(x, y)) parameterised by (x, y)."""
    ast = _as_ast(u, ("x", "y"))
    return SurfaceJet(
        _coord(0), _coord(1), functools.partial(eval_jet2, ast), domain, ("x", "y"), f"z = {ast.source or ast}"
    )


def graph_yz_surface(u, domain=((-1.0, 1.0), (0.5, 1.5))) -> SurfaceJet:
    """The graph (u(y, z), y, z) parameterised by (y, z)."""
    ast = _as_ast(u, ("y", "z"))
    return SurfaceJet(
        functools.partial(eval_jet2, ast), _coord(0), _coord(1), domain, ("y", "z"), f"x = {ast.source or ast}"
    )


def graph_xy_curvatures(u, p) -> tuple[float, float]:
    """K = -u_xx u_yy + u_xy^2 and H = (u_xx - u_yy)/2."""
    j = eval_jet2(_as_ast(u, ("x", "y")), *p)
    return -j.duu * j.dvv + j.duv ** 2, 0.5 * (j.duu - j.dvv)


def graph_yz_curvatures(u, p) -> tuple[float, float]:
    """Closed forms for the graph x = u(y, z).

    H carries the orientation of a positive top-view Jacobian, i.e. it equals
    ``mean_curvature(graph_yz_surface(u), p, oriented=True)``.
    """
    j = eval_jet2(_as_ast(u, ("y", "z")), *p)
    uy, uz = j.du, j.dv
    if abs(uz) < DEGENERATE_TOL:
        raise SingularGraph(f"u_z = {uz!r} at {p}")
    K = -(j.duu * j.dvv - j.duv ** 2) / uz ** 4
    H = (uz ** 2 * j.duu - 2 * uy * uz * j.duv + (uy ** 2 - 1) * j.dvv) / (2 * uz ** 3)
    return K, H


def laplacian_graph(u, p) -> float:
    """u_xx - u_yy, the Laplacian of the flat metric dx^2 - dy^2."""
    j = eval_jet2(_as_ast(u, ("x", "y")), *p)
    return j.duu - j.dvv


# -- curves on surfaces -----------------------------------------------------


class Decomposition(NamedTuple):
    kappa_g: float
    kappa_n: float
    sigma: Vec3
    residual: float


def _param_jet(c, s) -> Jet1:
    if isinstance(c, ExprAst):
        return eval_jet1(c, s, 2)
    return c(s)


def acceleration_decomposition(sj: SurfaceJet, pc, s: float) -> Decomposition:
    """Split r'' of the curve s -> r(u1(s), u2(s)) as κ_g σ + κ_n ξ.

    ``pc`` is a pair of parameter functions, given as ASTs in ``s`` or as
    callables returning ``Jet1``. σ is the side tangential vector

        σ = -(1/sqrt|det g|) [(g12 u1' + g22 u2') r_1 - (g11 u1' + g12 u2') r_2]

    and κ_n = Σ h_ij u_i' u_j'. ``residual`` is the largest component of
    r'' - κ_g σ - κ_n ξ; it vanishes for positively oriented parameters.
    """
    a, b = (_param_jet(c, s) for c in pc)
    jets = sj.jets(a.value, b.value)
    _, r1, r2, r11, r12, r22 = jets
    ff = _forms(jets, (a.value, b.value))
    d1 = r1 * a.d1 + r2 * b.d1
    q = pi_dot(d1, d1)
    if abs(abs(q) - 1.0) > ARCLENGTH_TOL:
        raise NotArcLength(f"<r', r'> = {q!r} at s={s!r}")
    d2 = r11 * a.d1 ** 2 + r12 * (2 * a.d1 * b.d1) + r22 * b.d1 ** 2 + r1 * a.d2 + r2 * b.d2
    root = math.sqrt(abs(ff.det_g))
    sigma = -(
        r1 * (ff.g12 * a.d1 + ff.g22 * b.d1) - r2 * (ff.g11 * a.d1 + ff.g12 * b.d1)
    ) / root
    kappa_n = ff.h11 * a.d1 ** 2 + 2 * ff.h12 * a.d1 * b.d1 + ff.h22 * b.d1 ** 2
    kappa_g = (d2.x1 * sigma.x1 + d2.x2 * sigma.x2) / (sigma.x1 ** 2 + sigma.x2 ** 2)
    rest = d2 - sigma * kappa_g - XI * kappa_n
    return Decomposition(kappa_g, kappa_n, sigma, max(abs(c) for c in rest))


# -- motions ----------------------------------------------------------------


def _mix(jx, jy, jz, cx, cy, cz, const, cls):
    vals = [cx * a + cy * b + cz * c for a, b, c in zip(jx, jy, jz)]
    vals[0] += const
    return cls(*vals)


def moved_surface(sj: SurfaceJet, m: PiMotion) -> SurfaceJet:
    """The image of ``sj`` under ``m``, with the same parameters."""
    ch, sh = math.cosh(m.theta), math.sinh(m.theta)

    def comp(k):
        def fn(u1, u2):
            jx, jy, jz = sj.x(u1, u2), sj.y(u1, u2), sj.z(u1, u2)
            if k == 0:
                return _mix(jx, jy, jz, ch, sh, 0.0, m.a, Jet2)
            if k == 1:
                return _mix(jx, jy, jz, sh, ch, 0.0, m.b, Jet2)
            return _mix(jx, jy, jz, m.d, m.e, 1.0, m.c, Jet2)

        return fn

    return SurfaceJet(comp(0), comp(1), comp(2), sj.param_domain, sj.variables, sj.label)
