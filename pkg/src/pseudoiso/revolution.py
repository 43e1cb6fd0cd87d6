"""Surfaces of revolution under hyperbolic rotation about the z-axis.

A profile f(u), u > 0, is swept either as (u cosh v, u sinh v, f(u)) or, for
a timelike profile, as (u sinh v, u cosh v, f(u)). Both share

    K = f' f'' / u,   H = (f'/u + f'') / 2.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import DomainError, EmptyDomain, InvalidParams
from .expr import ExprAst, Jet1, Jet2, eval_jet1, parse
from .ode import rk4
from .surface import SurfaceJet, curvatures


class ProfileKind(enum.Enum):
    SPACELIKE = "spacelike"  # profile (u, 0, f(u)) in the xz-plane
    TIMELIKE = "timelike"  # profile (0, u, f(u)) in the yz-plane


@dataclass(frozen=True)
class Profile:
    f: Callable[[float], Jet1]
    u_range: tuple[float, float]
    kind: ProfileKind = ProfileKind.SPACELIKE
    text: str = ""

    def __post_init__(self):
        lo, hi = self.u_range
        if not 0 < lo < hi:
            raise EmptyDomain(f"profile range {self.u_range} must satisfy 0 < lo < hi")

    @classmethod
    def from_expr(cls, f, u_range, kind=ProfileKind.SPACELIKE) -> Profile:
        ast = f if isinstance(f, ExprAst) else parse(f, ["u"])
        return cls(functools.partial(eval_jet1, ast), tuple(u_range), kind, ast.source or str(ast))

    def jet(self, u: float) -> Jet1:
        return self.f(u)


def make_revolution(p: Profile, v_range=(-1.0, 1.0)) -> SurfaceJet:
    def cosh_col(u, v):
        c, s = math.cosh(v), math.sinh(v)
        return Jet2(u * c, c, u * s, 0.0, s, u * c)

    def sinh_col(u, v):
        c, s = math.cosh(v), math.sinh(v)
        return Jet2(u * s, s, u * c, 0.0, c, u * s)

    def height(u, v):
        j = p.f(u)
        return Jet2(j.value, j.d1, 0.0, j.d2, 0.0, 0.0)

    if p.kind is ProfileKind.SPACELIKE:
        x, y = cosh_col, sinh_col
    else:
        x, y = sinh_col, cosh_col
    return SurfaceJet(x, y, height, (tuple(p.u_range), tuple(v_range)), ("u", "v"), f"f(u) = {p.text}")


def rev_gauss(p: Profile, u: float) -> float:
    j = p.jet(u)
    return j.d1 * j.d2 / u


def rev_mean(p: Profile, u: float) -> float:
    j = p.jet(u)
    return 0.5 * (j.d1 / u + j.d2)


def euler_gap(p: Profile, u: float) -> float:
    """H^2 - K, which reduces to (f'/u - f'')^2 / 4."""
    j = p.jet(u)
    return 0.25 * (j.d1 / u - j.d2) ** 2


# -- closed-form families ---------------------------------------------------


@dataclass(frozen=True)
class ConstantK:
    K0: float
    c1: float = 0.0
    c2: float = 0.0
    sign: int = 1  # branch of f' = ±sqrt(c1 + K0 u^2)

    name = "constant_K"


@dataclass(frozen=True)
class ConstantH:
    H0: float
    c1: float = 0.0
    c2: float = 0.0

    name = "constant_H"


@dataclass(frozen=True)
class Flat:
    c1: float = 1.0
    c2: float = 0.0

    name = "flat"


@dataclass(frozen=True)
class Minimal:
    c1: float = 1.0
    c2: float = 0.0

    name = "minimal"


@dataclass(frozen=True)
class ParabolicSphere:
    c1: float = 2.0
    c2: float = 0.0

    name = "parabolic_sphere"


ProfileFamily = ConstantK | ConstantH | Flat | Minimal | ParabolicSphere


def family_params(fam) -> dict:
    return {k: v for k, v in fam.__dict__.items()}


def targets(fam) -> tuple[float | None, float | None]:
    """The (K, H) values a family is meant to have, None where unconstrained."""
    if isinstance(fam, ConstantK):
        return fam.K0, None
    if isinstance(fam, ConstantH):
        return None, fam.H0
    if isinstance(fam, Flat):
        return 0.0, None
    if isinstance(fam, Minimal):
        return None, 0.0
    return fam.c1 ** 2, fam.c1


def _check_radicand(fam: ConstantK, u_range):
    lo, hi = u_range
    for u in (lo, 0.5 * (lo + hi), hi):
        if not fam.c1 + fam.K0 * u * u > 0:
            raise EmptyDomain(
                f"c1 + K0 u^2 = {fam.c1 + fam.K0 * u * u!r} <= 0 at u={u!r}; "
                f"no real profile on {u_range}"
            )


def _negative_k_profile(fam: ConstantK) -> Callable[[float], Jet1]:
    k = math.sqrt(-fam.K0)
    rc = math.sqrt(fam.c1)
    sgn = fam.sign

    def f(u, order=3):
        psi2 = fam.c1 + fam.K0 * u * u
        if not psi2 > 0:
            raise DomainError(f"c1 + K0 u^2 = {psi2!r} <= 0 at u={u!r}")
        psi = math.sqrt(psi2)
        value = 0.5 * u * psi + fam.c1 / (2 * k) * math.asin(k * u / rc)
        return Jet1(
            sgn * value + fam.c2,
            sgn * psi,
            sgn * fam.K0 * u / psi,
            sgn * fam.K0 * fam.c1 / psi ** 3,
        )

    return f


def profile_expression(fam) -> str | None:
    """Closed-form f(u) as source text, or None when it needs asin."""
    r = repr
    if isinstance(fam, ConstantK):
        if fam.K0 < 0:
            return None
        psi = f"sqrt({r(fam.c1)} + {r(fam.K0)}*u^2)"
        rk = math.sqrt(fam.K0)
        body = (
            f"u/2*{psi} + {r(fam.c1 / (2 * rk))}*ln(abs({r(2 * fam.K0)}*u + {r(2 * rk)}*{psi}))"
        )
        if fam.sign < 0:
            body = f"-({body})"
        return f"{body} + {r(fam.c2)}"
    if isinstance(fam, ConstantH):
        return f"{r(fam.H0)}/2*u^2 + {r(fam.c1)}*ln(u) + {r(fam.c2)}"
    if isinstance(fam, Flat):
        return f"{r(fam.c1)}*u + {r(fam.c2)}"
    if isinstance(fam, Minimal):
        return f"{r(fam.c1)}*ln(u) + {r(fam.c2)}"
    return f"{r(fam.c1)}/2*u^2 + {r(fam.c2)}"


def solve_profile(fam, u_range, kind=ProfileKind.SPACELIKE) -> Profile:
    """Closed-form profile of a constant-curvature family on ``u_range``.

    For constant K this is the antiderivative of f' = sqrt(c1 + K0 u^2); the
    K0 < 0 branch uses the arcsine antiderivative.
    """
    u_range = tuple(float(u) for u in u_range)
    if not 0 < u_range[0] < u_range[1]:
        raise EmptyDomain(f"profile range {u_range} must satisfy 0 < lo < hi")
    if isinstance(fam, ConstantK):
        if fam.K0 == 0:
            raise InvalidParams("constant-K profiles need K0 != 0; use Flat")
        if fam.sign not in (1, -1):
            raise InvalidParams("sign must be +1 or -1")
        if fam.K0 < 0 and not fam.c1 > 0:
            raise InvalidParams("K0 < 0 requires c1 > 0")
        _check_radicand(fam, u_range)
        if fam.K0 < 0:
            text = (
                f"{fam.sign}*(u/2*sqrt({fam.c1!r} + {fam.K0!r}*u^2) + "
                f"{fam.c1 / (2 * math.sqrt(-fam.K0))!r}*asin({math.sqrt(-fam.K0)!r}*u/{math.sqrt(fam.c1)!r}))"
                f" + {fam.c2!r}"
            )
            return Profile(_negative_k_profile(fam), u_range, kind, text)
    return Profile.from_expr(profile_expression(fam), u_range, kind)


def profile_ode_oracle(fam, u_range, step=1e-3):
    """Integrate the defining ODE of ``fam`` by RK4 from its left endpoint.

    Constant K and flat profiles integrate f' = sqrt(c1 + K0 u^2) (resp. c1);
    the others integrate f'' = 2 H0 - f'/u, with f'' = f'/u for parabolic
    spheres. Returns ``(us, f)``.
    """
    prof = solve_profile(fam, u_range)
    u0 = u_range[0]
    j0 = prof.jet(u0)
    if isinstance(fam, ConstantK):

        def rhs(u, y):
            r = fam.c1 + fam.K0 * u * u
            if not r > 0:
                raise EmptyDomain(f"radicand {r!r} <= 0 at u={u!r} during integration")
            return np.array([fam.sign * math.sqrt(r)])

        us, ys = rk4(rhs, u0, [j0.value], u_range[1], step)
        return us, ys[:, 0]
    if isinstance(fam, Flat):
        us, ys = rk4(lambda u, y: np.array([fam.c1]), u0, [j0.value], u_range[1], step)
        return us, ys[:, 0]
    if isinstance(fam, ParabolicSphere):

        def rhs(u, y):
            return np.array([y[1], y[1] / u])

    else:
        h0 = fam.H0 if isinstance(fam, ConstantH) else 0.0

        def rhs(u, y):
            return np.array([y[1], 2 * h0 - y[1] / u])

    us, ys = rk4(rhs, u0, [j0.value, j0.d1], u_range[1], step)
    return us, ys[:, 0]


# -- grid verification ------------------------------------------------------


def _stats(a: np.ndarray) -> dict:
    return {"min": float(a.min()), "max": float(a.max()), "mean": float(a.mean())}


@dataclass
class FamilyReport:
    family: str
    params: dict
    grid: tuple[int, int]
    u_range: tuple[float, float]
    v_range: tuple[float, float]
    K_stats: dict
    H_stats: dict
    max_abs_K_minus_K0: float | None
    max_abs_H_minus_H0: float | None
    max_abs_H2_minus_K: float
    tol: float
    negative_control_H2_minus_K: float | None = None
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        ok = True
        for v in (self.max_abs_K_minus_K0, self.max_abs_H_minus_H0):
            if v is not None:
                ok = ok and v < self.tol
        if self.family == ParabolicSphere.name:
            ok = ok and self.max_abs_H2_minus_K < self.tol
            ok = ok and (self.negative_control_H2_minus_K or 0.0) > self.tol
        return ok

    def to_dict(self) -> dict:
        d = dict(self.__dict__)
        d["grid"] = list(self.grid)
        d["u_range"] = list(self.u_range)
        d["v_range"] = list(self.v_range)
        d["passed"] = self.passed
        return d


def sample_curvatures(sj: SurfaceJet, grid=(50, 50)):
    """(K, H) arrays of shape ``grid`` over the surface's parameter domain."""
    (u0, u1), (v0, v1) = sj.param_domain
    us = np.linspace(u0, u1, grid[0])
    vs = np.linspace(v0, v1, grid[1])
    K = np.empty(grid)
    H = np.empty(grid)
    for i, u in enumerate(us):
        for j, v in enumerate(vs):
            K[i, j], H[i, j] = curvatures(sj, (u, v))
    return us, vs, K, H


def surface_report(sj, family, params, K0, H0, grid, tol) -> FamilyReport:
    _, _, K, H = sample_curvatures(sj, grid)
    return FamilyReport(
        family=family,
        params=params,
        grid=tuple(grid),
        u_range=tuple(sj.param_domain[0]),
        v_range=tuple(sj.param_domain[1]),
        K_stats=_stats(K),
        H_stats=_stats(H),
        max_abs_K_minus_K0=None if K0 is None else float(np.max(np.abs(K - K0))),
        max_abs_H_minus_H0=None if H0 is None else float(np.max(np.abs(H - H0))),
        max_abs_H2_minus_K=float(np.max(np.abs(H * H - K))),
        tol=tol,
    )


def verify_family(fam, u_range=(1.0, 2.0), v_range=(-1.0, 1.0), grid=(50, 50), tol=1e-8,
                  epsilon=1e-3) -> FamilyReport:
    """Sweep the grid through the general K/H formulas and compare to targets.

    Parabolic spheres additionally get a negative control: the perturbed
    profile f + epsilon*u^3 must violate H^2 = K by more than ``tol``.
    """
    prof = solve_profile(fam, u_range)
    K0, H0 = targets(fam)
    report = surface_report(make_revolution(prof, v_range), fam.name, family_params(fam), K0, H0, grid, tol)
    if isinstance(fam, ConstantK) and fam.K0 < 0:
        report.notes.append("K0 < 0 uses the arcsine antiderivative (extension)")
    if isinstance(fam, ParabolicSphere):
        base = prof.f

        def perturbed(u, order=3):
            j = base(u)
            return Jet1(j.value + epsilon * u ** 3, j.d1 + 3 * epsilon * u ** 2,
                        j.d2 + 6 * epsilon * u, j.d3 + 6 * epsilon)

        bad = make_revolution(Profile(perturbed, prof.u_range, prof.kind), v_range)
        _, _, K, H = sample_curvatures(bad, grid)
        report.negative_control_H2_minus_K = float(np.max(np.abs(H * H - K)))
    return report
