"""Vectors of the pseudo-isotropic 3-space and its motion group.

Points live in the affine chart (x, y, z). The top view (x, y) carries the
Lorentzian metric dx^2 - dy^2; the z direction is isotropic and is measured
only when both vectors are purely isotropic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DifferentCones, NotTimelike


@dataclass(frozen=True, slots=True)
class Vec3:
    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        for c in (self.x1, self.x2, self.x3):
            if not math.isfinite(c):
                raise ValueError(f"non-finite vector component in {self!r}")

    def __iter__(self):
        yield self.x1
        yield self.x2
        yield self.x3

    def __add__(self, other: Vec3) -> Vec3:
        return Vec3(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: Vec3) -> Vec3:
        return Vec3(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> Vec3:
        return Vec3(-self.x1, -self.x2, -self.x3)

    def __mul__(self, k: float) -> Vec3:
        return Vec3(k * self.x1, k * self.x2, k * self.x3)

    __rmul__ = __mul__

    def __truediv__(self, k: float) -> Vec3:
        return Vec3(self.x1 / k, self.x2 / k, self.x3 / k)

    def is_isotropic(self) -> bool:
        """True for nonzero vectors whose top view vanishes."""
        return self.x1 == 0.0 and self.x2 == 0.0 and self.x3 != 0.0

    def max_abs_diff(self, other: Vec3) -> float:
        return max(abs(a - b) for a, b in zip(self, other))


ZERO = Vec3(0.0, 0.0, 0.0)
XI = Vec3(0.0, 0.0, 1.0)


class CausalClass(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    LIGHTLIKE = "lightlike"
    ISOTROPIC = "isotropic"

    def __str__(self):
        return self.value


def pi_dot(u: Vec3, v: Vec3) -> float:
    """Pseudo-isotropic scalar product.

    Falls back to ``u3 * v3`` only when both top views vanish; otherwise it is
    the Lorentzian product of the top views.
    """
    if u.x1 == 0.0 and u.x2 == 0.0 and v.x1 == 0.0 and v.x2 == 0.0:
        return u.x3 * v.x3
    return u.x1 * v.x1 - u.x2 * v.x2


def top_view(u: Vec3) -> Vec3:
    return Vec3(u.x1, u.x2, 0.0)


def causal_class(u: Vec3, tol: float = 0.0) -> CausalClass:
    """Classify ``u``; the zero vector counts as spacelike.

    ``tol`` widens the lightlike band ``|<u,u>| <= tol`` for sampled data.
    """
    if u == ZERO:
        return CausalClass.SPACELIKE
    if u.x1 == 0.0 and u.x2 == 0.0:
        return CausalClass.ISOTROPIC
    q = pi_dot(u, u)
    if abs(q) <= tol:
        return CausalClass.LIGHTLIKE
    return CausalClass.SPACELIKE if q > 0 else CausalClass.TIMELIKE


def _require_timelike(*vs: Vec3) -> None:
    for v in vs:
        if causal_class(v) is not CausalClass.TIMELIKE:
            raise NotTimelike(f"{v} is {causal_class(v)}, expected timelike")


def same_timelike_cone(u: Vec3, v: Vec3) -> bool:
    _require_timelike(u, v)
    return pi_dot(u, v) < 0


def pseudo_angle(u: Vec3, v: Vec3) -> float:
    """Lorentzian angle phi >= 0 between timelike vectors of one cone.

    cosh(phi) = -<u,v>/(|u||v|). Since <u,v>^2 - <u,u><v,v> equals the
    squared top-view determinant, sinh(phi) = |det(u~, v~)|/(|u||v|); the
    asinh form avoids the sqrt-sized error of acosh near phi = 0.
    """
    if not same_timelike_cone(u, v):
        raise DifferentCones(f"{u} and {v} lie in opposite timelike cones")
    norm = math.sqrt(-pi_dot(u, u)) * math.sqrt(-pi_dot(v, v))
    return math.asinh(abs(det2(u.x1, u.x2, v.x1, v.x2)) / norm)


def det2(a1: float, a2: float, b1: float, b2: float) -> float:
    return a1 * b2 - a2 * b1


def det3(a: Vec3, b: Vec3, c: Vec3) -> float:
    """Determinant of the matrix with rows a, b, c."""
    return (
        a.x1 * (b.x2 * c.x3 - b.x3 * c.x2)
        - a.x2 * (b.x1 * c.x3 - b.x3 * c.x1)
        + a.x3 * (b.x1 * c.x2 - b.x2 * c.x1)
    )


# -- motion group -----------------------------------------------------------


@dataclass(frozen=True, slots=True)
class PiMotion:
    """Pseudo-isotropic motion in diagonal coordinates.

    Acts as a hyperbolic rotation by ``theta`` on the top view, a translation
    by ``(a, b, c)`` and a shear ``z += d*x + e*y``. The scaling ``q`` of the
    null-coordinate form is ``exp(theta)``.
    """

    theta: float = 0.0
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0
    d: float = 0.0
    e: float = 0.0

    def __call__(self, p: Vec3) -> Vec3:
        return apply_motion(self, p)

    def linear(self, v: Vec3) -> Vec3:
        """Action on difference vectors (translations dropped)."""
        ch, sh = math.cosh(self.theta), math.sinh(self.theta)
        return Vec3(
            v.x1 * ch + v.x2 * sh,
            v.x1 * sh + v.x2 * ch,
            self.d * v.x1 + self.e * v.x2 + v.x3,
        )


IDENTITY = PiMotion()


def apply_motion(m: PiMotion, p: Vec3) -> Vec3:
    ch, sh = math.cosh(m.theta), math.sinh(m.theta)
    return Vec3(
        m.a + p.x1 * ch + p.x2 * sh,
        m.b + p.x1 * sh + p.x2 * ch,
        m.c + m.d * p.x1 + m.e * p.x2 + p.x3,
    )


def _boost(theta, x, y):
    ch, sh = math.cosh(theta), math.sinh(theta)
    return x * ch + y * sh, x * sh + y * ch


def compose_motion(m1: PiMotion, m2: PiMotion) -> PiMotion:
    """Return the motion ``p -> m1(m2(p))``."""
    a, b = _boost(m1.theta, m2.a, m2.b)
    d, e = _boost(m2.theta, m1.d, m1.e)
    return PiMotion(
        theta=m1.theta + m2.theta,
        a=a + m1.a,
        b=b + m1.b,
        c=m1.c + m2.c + m1.d * m2.a + m1.e * m2.b,
        d=d + m2.d,
        e=e + m2.e,
    )


def invert_motion(m: PiMotion) -> PiMotion:
    a, b = _boost(-m.theta, m.a, m.b)
    d, e = _boost(-m.theta, m.d, m.e)
    a, b, d, e = -a, -b, -d, -e
    return PiMotion(theta=-m.theta, a=a, b=b, c=-m.c - (m.d * a + m.e * b), d=d, e=e)


# -- null coordinates -------------------------------------------------------
# In (xn, yn) = (x + y, x - y) the metric reads dxn*dyn and the hyperbolic
# rotation becomes the scaling xn -> q*xn, yn -> yn/q with q = exp(theta).


def to_null(p: Vec3) -> Vec3:
    return Vec3(p.x1 + p.x2, p.x1 - p.x2, p.x3)


def from_null(p: Vec3) -> Vec3:
    return Vec3((p.x1 + p.x2) / 2, (p.x1 - p.x2) / 2, p.x3)


def motion_from_null(a, b, c, d, e, q) -> PiMotion:
    """Build the motion written in null coordinates as

        xn' = a + q*xn,  yn' = b + yn/q,  z' = c + d*xn + e*yn + z

    Only the identity component ``q > 0`` is supported.
    """
    if not q > 0:
        raise ValueError("only orientation-preserving scalings q > 0 are motions here")
    return PiMotion(
        theta=math.log(q),
        a=(a + b) / 2,
        b=(a - b) / 2,
        c=c,
        d=d + e,
        e=d - e,
    )
