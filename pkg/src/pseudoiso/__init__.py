"""Differential geometry of pseudo-isotropic 3-space.

The ambient space carries the degenerate scalar product x1 y1 - x2 y2 on
the top view, with the z-axis isotropic.
"""

from .core import (
    IDENTITY,
    XI,
    ZERO,
    CausalClass,
    PiMotion,
    Vec3,
    apply_motion,
    causal_class,
    compose_motion,
    invert_motion,
    pi_dot,
    pseudo_angle,
    same_timelike_cone,
    top_view,
)
from .curve import (
    CurveJet,
    FrenetFrame,
    classify_curve,
    curvature,
    curve_invariants,
    frenet_frame,
    frenet_rhs,
    lightlike_plane,
    reconstruct_from_invariants,
    torsion,
)
from .expr import Jet1, Jet2, eval_jet1, eval_jet2, evaluate, parse
from .revolution import (
    ConstantH,
    ConstantK,
    Flat,
    Minimal,
    ParabolicSphere,
    Profile,
    ProfileKind,
    make_revolution,
    rev_gauss,
    rev_mean,
    solve_profile,
    verify_family,
)
from .surface import (
    SurfaceJet,
    curvatures,
    fundamental_forms,
    gauss_curvature,
    graph_xy_curvatures,
    graph_yz_curvatures,
    mean_curvature,
)

__version__ = "0.1.0"
