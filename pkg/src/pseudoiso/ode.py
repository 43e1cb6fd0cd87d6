"""Classical fixed-step fourth-order Runge-Kutta."""

import math

import numpy as np


def rk4(rhs, t0, y0, t1, step):
    """Integrate ``y' = rhs(t, y)`` from ``t0`` to ``t1``.

    The step is shrunk so that a whole number of steps lands exactly on
    ``t1``. Returns ``(ts, ys)`` with ``ys[i]`` the state at ``ts[i]``.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step!r}")
    if not t1 > t0:
        raise ValueError(f"empty integration range [{t0}, {t1}]")
    n = max(1, math.ceil((t1 - t0) / step - 1e-9))
    h = (t1 - t0) / n
    ts = t0 + h * np.arange(n + 1)
    ts[-1] = t1
    y = np.asarray(y0, dtype=float)
    ys = np.empty((n + 1,) + y.shape)
    ys[0] = y
    for i in range(n):
        t = ts[i]
        k1 = rhs(t, y)
        k2 = rhs(t + h / 2, y + h / 2 * k1)
        k3 = rhs(t + h / 2, y + h / 2 * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        ys[i + 1] = y
    return ts, ys
