"""Classical RK4 for linear systems ``y' = A(s) y``.

Both transports are linear in their state, so one RK4 step is the matrix
``P_n`` applied to ``y_n``.  The propagators are assembled for all steps at
once from the stage matrices; only the cheap product ``y_{n+1} = P_n y_n``
runs sequentially.
"""

import numpy as np


def propagators(A0, Ah, A1, h):
    """RK4 step matrices from stage matrices at s, s + h/2, s + h (batched)."""
    eye = np.eye(A0.shape[-1])
    B1 = eye + 0.5 * h * A0
    B2 = eye + 0.5 * h * (Ah @ B1)
    B3 = eye + h * (Ah @ B2)
    return eye + (h / 6.0) * (A0 + 2.0 * (Ah @ B1) + 2.0 * (Ah @ B2) + A1 @ B3)


def run(steps, y0, project=None):
    """Apply step matrices in sequence; ``y0`` may be a vector or a matrix of columns."""
    out = np.empty((steps.shape[0] + 1,) + y0.shape)
    out[0] = y = y0
    for i, P in enumerate(steps):
        y = P @ y
        if project is not None:
            y = project(y)
        out[i + 1] = y
    return out
