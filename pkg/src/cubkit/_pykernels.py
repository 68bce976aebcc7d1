"""Pure numpy implementations of the three-term recurrence kernels.

These are the fallback used when the compiled ``_ckernels`` extension is not
available. Both modules expose the same two functions with identical
semantics; ``cubkit._backend`` picks one at import time.
"""

import numpy as np


def three_term_table(A, B, C, t):
    """Evaluate ``P_0..P_n`` at the points ``t`` from recurrence coefficients.

    The polynomials satisfy ``P_0 = 1`` and
    ``P_{k+1}(t) = (A[k] t + B[k]) P_k(t) - C[k] P_{k-1}(t)``.

    Parameters
    ----------
    A, B, C : 1-D float arrays of length n
    t : 1-D float array of evaluation points

    Returns
    -------
    ndarray of shape ``(len(t), n + 1)``
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    t = np.asarray(t, dtype=float)
    n = A.shape[0]
    out = np.empty((t.shape[0], n + 1))
    out[:, 0] = 1.0
    if n == 0:
        return out
    out[:, 1] = A[0] * t + B[0]
    for k in range(1, n):
        out[:, k + 1] = (A[k] * t + B[k]) * out[:, k] - C[k] * out[:, k - 1]
    return out


def three_term_divdiff(A, B, C, s, t):
    """Divided differences ``(P_k(s) - P_k(t)) / (s - t)`` for ``k = 0..n``.

    Computed by differencing the recurrence itself, so there is no
    cancellation as ``s -> t``; at ``s == t`` the result is ``P_k'(t)``.

    Returns
    -------
    ndarray of shape ``(len(s), n + 1)``
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    C = np.asarray(C, dtype=float)
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    n = A.shape[0]
    out = np.zeros((s.shape[0], n + 1))
    if n == 0:
        return out
    ps_prev = np.ones_like(s)
    ps = A[0] * s + B[0]
    out[:, 1] = A[0]
    for k in range(1, n):
        out[:, k + 1] = (A[k] * ps + (A[k] * t + B[k]) * out[:, k]
                         - C[k] * out[:, k - 1])
        ps, ps_prev = (A[k] * s + B[k]) * ps - C[k] * ps_prev, ps
    return out
