import numpy as np

from analysis.errors import DomainError

MAX_ITERATIONS = 64


def lambert_w(x):
    """
    Principal branch of the Lambert W function on the non-negative axis.

    Returns w >= 0 with w·e^w = x. The start is log1p(x) below e and the
    two-term asymptotic expansion log x - log log x (+ log log x / log x) above
    it; Halley's iteration then converges cubically, usually in a handful of
    steps. W(0) = 0 exactly.

    Args:
        x (float | array-like): Arguments x >= 0.

    Returns:
        float | np.ndarray: W(x), a float for scalar input.

    Raises:
        DomainError: If any x is negative or NaN (the -1/e branch is not needed).
    """
    z = np.asarray(x, dtype=float)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    if np.any(np.isnan(z)) or np.any(z < 0):
        raise DomainError("lambert_w is only defined here for x >= 0")

    w = np.zeros_like(z)
    active = (z > 0) & np.isfinite(z)
    w[~np.isfinite(z)] = np.inf

    small = active & (z <= np.e)
    large = active & (z > np.e)
    w[small] = np.log1p(z[small])
    log_z = np.log(z[large])
    log_log_z = np.log(log_z)
    w[large] = log_z - log_log_z + log_log_z / log_z

    for _ in range(MAX_ITERATIONS):
        if not np.any(active):
            break
        wa = w[active]
        ew = np.exp(wa)
        f = wa * ew - z[active]
        w1 = wa + 1.0
        step = f / (ew * w1 - (wa + 2.0) * f / (2.0 * w1))
        w[active] = wa - step
        # relative criterion so tiny arguments (w ≈ x) converge to full precision
        done = np.abs(step) <= 4.0 * np.finfo(float).eps * np.abs(w[active])
        idx = np.flatnonzero(active)
        active[idx[done]] = False

    return float(w[0]) if scalar else w
