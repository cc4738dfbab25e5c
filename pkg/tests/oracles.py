"""Independent reference implementations used to cross-check the library.

Both oracles are deliberately naive: the AR fit is plain least squares on
the lagged design matrix, and the wavelet transform is direct summation of
the defining Riemann sum.  Neither shares code with the package.
"""

import numpy as np

TRUNC = 8.0


def ols_ar_fit(x, order: int) -> np.ndarray:
    """Least-squares AR coefficients on the demeaned series."""
    d = np.asarray(x, dtype=float)
    d = d - d.mean()
    rows = [d[order - 1 - i: len(d) - 1 - i] for i in range(order)]
    design = np.column_stack(rows)
    target = d[order:]
    coef, *_ = np.linalg.lstsq(design, target, rcond=None)
    return coef


def direct_cwt(values, dt: float, scales, omega0: float = 6.0) -> np.ndarray:
    """Brute-force transform: one windowed dot product per (time, scale)."""
    d = np.asarray(values, dtype=float)
    d = d - d.mean()
    n = len(d)
    t = np.arange(n)
    out = np.zeros((n, len(scales)), dtype=complex)
    for j, s in enumerate(scales):
        rel = s / dt
        half = int(np.ceil(TRUNC * rel))
        for i in range(n):
            lo, hi = max(0, i - half), min(n, i + half + 1)
            arg = (t[lo:hi] - i) / rel
            psi = np.pi ** -0.25 * np.exp(1j * omega0 * arg - 0.5 * arg * arg)
            out[i, j] = np.dot(d[lo:hi], np.conj(psi)) * dt / np.sqrt(s)
    return out


def ar_roots_to_coeffs(roots) -> np.ndarray:
    """Coefficients of X_t = sum a_i X_(t-i) whose companion roots are given."""
    poly = np.poly(np.asarray(roots))  # [1, c1, c2, ...]
    return -poly[1:]
