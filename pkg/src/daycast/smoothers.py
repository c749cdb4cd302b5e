"""Natural cubic smoothing splines and Nadaraya-Watson kernel regression.

The spline minimizes squared error plus lambda times the integrated
squared second derivative. Its minimizer is a natural cubic spline with
a knot at every training point, expanded here in the truncated-cube
basis: N1 = 1, N2 = x, N_{d+2}(x) = delta_d(x) - delta_{D-1}(x) with

    delta_d(x) = ((x - k_d)_+^3 - (x - k_D)_+^3) / (k_D - k_d).

Second derivatives of this basis are piecewise linear and vanish outside
the knot range, so the penalty matrix integrates in closed form and
evaluation beyond the boundary knots extrapolates linearly for free.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve

from .errors import NoSupportError, SingularSystemError, ZeroVarianceError
from .series import Series


def _basis_matrix(knots: np.ndarray, xs: np.ndarray) -> np.ndarray:
    n_knots = len(knots)
    last = knots[-1]

    def delta(d, x):
        return (np.maximum(x - knots[d], 0.0) ** 3
                - np.maximum(x - last, 0.0) ** 3) / (last - knots[d])

    cols = [np.ones_like(xs), xs]
    tail = delta(n_knots - 2, xs)
    for d in range(n_knots - 2):
        cols.append(delta(d, xs) - tail)
    return np.column_stack(cols)


def _penalty_matrix(knots: np.ndarray) -> np.ndarray:
    """Gram matrix of basis second derivatives, integrated exactly.

    Each second derivative is piecewise linear with breakpoints at the
    knots, so on every inter-knot interval the integrand is a quadratic
    and the three-point Simpson rule is exact.
    """
    n_knots = len(knots)
    last = knots[-1]

    def d2_delta(d, x):
        return 6.0 * (np.maximum(x - knots[d], 0.0) - np.maximum(x - last, 0.0)) / (last - knots[d])

    def d2_basis(j, x):
        if j < 2:
            return np.zeros_like(x)
        return d2_delta(j - 2, x) - d2_delta(n_knots - 2, x)

    # Sample every second derivative at interval endpoints and midpoints.
    a, b = knots[:-1], knots[1:]
    mids = 0.5 * (a + b)
    ends_a = np.array([d2_basis(j, a) for j in range(n_knots)])
    ends_b = np.array([d2_basis(j, b) for j in range(n_knots)])
    mid = np.array([d2_basis(j, mids) for j in range(n_knots)])

    omega = np.zeros((n_knots, n_knots))
    w = (b - a) / 6.0
    for j in range(2, n_knots):
        for k in range(j, n_knots):
            val = np.sum(w * (ends_a[j] * ends_a[k] + 4.0 * mid[j] * mid[k] + ends_b[j] * ends_b[k]))
            omega[j, k] = omega[k, j] = val
    return omega


@dataclass(frozen=True)
class SplineFit:
    """Natural cubic smoothing spline over the training knots."""

    knots: np.ndarray
    coeffs: np.ndarray
    smooth_lambda: float

    def __post_init__(self):
        object.__setattr__(self, "knots", np.asarray(self.knots, dtype=float))
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    def predict(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = _basis_matrix(self.knots, x) @ self.coeffs
        return float(out[0]) if out.size == 1 else out


def fit_smoothing_spline(train: Series, smooth_lambda: float) -> SplineFit:
    """Penalized fit with every training point as a knot (no thinning)."""
    if smooth_lambda < 0:
        raise ValueError(f"smoothing parameter must be >= 0, got {smooth_lambda}")
    if len(train) < 4:
        raise ValueError(f"need at least 4 points, have {len(train)}")
    knots = train.times
    if np.any(np.diff(knots) <= 0):
        raise ValueError("knots must be strictly increasing and distinct")

    X = _basis_matrix(knots, knots)
    A = X.T @ X + smooth_lambda * _penalty_matrix(knots)
    rhs = X.T @ train.values
    try:
        factor = cho_factor(A)
    except LinAlgError:
        # Semidefinite degeneracy fallback: tiny diagonal jitter.
        A = A + 1e-12 * np.trace(A) * np.eye(A.shape[0])
        try:
            factor = cho_factor(A)
        except LinAlgError as exc:
            raise SingularSystemError(
                f"penalized spline system is singular (D={len(train)}, "
                f"lambda={smooth_lambda})"
            ) from exc
    return SplineFit(knots, cho_solve(factor, rhs), smooth_lambda)


def spline_predict(fit: SplineFit, x: float) -> float:
    return float(fit.predict(x))


@dataclass(frozen=True)
class KernelConfig:
    """Kernel smoother settings.

    Only the Gaussian kernel ships here; it satisfies the required
    axioms (nonnegative, zero first moment, finite positive second
    moment). The bandwidth is the kernel's scale parameter.
    """

    bandwidth: float
    kernel: str = "gaussian"

    def __post_init__(self):
        if self.bandwidth <= 0:
            raise ValueError(f"bandwidth must be positive, got {self.bandwidth}")
        if self.kernel != "gaussian":
            raise ValueError(f"unsupported kernel {self.kernel!r}")


def kernel_predict(train: Series, config: KernelConfig, x: float) -> float:
    """Nadaraya-Watson estimate: kernel-weighted average of training targets."""
    d = (float(x) - train.times) / config.bandwidth
    weights = np.exp(-0.5 * d * d) / np.sqrt(2.0 * np.pi)
    denom = weights.sum()
    if denom <= 0.0 or not np.isfinite(denom):
        raise NoSupportError(
            f"no kernel support at x={x} (all weights underflowed; "
            f"bandwidth={config.bandwidth})"
        )
    return float(weights @ train.values / denom)


def default_bandwidth(train: Series) -> float:
    """Population variance of the targets, a simple default bandwidth."""
    if len(train) < 2:
        raise ValueError("need at least 2 samples for a bandwidth estimate")
    var = float(np.var(train.values))
    if var == 0.0:
        raise ZeroVarianceError("constant series has zero variance; choose a bandwidth explicitly")
    return var
