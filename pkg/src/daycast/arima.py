"""Seasonal ARIMA modeling on top of the lag-operator difference equation.

A model multiplies four operator polynomials in the backshift B:

    phi_p(B) * PHI_P(B^s) * (1 - B)^d * (1 - B^s)^D  on the AR side,
    theta_q(B) * THETA_Q(B^s)                        on the MA side,

each written with the sign convention 1 - c_1 B - c_2 B^2 - ... .
Expanding the products gives a single difference equation

    y[t] = sum_j phi~_j y[t-j] + const + a[t] - sum_j theta~_j a[t-j]

used three ways: to reconstruct shocks a[t] from data (with pre-sample
shocks and pre-sample differenced values fixed to zero), to estimate
parameters by minimizing the conditional sum of squared shocks, and to
forecast by taking conditional expectations with future shocks zeroed.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.signal import lfilter

from .errors import EstimationError, InstabilityError, ZeroVarianceError
from .series import Series

_UNIT_ROOT_TOL = 1e-8


@dataclass(frozen=True)
class ArimaOrder:
    """Non-seasonal orders (p, d, q) plus an optional seasonal block (P, D, Q, s)."""

    p: int
    d: int
    q: int
    seasonal: tuple[int, int, int, int] | None = None

    def __post_init__(self):
        if min(self.p, self.d, self.q) < 0:
            raise ValueError(f"orders must be >= 0, got {(self.p, self.d, self.q)}")
        if self.seasonal is not None:
            P, D, Q, s = self.seasonal
            if min(P, D, Q) < 0:
                raise ValueError(f"seasonal orders must be >= 0, got {(P, D, Q)}")
            if s < 2:
                raise ValueError(f"seasonality must be >= 2, got {s}")

    @property
    def seasonal_or_zero(self) -> tuple[int, int, int, int]:
        """(P, D, Q, s) with a dummy s = 1 when no seasonal block is present."""
        return self.seasonal if self.seasonal is not None else (0, 0, 0, 1)

    @property
    def n_params(self) -> int:
        P, _, Q, _ = self.seasonal_or_zero
        return self.p + self.q + P + Q


@dataclass(frozen=True)
class ArimaModel:
    """Fitted or hand-built model coefficients.

    phi/theta are the non-seasonal AR/MA coefficients, sphi/stheta the
    seasonal ones. theta0 is the deterministic drift constant of the
    difference equation; mu is the mean of the differenced series (for
    pure ARMA fits this is the series mean removed before estimation).
    warnings flags non-stationary or non-invertible estimates; they are
    reported, not enforced, because unit-circle AR roots are legitimate
    for deterministic signals. fit_trace records the best objective seen
    at each optimizer iteration.
    """

    order: ArimaOrder
    phi: np.ndarray
    theta: np.ndarray
    sphi: np.ndarray
    stheta: np.ndarray
    theta0: float = 0.0
    sigma2: float = 0.0
    mu: float = 0.0
    warnings: tuple[str, ...] = ()
    fit_trace: tuple[float, ...] = ()

    def __post_init__(self):
        P, _, Q, _ = self.order.seasonal_or_zero
        for name, arr, want in (("phi", self.phi, self.order.p),
                                ("theta", self.theta, self.order.q),
                                ("sphi", self.sphi, P),
                                ("stheta", self.stheta, Q)):
            a = np.asarray(arr, dtype=float)
            if len(a) != want:
                raise ValueError(f"{name} must have length {want}, got {len(a)}")
            object.__setattr__(self, name, a)
        if self.sigma2 < 0:
            raise ValueError(f"sigma2 must be >= 0, got {self.sigma2}")


@dataclass(frozen=True)
class ExpandedForm:
    """Difference-equation coefficients after multiplying out all operators.

    ar_full[j-1] is the coefficient phi~_j on y[t-j] (lags 1..p+d+s*P+s*D);
    ma_full[j-1] is theta~_j on a[t-j] (lags 1..q+s*Q).
    """

    ar_full: np.ndarray
    ma_full: np.ndarray


def _op_poly(coeffs, s: int = 1) -> np.ndarray:
    """1 - c1 B^s - c2 B^2s - ... as an ascending coefficient array."""
    coeffs = np.asarray(coeffs, dtype=float)
    out = np.zeros(len(coeffs) * s + 1)
    out[0] = 1.0
    for i, c in enumerate(coeffs, start=1):
        out[i * s] = -c
    return out


def _diff_poly(n: int, s: int = 1) -> np.ndarray:
    """(1 - B^s)^n as an ascending coefficient array."""
    base = np.zeros(s + 1)
    base[0], base[s] = 1.0, -1.0
    out = np.array([1.0])
    for _ in range(n):
        out = np.convolve(out, base)
    return out


def _stationary_poly(model: ArimaModel) -> np.ndarray:
    _, _, _, s = model.order.seasonal_or_zero
    return np.convolve(_op_poly(model.phi), _op_poly(model.sphi, s))


def _ma_poly(model: ArimaModel) -> np.ndarray:
    _, _, _, s = model.order.seasonal_or_zero
    return np.convolve(_op_poly(model.theta), _op_poly(model.stheta, s))


def _full_ar_poly(model: ArimaModel) -> np.ndarray:
    _, D, _, s = model.order.seasonal_or_zero
    poly = np.convolve(_stationary_poly(model), _diff_poly(model.order.d))
    return np.convolve(poly, _diff_poly(D, s))


def expand_polynomials(model: ArimaModel) -> ExpandedForm:
    """Multiply out both operator products into flat lag coefficients."""
    return ExpandedForm(ar_full=-_full_ar_poly(model)[1:], ma_full=-_ma_poly(model)[1:])


def difference(series: Series, d: int, s_pair: tuple[int, int] | None = None) -> Series:
    """Apply (1-B)^d then (1-B^s)^D; the output is shorter by d + s*D samples."""
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    s, D = (1, 0) if s_pair is None else s_pair
    if s_pair is not None and (s < 2 or D < 0):
        raise ValueError(f"seasonal pair needs s >= 2 and D >= 0, got {s_pair}")
    drop = d + s * D
    if len(series) <= drop:
        raise ValueError(f"series of length {len(series)} too short to difference by {drop}")
    v = series.values
    for _ in range(d):
        v = v[1:] - v[:-1]
    for _ in range(D):
        v = v[s:] - v[:-s]
    return series.with_values(v, t0=series.t0 + drop)


def _css_shocks(zc: np.ndarray, ar_poly: np.ndarray, ma_poly: np.ndarray) -> np.ndarray:
    # a[t] = zc[t] - sum phi~ zc[t-i] + sum theta~ a[t-j]; lfilter's zero
    # initial state is exactly the zero pre-sample convention.
    return lfilter(ar_poly, ma_poly, zc)


def _min_root_magnitude(poly: np.ndarray) -> float:
    trimmed = np.trim_zeros(np.asarray(poly, dtype=float), "b")
    if len(trimmed) <= 1:
        return np.inf
    return float(np.min(np.abs(np.roots(trimmed[::-1]))))


def _yule_walker(z: np.ndarray, p: int) -> np.ndarray:
    if p == 0:
        return np.zeros(0)
    zc = z - z.mean()
    n = len(z)
    c0 = float(zc @ zc) / n
    if c0 <= 0:
        return np.zeros(p)
    r = np.array([float(zc[:-k] @ zc[k:]) / n / c0 for k in range(1, p + 1)])
    R = np.empty((p, p))
    for i in range(p):
        for j in range(p):
            k = abs(i - j)
            R[i, j] = 1.0 if k == 0 else r[k - 1]
    try:
        return np.linalg.solve(R, r)
    except np.linalg.LinAlgError:
        return np.zeros(p)


def _split_params(params: np.ndarray, order: ArimaOrder):
    p, q = order.p, order.q
    P, _, Q, _ = order.seasonal_or_zero
    return (params[:p], params[p:p + q],
            params[p + q:p + q + P], params[p + q + P:p + q + P + Q])


def css_estimate(series: Series, order: ArimaOrder, init=None, *,
                 with_drift: bool = False, max_iterations: int | None = None) -> ArimaModel:
    """Estimate coefficients by conditional sum of squares.

    The differenced series is centered (by its mean for pure ARMA, or
    when with_drift is set), shocks are computed recursively with zero
    pre-sample values, and sum(a^2) is minimized by Nelder-Mead from a
    Yule-Walker start for the AR side and zeros elsewhere. The budget
    defaults to 500 iterations per free parameter.

    Raises EstimationError (carrying the best model and objective so
    far) if the simplex exhausts its budget without converging.
    """
    P, D, Q, s = order.seasonal_or_zero
    z = difference(series, order.d, (s, D) if order.seasonal else None).values
    m = len(z)
    needed = 3 * (order.n_params + 1)
    if m < needed:
        raise ValueError(
            f"differenced length {m} too short for {order.n_params} parameters "
            f"(need at least {needed})"
        )
    mu_z = float(z.mean())
    center = mu_z if (order.d + D == 0 or with_drift) else 0.0
    zc = z - center

    def build(params, sigma2, trace):
        phi, theta, sphi, stheta = _split_params(np.asarray(params, dtype=float), order)
        model = ArimaModel(order, phi, theta, sphi, stheta,
                           theta0=0.0, sigma2=sigma2, mu=mu_z, fit_trace=tuple(trace))
        warns = []
        if _min_root_magnitude(_stationary_poly(model)) <= 1.0 + _UNIT_ROOT_TOL:
            warns.append("AR polynomial has a root on or inside the unit circle (non-stationary)")
        if _min_root_magnitude(_ma_poly(model)) <= 1.0 + _UNIT_ROOT_TOL:
            warns.append("MA polynomial has a root on or inside the unit circle (non-invertible)")
        theta0 = center * float(_stationary_poly(model).sum()) if (order.d + D > 0 and with_drift) else 0.0
        return ArimaModel(order, phi, theta, sphi, stheta, theta0=theta0,
                          sigma2=sigma2, mu=mu_z, warnings=tuple(warns),
                          fit_trace=tuple(trace))

    def objective(params):
        phi, theta, sphi, stheta = _split_params(params, order)
        ar = np.convolve(_op_poly(phi), _op_poly(sphi, s))
        ma = np.convolve(_op_poly(theta), _op_poly(stheta, s))
        a = _css_shocks(zc, ar, ma)
        if not np.all(np.isfinite(a)):
            return 1e300
        return float(a @ a)

    if order.n_params == 0:
        obj = objective(np.zeros(0))
        return build(np.zeros(0), obj / m, [obj])

    if init is not None:
        x0 = np.asarray(init, dtype=float)
        if len(x0) != order.n_params:
            raise ValueError(f"init must have length {order.n_params}, got {len(x0)}")
    else:
        x0 = np.zeros(order.n_params)
        x0[:order.p] = _yule_walker(zc, order.p)

    best = [min(objective(x0), 1e300)]
    trace = [best[0]]

    def tracked(params):
        val = objective(params)
        if val < best[0]:
            best[0] = val
        return val

    maxiter = max_iterations if max_iterations is not None else 500 * order.n_params
    result = minimize(
        tracked, x0, method="Nelder-Mead",
        callback=lambda xk: trace.append(best[0]),
        options={"xatol": 1e-10, "fatol": 1e-14,
                 "maxiter": maxiter, "maxfev": 2 * maxiter},
    )
    model = build(result.x, result.fun / m, trace)
    if not result.success:
        raise EstimationError(
            f"CSS simplex did not converge within {maxiter} iterations "
            f"(final objective {result.fun:.6g})",
            model=model, objective=float(result.fun),
        )
    return model


def _center_of(model: ArimaModel) -> float:
    _, D, _, _ = model.order.seasonal_or_zero
    if model.order.d + D == 0:
        return model.mu
    if model.theta0 == 0.0:
        return 0.0
    stat1 = float(_stationary_poly(model).sum())
    return model.theta0 / stat1 if stat1 != 0.0 else 0.0


def forecast(model: ArimaModel, history: Series, lead: int) -> Series:
    """Minimum-MSE forecasts by iterating the expanded difference equation.

    Known samples and reconstructed in-sample shocks feed the recursion;
    future shocks are zero and intermediate future values are the
    previously computed conditional expectations.
    """
    if lead < 1:
        raise ValueError(f"lead must be >= 1, got {lead}")
    _, D, _, s = model.order.seasonal_or_zero
    drop = model.order.d + s * D
    form = expand_polynomials(model)
    n = len(history)
    if n < max(len(form.ar_full), drop + 1):
        raise ValueError(
            f"history of length {n} too short for AR lags up to {len(form.ar_full)}"
        )

    center = _center_of(model)
    theta0_eff = center * float(_stationary_poly(model).sum())
    z = difference(history, model.order.d, (s, D) if model.order.seasonal else None).values
    shocks = _css_shocks(z - center, _stationary_poly(model), _ma_poly(model))

    phis, thetas = form.ar_full, form.ma_full
    ye = np.concatenate([history.values, np.zeros(lead)])
    # Pre-pad so MA lags reaching before the first sample read the
    # conventional zero pre-sample shocks instead of wrapping.
    pad = len(thetas)
    ae = np.concatenate([np.zeros(pad + drop), shocks, np.zeros(lead)])
    for i in range(n, n + lead):
        val = theta0_eff
        for j in range(1, len(phis) + 1):
            val += phis[j - 1] * ye[i - j]
        for j in range(1, len(thetas) + 1):
            val -= thetas[j - 1] * ae[pad + i - j]
        ye[i] = val
    return history.with_values(ye[n:], t0=history.t0 + n)


def acf_pacf(series: Series, max_lag: int) -> tuple[np.ndarray, np.ndarray]:
    """Sample autocorrelation and partial autocorrelation up to max_lag.

    Both arrays have length max_lag + 1 with index 0 fixed at 1. The
    PACF comes from the Durbin-Levinson recursion on the ACF.
    """
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= len(series):
        raise ValueError(f"max_lag {max_lag} must be below the series length {len(series)}")
    yc = series.values - series.values.mean()
    n = len(yc)
    c0 = float(yc @ yc) / n
    if c0 == 0.0:
        raise ZeroVarianceError("autocorrelation is undefined for a constant series")
    acf = np.empty(max_lag + 1)
    acf[0] = 1.0
    for k in range(1, max_lag + 1):
        acf[k] = float(yc[:-k] @ yc[k:]) / n / c0

    pacf = np.empty(max_lag + 1)
    pacf[0] = 1.0
    prev = np.zeros(0)
    for k in range(1, max_lag + 1):
        num = acf[k] - float(prev @ acf[1:k][::-1]) if k > 1 else acf[1]
        den = 1.0 - float(prev @ acf[1:k]) if k > 1 else 1.0
        phi_kk = num / den if den != 0.0 else 0.0
        cur = np.empty(k)
        cur[k - 1] = phi_kk
        if k > 1:
            cur[:k - 1] = prev - phi_kk * prev[::-1]
        pacf[k] = phi_kk
        prev = cur
    return acf, pacf


def simulate(model: ArimaModel, n: int, seed: int) -> Series:
    """Draw a sample path; deterministic for a fixed seed.

    Shocks are i.i.d. Gaussian with variance sigma2, filtered through
    the model after a discarded burn-in. Stationary models (d = D = 0)
    must have all AR roots outside the unit circle.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _, D, _, s = model.order.seasonal_or_zero
    ar, ma = _stationary_poly(model), _ma_poly(model)
    if model.order.d + D == 0 and _min_root_magnitude(ar) <= 1.0 + _UNIT_ROOT_TOL:
        raise InstabilityError(
            "AR root on or inside the unit circle; a stationary simulation would diverge"
        )
    burn = 100 + 10 * (len(ar) + len(ma))
    rng = np.random.default_rng(seed)
    shocks = rng.standard_normal(n + burn) * np.sqrt(model.sigma2)
    z = lfilter(ma, ar, shocks)[burn:] + _center_of(model)
    for _ in range(D):
        out = z.copy()
        for t in range(s, len(out)):
            out[t] += out[t - s]
        z = out
    for _ in range(model.order.d):
        z = np.cumsum(z)
    return Series(z, t0=1)
