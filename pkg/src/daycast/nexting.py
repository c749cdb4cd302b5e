"""Online multi-timescale prediction with tile-coded features and TD(lambda).

Each of P signals gets its own weight and eligibility vector over one
shared sparse binary feature vector. At every step the learner emits
its current estimate of the discounted return of each signal, then
nudges the weights toward the one-step bootstrapped target. All signal
values must be normalized into [0, 1] before coding.
"""

from dataclasses import dataclass

import numpy as np

from .series import Series, normalize_unit


@dataclass(frozen=True)
class TileCoder:
    """Several uniformly offset grids over [0, 1] per signal.

    Tiling m is shifted by m / (n_tilings * tiles_per_dim), so each
    tiling contributes exactly one active tile per signal and the
    active-feature count is constant: n_tilings * n_signals, plus one
    when the always-on bias feature is included.
    """

    n_tilings: int = 8
    tiles_per_dim: int = 8
    n_signals: int = 1
    include_bias: bool = True

    def __post_init__(self):
        if min(self.n_tilings, self.tiles_per_dim, self.n_signals) < 1:
            raise ValueError("tilings, tiles and signals must all be >= 1")

    @property
    def n_features(self) -> int:
        return self.n_tilings * self.tiles_per_dim * self.n_signals + (
            1 if self.include_bias else 0)

    @property
    def n_active(self) -> int:
        return self.n_tilings * self.n_signals + (1 if self.include_bias else 0)

    def encode(self, values) -> "Features":
        return tile_features(values, self)


@dataclass(frozen=True)
class Features:
    """Sorted indices of the active binary features."""

    active: np.ndarray
    dim: int

    def __post_init__(self):
        object.__setattr__(self, "active", np.asarray(self.active, dtype=int))

    @property
    def n_active(self) -> int:
        return len(self.active)


def tile_features(values, coder: TileCoder) -> Features:
    """Encode one normalized sample of each signal; deterministic."""
    vals = np.atleast_1d(np.asarray(values, dtype=float))
    if len(vals) != coder.n_signals:
        raise ValueError(f"expected {coder.n_signals} signal values, got {len(vals)}")
    if np.any(vals < -1e-9) or np.any(vals > 1.0 + 1e-9):
        raise ValueError(f"inputs must lie in [0, 1], got {vals}")
    vals = np.clip(vals, 0.0, 1.0)
    m_grid, k = coder.n_tilings, coder.tiles_per_dim
    active = []
    for p, v in enumerate(vals):
        for m in range(m_grid):
            offset = m / (m_grid * k)
            tile = min(int((v + offset) * k), k - 1)
            active.append(p * m_grid * k + m * k + tile)
    if coder.include_bias:
        active.append(m_grid * k * coder.n_signals)
    return Features(np.sort(active), coder.n_features)


@dataclass(frozen=True)
class ReturnEstimate:
    """Truncated discounted return plus its truncation-error bound."""

    value: float
    truncation_bound: float


def ideal_return(series: Series, t: int, gamma: float, horizon: int) -> ReturnEstimate:
    """Direct discounted sum of the next `horizon` samples after time t.

    Serves as the ground-truth target that online predictions are
    compared against; the bound gamma^horizon * max|y| / (1 - gamma)
    caps what the dropped tail could contribute.
    """
    if not 0.0 <= gamma < 1.0:
        raise ValueError(f"gamma must lie in [0, 1), got {gamma}")
    if horizon < 1:
        raise ValueError(f"horizon must be >= 1, got {horizon}")
    i0 = t - series.t0
    if i0 < -1 or i0 + horizon >= len(series):
        raise ValueError(
            f"need samples at times {t + 1}..{t + horizon}, series covers "
            f"{series.t0}..{series.t0 + len(series) - 1}"
        )
    future = series.values[i0 + 1:i0 + 1 + horizon]
    value = float(np.dot(gamma ** np.arange(horizon), future))
    bound = gamma**horizon * float(np.max(np.abs(series.values))) / (1.0 - gamma)
    return ReturnEstimate(value, bound)


class NextingLearner:
    """Per-signal TD(lambda) weights over a shared tile-coded feature space.

    Single-writer mutable state: one owner advances it step by step.
    Freezing stops all weight and trace updates while predictions keep
    flowing. By default the step size is divided by the active-feature
    count (the usual tile-coding convention, making alpha a fraction of
    the one-step error corrected per update); divide_alpha=False applies
    it raw.
    """

    def __init__(self, coder: TileCoder, gamma, alpha: float, trace_lambda: float,
                 divide_alpha: bool = True):
        if alpha <= 0:
            raise ValueError(f"alpha must be positive, got {alpha}")
        if not 0.0 <= trace_lambda <= 1.0:
            raise ValueError(f"trace_lambda must lie in [0, 1], got {trace_lambda}")
        g = np.atleast_1d(np.asarray(gamma, dtype=float))
        if len(g) == 1:
            g = np.repeat(g, coder.n_signals)
        if len(g) != coder.n_signals:
            raise ValueError(f"need one gamma per signal ({coder.n_signals}), got {len(g)}")
        if np.any(g < 0) or np.any(g >= 1):
            raise ValueError(f"gamma must lie in [0, 1), got {g}")
        self.coder = coder
        self.gamma = g
        self.alpha = alpha
        self.trace_lambda = trace_lambda
        self.divide_alpha = divide_alpha
        self.theta = np.zeros((coder.n_signals, coder.n_features))
        self.e = np.zeros((coder.n_signals, coder.n_features))
        self.frozen = False

    def predict(self, feats: Features) -> np.ndarray:
        return self.theta[:, feats.active].sum(axis=1)

    def freeze(self):
        self.frozen = True


def td_step(learner: NextingLearner, phi_t: Features, phi_next: Features,
            y_next) -> np.ndarray:
    """One online update; returns the pre-update predictions at phi_t.

    The eligibility traces decay and accumulate phi_t first, then the
    weights move along them by the step size times the TD error
    y[t+1] + gamma * theta.phi[t+1] - theta.phi[t].
    """
    n = learner.coder.n_features
    if phi_t.dim != n or phi_next.dim != n:
        raise ValueError(f"feature dimension mismatch: learner has {n}, "
                         f"got {phi_t.dim} and {phi_next.dim}")
    y_next = np.atleast_1d(np.asarray(y_next, dtype=float))
    if len(y_next) != learner.coder.n_signals:
        raise ValueError(f"expected {learner.coder.n_signals} targets, got {len(y_next)}")
    preds = learner.predict(phi_t)
    if learner.frozen:
        return preds
    learner.e *= (learner.gamma * learner.trace_lambda)[:, None]
    learner.e[:, phi_t.active] += 1.0
    delta = y_next + learner.gamma * learner.predict(phi_next) - preds
    step = learner.alpha / phi_t.n_active if learner.divide_alpha else learner.alpha
    learner.theta += step * delta[:, None] * learner.e
    return preds


@dataclass(frozen=True)
class NextingRun:
    """Streamed predictions (in normalized units) plus the run's state."""

    predictions: list
    bounds: list
    learner: NextingLearner


def run_online(signals: list, coder: TileCoder, *, gamma, alpha: float,
               trace_lambda: float, freeze_after: int | None = None,
               norm_bounds: list | None = None, norm_window: int | None = None,
               divide_alpha: bool = True) -> NextingRun:
    """Stream all signals through one learner, emitting a prediction per step.

    Signals are normalized to [0, 1] with bounds taken from the first
    norm_window samples (default: one period if the signal carries a
    period hint, else the whole series), clamping afterwards; pass
    norm_bounds to pin them explicitly. With freeze_after = k the
    weights stop changing once the first k samples have been consumed.
    The whole run is a pure function of its inputs.
    """
    if len(signals) != coder.n_signals:
        raise ValueError(f"coder expects {coder.n_signals} signals, got {len(signals)}")
    n = len(signals[0])
    if any(len(s) != n for s in signals):
        raise ValueError("all signals must have equal length")
    if freeze_after is not None and freeze_after < 1:
        raise ValueError(f"freeze_after must be >= 1, got {freeze_after}")

    bounds = []
    normed = []
    for i, sig in enumerate(signals):
        if norm_bounds is not None:
            lo, hi = norm_bounds[i]
        else:
            window = norm_window or sig.period_hint or n
            head = sig.values[:min(window, n)]
            lo, hi = float(head.min()), float(head.max())
        bounds.append((lo, hi))
        normed.append(normalize_unit(sig, lo, hi).values)
    Y = np.array(normed)

    learner = NextingLearner(coder, gamma, alpha, trace_lambda, divide_alpha)
    preds = np.zeros((coder.n_signals, n))
    phi = tile_features(Y[:, 0], coder)
    for t in range(n):
        if t + 1 >= n:
            preds[:, t] = learner.predict(phi)
            break
        if freeze_after is not None and t + 1 >= freeze_after:
            learner.freeze()
        phi_next = tile_features(Y[:, t + 1], coder)
        preds[:, t] = td_step(learner, phi, phi_next, Y[:, t + 1])
        phi = phi_next

    out = [signals[i].with_values(preds[i]) for i in range(coder.n_signals)]
    return NextingRun(out, bounds, learner)


@dataclass(frozen=True)
class AlignResult:
    scale: float
    offset: float
    shift: int
    rmse: float


def align_affine(pred: Series, target: Series, max_shift: int = 0) -> AlignResult:
    """Best least-squares scale/offset of the prediction onto the target,
    searched over integer time advances 0..max_shift.

    Advancing by s compares pred[s:] against target[:n-s]. A constant
    prediction gets scale 0 and the target mean as offset. Ties in the
    residual prefer the smaller shift.
    """
    n = len(pred)
    if len(target) != n:
        raise ValueError(f"length mismatch: {n} predictions vs {len(target)} targets")
    if not 0 <= max_shift < n:
        raise ValueError(f"max_shift must lie in [0, {n - 1}], got {max_shift}")
    best: AlignResult | None = None
    for s in range(max_shift + 1):
        p = pred.values[s:]
        tg = target.values[:n - s]
        # max == min is the exact constancy test; np.var of a constant
        # array can round away from zero.
        if p.max() == p.min():
            scale, offset = 0.0, float(tg.mean())
        else:
            var = float(np.var(p))
            scale = float(np.mean((p - p.mean()) * (tg - tg.mean())) / var)
            offset = float(tg.mean() - scale * p.mean())
        resid = scale * p + offset - tg
        r = float(np.sqrt(np.mean(resid**2)))
        if best is None or r < best.rmse:
            best = AlignResult(scale, offset, s, r)
    return best
