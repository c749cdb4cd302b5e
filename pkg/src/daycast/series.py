"""Uniformly sampled scalar time series and basic manipulations.

A Series is the common currency between all model modules: an immutable
1-d array of samples plus the integer time index of the first sample.
Index arithmetic is time arithmetic; sample i lives at time t0 + i.
"""

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Series:
    """Immutable uniformly sampled signal.

    Attributes:
        values: the samples, stored as a read-only float array.
        t0: time index of the first sample (defaults to 1, so a day of
            hourly data runs t = 1..24).
        period_hint: samples per season when the signal is periodic
            (24 for hourly weather data), or None.
        unit: free-text unit label, e.g. "m/s".
    """

    values: np.ndarray
    t0: int = 1
    period_hint: int | None = None
    unit: str = ""

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("series needs a nonempty 1-d value array")
        if self.period_hint is not None and self.period_hint < 1:
            raise ValueError(f"period_hint must be positive, got {self.period_hint}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        """Time indices t0, t0+1, ... as a float array."""
        return np.arange(self.t0, self.t0 + len(self), dtype=float)

    def with_values(self, values, t0=None) -> "Series":
        """New series with the same metadata but different samples."""
        return Series(values, self.t0 if t0 is None else t0, self.period_hint, self.unit)


@dataclass(frozen=True)
class Split:
    """A series cut into a training head and a holdout tail."""

    train: Series
    holdout: Series
    D: int = field(init=False)
    F: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "D", len(self.train))
        object.__setattr__(self, "F", len(self.holdout))


def make_sine(amplitude: float, period: float, count: int, phase: float = 0.0) -> Series:
    """Sample amplitude * sin(2*pi*t/period + phase) at t = 1..count."""
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    if count < 1:
        raise ValueError(f"count must be positive, got {count}")
    t = np.arange(1, count + 1, dtype=float)
    return Series(amplitude * np.sin(2.0 * np.pi * t / period + phase), t0=1)


def split(series: Series, d: int) -> Split:
    """First d samples train, the rest hold out; concatenation restores the input."""
    if not 1 <= d < len(series):
        raise ValueError(f"train length must satisfy 1 <= D < {len(series)}, got {d}")
    train = Series(series.values[:d], series.t0, series.period_hint, series.unit)
    holdout = Series(series.values[d:], series.t0 + d, series.period_hint, series.unit)
    return Split(train, holdout)


def normalize_unit(series: Series, lo: float, hi: float) -> Series:
    """Map values affinely so [lo, hi] lands on [0, 1], clamping the rest.

    Bounds normally come from training data only; later samples outside
    the training range saturate at 0 or 1.
    """
    if hi <= lo:
        raise ValueError(f"need hi > lo, got lo={lo}, hi={hi}")
    scaled = np.clip((series.values - lo) / (hi - lo), 0.0, 1.0)
    return series.with_values(scaled)
