"""Least-squares power-law fits of diagnostic time series.

Decay is measured against (1 + t), so a series v(t) = C (1+t)^p has slope p
in log-log coordinates from t = 0 on, with no singularity at the origin.
The fitted ``exponent`` is that slope: negative for decaying norms. Callers
comparing against predicted decay rates negate it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["FitResult", "fit_power_law", "default_fit_window"]

MIN_POINTS = 8


@dataclass(frozen=True)
class FitResult:
    """Slope of log(value) against log(1+t) over a window.

    stderr is the standard error of the slope under the usual homoskedastic
    assumptions; for diagnostic series it mostly signals how wiggly the
    window was, not a calibrated confidence.
    """

    key: str
    exponent: float
    stderr: float
    window: tuple[float, float]
    n_points: int

    def __post_init__(self) -> None:
        if self.n_points < MIN_POINTS:
            raise ValueError(
                f"a fit needs at least {MIN_POINTS} points, got {self.n_points}"
            )
        if not math.isfinite(self.exponent):
            raise ValueError(f"fitted exponent is not finite: {self.exponent!r}")
        if self.window[0] >= self.window[1]:
            raise ValueError(f"empty fit window {self.window}")


def default_fit_window(times: np.ndarray) -> tuple[float, float]:
    """The last full decade of log(1+t), but never the initial 10% of steps.

    The decade rule gives scale-free late-time windows; the step rule keeps
    short runs from fitting their transient. The later of the two lower edges
    wins.
    """
    t = np.asarray(times, dtype=np.float64)
    if t.size < 2:
        raise ValueError("need at least two sample times for a window")
    t_end = float(t[-1])
    decade_lo = (1.0 + t_end) / 10.0 - 1.0
    skip_lo = float(t[int(math.ceil(0.1 * (t.size - 1)))])
    return (max(decade_lo, skip_lo, 0.0), t_end)


def fit_power_law(
    times: np.ndarray,
    values: np.ndarray,
    window: tuple[float, float] | None = None,
    key: str = "",
) -> FitResult:
    """Fit log(values) = exponent * log(1+times) + const over the window.

    Nonpositive values inside the window are rejected (their logarithm would
    silently poison the fit); series that decay to exact zero should be
    screened by the caller before fitting.
    """
    t = np.asarray(times, dtype=np.float64)
    v = np.asarray(values, dtype=np.float64)
    if t.shape != v.shape or t.ndim != 1:
        raise ValueError("times and values must be matching 1d arrays")
    if window is None:
        window = default_fit_window(t)
    lo, hi = float(window[0]), float(window[1])
    sel = (t >= lo) & (t <= hi)
    if int(np.sum(sel)) < MIN_POINTS:
        raise ValueError(
            f"window [{lo:g}, {hi:g}] holds {int(np.sum(sel))} samples; "
            f"need at least {MIN_POINTS}"
        )
    tw, vw = t[sel], v[sel]
    if np.any(vw <= 0.0):
        bad = float(tw[np.argmax(vw <= 0.0)])
        raise ValueError(
            f"values must be positive to fit a power law; "
            f"first offender at t = {bad:g}"
        )
    x = np.log1p(tw)
    y = np.log(vw)
    xbar = float(np.mean(x))
    ybar = float(np.mean(y))
    dx = x - xbar
    sxx = float(np.dot(dx, dx))
    if sxx == 0.0:
        raise ValueError("all window times identical; cannot fit a slope")
    slope = float(np.dot(dx, y - ybar) / sxx)
    resid = y - (ybar + slope * dx)
    n = x.size
    if n > 2:
        stderr = math.sqrt(float(np.dot(resid, resid)) / (n - 2) / sxx)
    else:
        stderr = 0.0
    return FitResult(key=key, exponent=slope, stderr=stderr,
                     window=(lo, hi), n_points=int(n))
