"""Vertical weights [x2]^gamma, weighted norms, and Muckenhoupt diagnostics.

The bracket weight is the truncated power: [x] = 1 for |x| <= 1 and |x|
beyond. It is bounded away from zero near the origin, so every exponent gives
a locally integrable weight and the interesting behavior is all at large x2.
Weighted estimates for the double Riesz transforms hold exactly in the
Muckenhoupt range kappa in (-1, 1); outside it the a2_constant diverges with
the box and the operator ratio follows, which is what the negative controls
in the inequality suite exercise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Grid2D, RealField2D, forward_transform, inverse_transform
from .operators import riesz_transform

__all__ = [
    "truncated_power",
    "weight_samples",
    "weighted_l2",
    "a2_constant",
    "WeightedOpRatio",
    "weighted_operator_ratio",
    "shell_weighted_mass_fraction",
    "RIESZ_PAIRS",
]

RIESZ_PAIRS = ("R1R1", "R1R2", "R2R2")


def truncated_power(x: np.ndarray, gamma: float) -> np.ndarray:
    """[x]^gamma with [x] = max(|x|, 1)."""
    if not math.isfinite(gamma):
        raise ValueError(f"gamma must be finite, got {gamma!r}")
    ax = np.abs(np.asarray(x, dtype=np.float64))
    return np.maximum(ax, 1.0) ** gamma


def weight_samples(grid: Grid2D, gamma: float) -> np.ndarray:
    """[x2]^gamma sampled on the grid's x2 axis, shaped (1, n2) for broadcast.

    The box must be wide enough (l2 > 2) that the flat core |x2| <= 1 sits
    strictly inside it; otherwise the truncation never matters and weighted
    quantities silently degenerate to unweighted ones.
    """
    if grid.l2 <= 2.0:
        raise ValueError(
            f"vertical box length must exceed 2 for the truncated weight, "
            f"got l2 = {grid.l2}"
        )
    return truncated_power(grid.x2, gamma)[None, :]


def weighted_l2(field: RealField2D, gamma: float) -> float:
    """|| [x2]^gamma f ||_{L^2} by quadrature."""
    w = weight_samples(field.grid, gamma)
    return float(
        np.sqrt(field.grid.cell_area * np.sum(field.samples**2 * w**2))
    )


def _bracket_antiderivative(x: np.ndarray, kappa: float) -> np.ndarray:
    """Antiderivative of t -> [t]^kappa, odd in x, vanishing at 0."""
    ax = np.abs(x)
    if kappa == -1.0:
        outer = 1.0 + np.log(np.maximum(ax, 1.0))
    else:
        outer = 1.0 + (np.maximum(ax, 1.0) ** (kappa + 1.0) - 1.0) / (kappa + 1.0)
    return np.sign(x) * np.where(ax <= 1.0, ax, outer)


def a2_constant(
    grid: Grid2D,
    kappa: float,
    j_min: int | None = None,
    j_max: int | None = None,
) -> float:
    """Muckenhoupt product sup_I avg_I([x]^kappa) avg_I([x]^-kappa) on the x2 line.

    The supremum runs over dyadic-radius intervals 2^j centered at every grid
    point of the x2 axis and at the origin. By default the radii span the
    resolved scales, from twice the grid spacing up to the half-box. That
    makes the two regimes distinguishable: inside the Muckenhoupt range the
    value stabilizes as the grid refines (small intervals see a flat or
    mildly kinked weight), while outside it the value keeps growing as the
    box, and with it the largest admissible interval, doubles.

    Interval averages use the exact piecewise antiderivative of the truncated
    power, so there is no quadrature error, only the choice of centers and
    radii.
    """
    if kappa == 0.0:
        return 1.0
    if j_min is None:
        j_min = math.ceil(math.log2(2.0 * grid.h2))
    if j_max is None:
        j_max = math.floor(math.log2(0.5 * grid.l2))
    if j_min > j_max:
        raise ValueError(
            f"empty radius range: j_min = {j_min} > j_max = {j_max} "
            "(is the box long enough in x2?)"
        )
    centers = np.concatenate([grid.x2, [0.0]])
    best = 0.0
    for j in range(j_min, j_max + 1):
        r = 2.0**j
        a, b = centers - r, centers + r
        avg_w = (
            _bracket_antiderivative(b, kappa) - _bracket_antiderivative(a, kappa)
        ) / (b - a)
        avg_winv = (
            _bracket_antiderivative(b, -kappa) - _bracket_antiderivative(a, -kappa)
        ) / (b - a)
        best = max(best, float(np.max(avg_w * avg_winv)))
    return best


@dataclass(frozen=True)
class WeightedOpRatio:
    """Ratio of weighted squared masses of Tf against f, or a degeneracy flag."""

    ratio: float
    numerator: float
    denominator: float
    degenerate: bool

    def __post_init__(self) -> None:
        if not self.degenerate and self.ratio < 0:
            raise ValueError("weighted ratio cannot be negative")


def weighted_operator_ratio(
    field: RealField2D, pair: str, kappa: float
) -> WeightedOpRatio:
    """integral |Tf|^2 [x2]^kappa dx over integral |f|^2 [x2]^kappa dx.

    T is a composition of two Riesz transforms named by ``pair`` (one of
    R1R1, R1R2, R2R2). A vanishing weighted mass of f makes the ratio
    meaningless and is reported as degenerate rather than raised, since
    randomized sweeps legitimately produce near-zero samples.
    """
    if pair not in RIESZ_PAIRS:
        raise ValueError(f"pair must be one of {RIESZ_PAIRS}, got {pair!r}")
    grid = field.grid
    w = weight_samples(grid, kappa)
    denominator = float(grid.cell_area * np.sum(field.samples**2 * w))
    spectral = forward_transform(field)
    first = riesz_transform(spectral, axis=0 if pair[1] == "1" else 1)
    second = riesz_transform(first, axis=0 if pair[3] == "1" else 1)
    tf = inverse_transform(second)
    numerator = float(grid.cell_area * np.sum(tf.samples**2 * w))
    scale = float(grid.cell_area * np.sum(field.samples**2))
    if denominator <= 1e-28 * max(scale, 1e-300):
        return WeightedOpRatio(math.nan, numerator, denominator, True)
    return WeightedOpRatio(numerator / denominator, numerator, denominator, False)


def shell_weighted_mass_fraction(
    field: RealField2D, gamma: float, shell: float = 0.05
) -> float:
    """Share of the weighted mass carried by the outermost vertical shell.

    Enveloped families must keep this below 1e-8, otherwise the periodic box
    is standing in for the plane badly and weighted norms are box artifacts.
    """
    if not (0.0 < shell < 1.0):
        raise ValueError(f"shell fraction must lie in (0, 1), got {shell!r}")
    grid = field.grid
    w = weight_samples(grid, gamma)
    mass = field.samples**2 * w**2
    outer = np.abs(grid.x2)[None, :] > (1.0 - shell) * 0.5 * grid.l2
    total = float(np.sum(mass))
    if total == 0.0:
        return 0.0
    return float(np.sum(np.where(outer, mass, 0.0)) / total)
