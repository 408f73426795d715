"""Spectral fields on a periodic rectangle and anisotropic Fourier calculus.

Everything downstream (velocity operators, the time stepper, the inequality
suite) is built on the conventions frozen here:

* the box is centered, ``x_i in [-l_i/2, l_i/2)``, sampled on ``n_i`` points;
* a real field is represented either by its samples or by coefficients
  ``c_m`` of the expansion ``f(x) = sum_m c_m exp(i xi_m . x)`` with
  ``xi_m = 2 pi m / l`` and integer modes ``m in [-n/2, n/2)``;
* Parseval holds exactly in quadrature:
  ``integral |f|^2 dx = l1 l2 sum_m |c_m|^2``.

Coefficients are stored for the centered basis, so synthesizing a field from
a table of physical wavenumbers and amplitudes gives the same function no
matter which grid resolves it. That property is what makes the
resolution-doubling checks in the inequality suite meaningful.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "Grid2D",
    "RealField2D",
    "SpectralField2D",
    "MixedNormSpec",
    "ZeroModePolicy",
    "forward_transform",
    "inverse_transform",
    "apply_symbol",
    "lambda1_pow",
    "lambda_pow",
    "partial_derivative",
    "dealias_two_thirds",
    "l2_norm",
    "inner_product",
    "mixed_norm",
    "sobolev_norm",
    "neg_horizontal_sobolev_norm",
    "hermitian_defect",
]


@dataclass(frozen=True)
class Grid2D:
    """Uniform grid on the centered periodic box [-l1/2, l1/2) x [-l2/2, l2/2).

    Axis 0 of every sample or coefficient array is x1, axis 1 is x2.
    """

    n1: int
    n2: int
    l1: float
    l2: float

    def __post_init__(self) -> None:
        for name, n in (("n1", self.n1), ("n2", self.n2)):
            if not isinstance(n, (int, np.integer)) or n < 4 or n % 2 != 0:
                raise ValueError(f"{name} must be an even integer >= 4, got {n!r}")
        for name, l in (("l1", self.l1), ("l2", self.l2)):
            if not (math.isfinite(l) and l > 0):
                raise ValueError(f"{name} must be positive and finite, got {l!r}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n1, self.n2)

    @property
    def h1(self) -> float:
        return self.l1 / self.n1

    @property
    def h2(self) -> float:
        return self.l2 / self.n2

    @property
    def cell_area(self) -> float:
        return self.h1 * self.h2

    @cached_property
    def x1(self) -> np.ndarray:
        return -0.5 * self.l1 + self.h1 * np.arange(self.n1)

    @cached_property
    def x2(self) -> np.ndarray:
        return -0.5 * self.l2 + self.h2 * np.arange(self.n2)

    @cached_property
    def m1(self) -> np.ndarray:
        """Integer mode numbers along axis 0, in FFT storage order."""
        return np.rint(np.fft.fftfreq(self.n1) * self.n1).astype(np.int64)

    @cached_property
    def m2(self) -> np.ndarray:
        return np.rint(np.fft.fftfreq(self.n2) * self.n2).astype(np.int64)

    @cached_property
    def xi1(self) -> np.ndarray:
        """Physical wavenumbers 2 pi m / l1 along axis 0 (1d, FFT order)."""
        return 2.0 * np.pi * self.m1 / self.l1

    @cached_property
    def xi2(self) -> np.ndarray:
        return 2.0 * np.pi * self.m2 / self.l2

    @cached_property
    def xi1_col(self) -> np.ndarray:
        """xi1 shaped (n1, 1) for broadcasting against coefficient arrays."""
        return self.xi1[:, None]

    @cached_property
    def xi2_row(self) -> np.ndarray:
        return self.xi2[None, :]

    @cached_property
    def centered_phase(self) -> np.ndarray:
        """(-1)^(m1+m2), the exact phase shift of the centered coordinates."""
        s1 = np.where(self.m1 % 2 == 0, 1.0, -1.0)
        s2 = np.where(self.m2 % 2 == 0, 1.0, -1.0)
        return s1[:, None] * s2[None, :]

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        """True on modes kept by the two-thirds rule (|m_i| <= n_i/3)."""
        keep1 = np.abs(self.m1) <= self.n1 / 3.0
        keep2 = np.abs(self.m2) <= self.n2 / 3.0
        return keep1[:, None] & keep2[None, :]

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        """Sample coordinates as broadcastable (n1,1) and (1,n2) arrays."""
        return self.x1[:, None], self.x2[None, :]


def _check_grid_match(a, b) -> None:
    if a.grid != b.grid:
        raise ValueError("fields live on different grids")


@dataclass(frozen=True)
class RealField2D:
    """Real samples of a field on a Grid2D. Arrays are copied and locked."""

    grid: Grid2D
    samples: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.samples, dtype=np.float64, copy=True)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"samples shape {arr.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("samples contain non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "samples", arr)


@dataclass(frozen=True)
class SpectralField2D:
    """Centered-basis Fourier coefficients of a real field, FFT storage order."""

    grid: Grid2D
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.coeffs, dtype=np.complex128, copy=True)
        if arr.shape != self.grid.shape:
            raise ValueError(
                f"coeffs shape {arr.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("coefficients contain non-finite values")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)


class ZeroModePolicy(enum.Enum):
    """What a fractional power does on the modes where its symbol vanishes."""

    PROJECT_OUT = "project-out"
    KEEP_UNCHANGED = "keep-unchanged"


@dataclass(frozen=True)
class MixedNormSpec:
    """Exponents for an L^p1_x1 L^p2_x2 norm and the reduction order.

    ``reduce_x1_first=True`` means the x1 integral is the inner one: for each
    x2 the x1 norm is taken first, then the x2 norm of the resulting profile.
    Use ``math.inf`` for a sup norm in either slot.
    """

    p1: float
    p2: float
    reduce_x1_first: bool = True

    def __post_init__(self) -> None:
        for name, p in (("p1", self.p1), ("p2", self.p2)):
            if not (p >= 1.0):
                raise ValueError(f"{name} must satisfy p >= 1 (or inf), got {p!r}")


def forward_transform(field: RealField2D) -> SpectralField2D:
    grid = field.grid
    raw = np.fft.fft2(field.samples) / (grid.n1 * grid.n2)
    return SpectralField2D(grid, raw * grid.centered_phase)


def inverse_transform(spectral: SpectralField2D) -> RealField2D:
    """Synthesize samples, validating Hermitian symmetry before dropping imag."""
    grid = spectral.grid
    z = np.fft.ifft2(spectral.coeffs * grid.centered_phase) * (grid.n1 * grid.n2)
    scale = float(np.max(np.abs(z)))
    defect = float(np.max(np.abs(z.imag)))
    if defect > 1e-8 * max(scale, 1e-300):
        raise ValueError(
            "coefficients are not Hermitian-symmetric "
            f"(imaginary residue {defect:.3e} vs field scale {scale:.3e})"
        )
    return RealField2D(grid, z.real)


def hermitian_defect(spectral: SpectralField2D) -> float:
    """Max |c(m) - conj(c(-m))| over the coefficient array (0 for real fields)."""
    c = spectral.coeffs
    mirrored = np.conj(c[np.ix_(-np.arange(c.shape[0]) % c.shape[0],
                                -np.arange(c.shape[1]) % c.shape[1])])
    return float(np.max(np.abs(c - mirrored)))


def apply_symbol(spectral: SpectralField2D, symbol: np.ndarray) -> SpectralField2D:
    """Multiply coefficients by a Fourier symbol sampled on the mode lattice.

    The symbol must be finite everywhere; a non-finite entry is reported with
    the wavenumber it sits on, which is usually a sign that a negative power
    was built without projecting its zero set first.
    """
    grid = spectral.grid
    sym = np.broadcast_to(np.asarray(symbol), grid.shape)
    bad = ~np.isfinite(sym)
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise ValueError(
            f"symbol is not finite at mode (m1={grid.m1[i]}, m2={grid.m2[j]}), "
            f"wavenumber ({grid.xi1[i]:.6g}, {grid.xi2[j]:.6g})"
        )
    return SpectralField2D(grid, spectral.coeffs * sym)


def lambda1_pow(
    spectral: SpectralField2D,
    a: float,
    policy: ZeroModePolicy = ZeroModePolicy.KEEP_UNCHANGED,
) -> SpectralField2D:
    """|xi1|^a multiplier (horizontal fractional derivative, or integral for a<0).

    The xi1 = 0 column is the symbol's zero set: for a > 0 those modes are
    annihilated, for a = 0 the operator is the identity there, and for a < 0
    the modes must be projected out (policy PROJECT_OUT), since |0|^a is not
    defined. PROJECT_OUT zeroes the column regardless of the sign of a.
    """
    grid = spectral.grid
    zero_col = grid.m1 == 0
    if a < 0 and policy is not ZeroModePolicy.PROJECT_OUT:
        raise ValueError(
            "negative horizontal power requires ZeroModePolicy.PROJECT_OUT "
            "(the xi1 = 0 column is in the symbol's kernel)"
        )
    absxi = np.abs(grid.xi1)
    with np.errstate(divide="ignore"):
        sym1 = np.where(zero_col, 0.0 if a > 0 else 1.0, np.power(absxi, a))
    if policy is ZeroModePolicy.PROJECT_OUT:
        sym1 = np.where(zero_col, 0.0, sym1)
    return apply_symbol(spectral, sym1[:, None])


def lambda_pow(
    spectral: SpectralField2D,
    a: float,
    policy: ZeroModePolicy = ZeroModePolicy.KEEP_UNCHANGED,
) -> SpectralField2D:
    """|xi|^a multiplier; the zero set is the single (0,0) mode."""
    grid = spectral.grid
    if a < 0 and policy is not ZeroModePolicy.PROJECT_OUT:
        raise ValueError(
            "negative isotropic power requires ZeroModePolicy.PROJECT_OUT "
            "(the (0,0) mode is in the symbol's kernel)"
        )
    mag = np.hypot(grid.xi1_col, grid.xi2_row)
    zero = mag == 0.0
    with np.errstate(divide="ignore"):
        sym = np.where(zero, 0.0 if a > 0 else 1.0, np.power(mag, a))
    if policy is ZeroModePolicy.PROJECT_OUT:
        sym = np.where(zero, 0.0, sym)
    return apply_symbol(spectral, sym)


def partial_derivative(
    spectral: SpectralField2D, axis: int, order: int = 1
) -> SpectralField2D:
    """Exact spectral partial derivative (i xi_axis)^order."""
    if axis not in (0, 1):
        raise ValueError(f"axis must be 0 or 1, got {axis}")
    if not isinstance(order, (int, np.integer)) or order < 1:
        raise ValueError(f"order must be a positive integer, got {order!r}")
    grid = spectral.grid
    xi = grid.xi1_col if axis == 0 else grid.xi2_row
    return apply_symbol(spectral, (1j * xi) ** order)


def dealias_two_thirds(spectral: SpectralField2D) -> SpectralField2D:
    """Orthogonal projection zeroing modes with |m_i| > n_i/3."""
    grid = spectral.grid
    return SpectralField2D(grid, np.where(grid.dealias_mask, spectral.coeffs, 0.0))


def l2_norm(field: RealField2D | SpectralField2D) -> float:
    """L^2 norm of the field over the box (trapezoid-exact for periodic data)."""
    if isinstance(field, RealField2D):
        g = field.grid
        return float(np.sqrt(g.cell_area * np.sum(field.samples**2)))
    g = field.grid
    return float(np.sqrt(g.l1 * g.l2 * np.sum(np.abs(field.coeffs) ** 2)))


def inner_product(f: RealField2D, g: RealField2D) -> float:
    _check_grid_match(f, g)
    return float(f.grid.cell_area * np.sum(f.samples * g.samples))


def mixed_norm(field: RealField2D, spec: MixedNormSpec) -> float:
    """Mixed Lebesgue norm with the inner axis reduced first."""
    f = np.abs(field.samples)
    g = field.grid
    if spec.reduce_x1_first:
        inner = _axis_norm(f, axis=0, p=spec.p1, h=g.h1)
        return float(_axis_norm(inner, axis=0, p=spec.p2, h=g.h2))
    inner = _axis_norm(f, axis=1, p=spec.p2, h=g.h2)
    return float(_axis_norm(inner, axis=0, p=spec.p1, h=g.h1))


def _axis_norm(arr: np.ndarray, axis: int, p: float, h: float) -> np.ndarray:
    if math.isinf(p):
        return np.max(arr, axis=axis)
    if p == 1.0:
        return h * np.sum(arr, axis=axis)
    if p == 2.0:
        return np.sqrt(h * np.sum(arr**2, axis=axis))
    return (h * np.sum(arr**p, axis=axis)) ** (1.0 / p)


def sobolev_norm(field: RealField2D | SpectralField2D, k: int) -> float:
    """H^k norm in the working form (L^2 plus the two pure k-th derivatives).

    ``sqrt(||f||^2 + ||d1^k f||^2 + ||d2^k f||^2)``, which is equivalent to
    the full Sobolev norm on the box and is the quantity every bound in this
    package is stated in. k = 0 collapses to the plain L^2 norm.
    """
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    spectral = forward_transform(field) if isinstance(field, RealField2D) else field
    g = spectral.grid
    power = np.abs(spectral.coeffs) ** 2
    weight = 1.0 if k == 0 else 1.0 + g.xi1_col ** (2 * k) + g.xi2_row ** (2 * k)
    return float(np.sqrt(g.l1 * g.l2 * np.sum(weight * power)))


def neg_horizontal_sobolev_norm(
    field: RealField2D | SpectralField2D, sigma: float, k: int
) -> tuple[float, float]:
    """H^k norm of the horizontal antiderivative Lambda_1^{-sigma} f.

    The xi1 = 0 column carries none of the operator's meaning and is projected
    out. Returns ``(norm, zero_fraction)`` where ``zero_fraction`` is the share
    of the field's L^2 mass living on that column, so callers can tell whether
    the projection silently removed anything substantial.
    """
    if not (0.0 < sigma < 1.0):
        raise ValueError(f"sigma must lie in (0, 1), got {sigma!r}")
    if not isinstance(k, (int, np.integer)) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")
    spectral = forward_transform(field) if isinstance(field, RealField2D) else field
    g = spectral.grid
    power = np.abs(spectral.coeffs) ** 2
    total = float(np.sum(power))
    zero_col = (g.m1 == 0)[:, None]
    zero_mass = float(np.sum(np.where(zero_col, power, 0.0)))
    zero_fraction = zero_mass / total if total > 0 else 0.0
    absxi = np.abs(g.xi1_col)
    with np.errstate(divide="ignore"):
        horiz = np.where(zero_col, 0.0, absxi ** (-2.0 * sigma))
    weight = 1.0 if k == 0 else 1.0 + g.xi1_col ** (2 * k) + g.xi2_row ** (2 * k)
    value = float(np.sqrt(g.l1 * g.l2 * np.sum(horiz * weight * power)))
    return value, zero_fraction
