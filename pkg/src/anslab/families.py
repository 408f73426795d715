"""Randomized input families for the inequality suite.

Certified cases draw band-limited fields whose coefficients live on a fixed
physical lattice: base box 4 pi, wavenumber spacing 0.5, band |xi_i| <= 4.
A sample is a function of x, not of the grid, so realizing it at 64^2 and
128^2 produces literally the same field and the resolution-doubling drift in
the suite measures quadrature convergence alone. Band 8 (in lattice units)
also keeps |fg|^2 alias-free at the coarse resolution.

The stress families at the bottom are box-adapted by design. They exist to
make out-of-range parameters fail visibly: their interesting content sits at
the box fundamental, which marches toward zero frequency as the box doubles.
"""

from __future__ import annotations

import math

import numpy as np

from .core import (
    Grid2D,
    RealField2D,
    SpectralField2D,
    forward_transform,
    inverse_transform,
    sobolev_norm,
)
from .operators import VelocityField, velocity_from_stream

__all__ = [
    "BASE_BOX",
    "BASE_SPACING",
    "BASE_BAND",
    "gaussian_envelope",
    "lattice_scalar_sample",
    "enveloped_scalar_sample",
    "stream_velocity_sample",
    "beat_pair_sample",
    "bump_cosine_sample",
]

BASE_BOX = 4.0 * math.pi
BASE_SPACING = 0.5
BASE_BAND = 8


def _lattice_strides(grid: Grid2D) -> tuple[int, int]:
    """How many grid modes one base-lattice step spans, per axis."""
    strides = []
    for l, n, name in ((grid.l1, grid.n1, "l1"), (grid.l2, grid.n2, "l2")):
        ratio = l / BASE_BOX
        p = int(round(ratio))
        if abs(ratio - p) > 1e-12 or p < 1:
            raise ValueError(
                f"{name} = {l} is not a positive integer multiple of the "
                f"base box {BASE_BOX:.6g}"
            )
        if BASE_BAND * p > n // 3:
            raise ValueError(
                f"grid too coarse to hold the family band on axis {name}: "
                f"need n > {3 * BASE_BAND * p}, got {n}"
            )
        strides.append(p)
    return strides[0], strides[1]


def _hermitian_band_coeffs(rng: np.random.Generator) -> np.ndarray:
    """Complex draws on the (2B+1)^2 lattice with c(-a) = conj(c(a)), zero mean.

    Amplitudes taper mildly with |a| so samples are smooth at the scale of the
    base box rather than white.
    """
    b = BASE_BAND
    size = 2 * b + 1
    raw = rng.normal(size=(size, size)) + 1j * rng.normal(size=(size, size))
    a1 = np.arange(-b, b + 1)[:, None]
    a2 = np.arange(-b, b + 1)[None, :]
    taper = 1.0 / (1.0 + 0.25 * (a1**2 + a2**2))
    raw *= taper
    mirrored = np.conj(raw[::-1, ::-1])
    coeffs = 0.5 * (raw + mirrored)
    coeffs[b, b] = 0.0
    return coeffs


def _realize(grid: Grid2D, table: np.ndarray) -> SpectralField2D:
    """Place base-lattice coefficients onto a grid's mode array."""
    p1, p2 = _lattice_strides(grid)
    b = BASE_BAND
    arr = np.zeros(grid.shape, dtype=np.complex128)
    idx1 = (np.arange(-b, b + 1) * p1) % grid.n1
    idx2 = (np.arange(-b, b + 1) * p2) % grid.n2
    arr[np.ix_(idx1, idx2)] = table
    return SpectralField2D(grid, arr)


def gaussian_envelope(grid: Grid2D, width: float = 0.8) -> np.ndarray:
    """exp(-x2^2 / (2 width^2)) as a broadcastable (1, n2) row."""
    if not (width > 0):
        raise ValueError(f"envelope width must be positive, got {width!r}")
    return np.exp(-grid.x2[None, :] ** 2 / (2.0 * width**2))


def lattice_scalar_sample(
    grid: Grid2D,
    rng: np.random.Generator,
    zero_xi1_column: bool = False,
    norm_k: int = 1,
) -> RealField2D:
    """A smooth periodic sample from the fixed-lattice family, unit H^norm_k."""
    table = _hermitian_band_coeffs(rng)
    if zero_xi1_column:
        table[BASE_BAND, :] = 0.0
    f = inverse_transform(_realize(grid, table))
    scale = sobolev_norm(f, norm_k)
    if scale == 0.0:
        raise ValueError("degenerate draw: zero field sampled")
    return RealField2D(grid, f.samples / scale)


def enveloped_scalar_sample(
    grid: Grid2D,
    rng: np.random.Generator,
    width: float = 0.8,
    zero_xi1_column: bool = False,
    norm_k: int = 1,
) -> RealField2D:
    """Lattice sample tapered by the vertical Gaussian, for plane-like decay.

    The envelope multiplies in physical space after synthesis, so the sample
    is still the same function at every resolution of the same box. Zeroing
    the xi1 = 0 column happens before the envelope; the envelope acts only in
    x2 and cannot repopulate that column.
    """
    table = _hermitian_band_coeffs(rng)
    if zero_xi1_column:
        table[BASE_BAND, :] = 0.0
    f = inverse_transform(_realize(grid, table))
    samples = f.samples * gaussian_envelope(grid, width)
    out = RealField2D(grid, samples)
    scale = sobolev_norm(out, norm_k)
    if scale == 0.0:
        raise ValueError("degenerate draw: zero field sampled")
    return RealField2D(grid, samples / scale)


def stream_velocity_sample(
    grid: Grid2D,
    rng: np.random.Generator,
    width: float = 0.8,
) -> tuple[VelocityField, SpectralField2D]:
    """Divergence-free velocity from an enveloped random stream function.

    The envelope is applied to the stream function before taking the
    perpendicular gradient, so incompressibility is exact, not approximate.
    Returns the velocity and the spectral stream function it came from.
    """
    table = _hermitian_band_coeffs(rng)
    psi_plain = inverse_transform(_realize(grid, table))
    psi_samples = psi_plain.samples * gaussian_envelope(grid, width)
    psi_coeffs = forward_transform(RealField2D(grid, psi_samples)).coeffs.copy()
    psi_coeffs[0, 0] = 0.0
    psi = SpectralField2D(grid, psi_coeffs)
    u = velocity_from_stream(psi)
    speed = u.max_speed()
    if speed == 0.0:
        raise ValueError("degenerate draw: zero stream function sampled")
    scale = 1.0 / speed
    u = VelocityField(
        RealField2D(grid, u.u1.samples * scale),
        RealField2D(grid, u.u2.samples * scale),
    )
    return u, SpectralField2D(grid, psi.coeffs * scale)


def _profile_1d(
    x: np.ndarray, box: float, rng: np.random.Generator, width: float
) -> np.ndarray:
    """Random band-limited real profile on a line, Gaussian-enveloped."""
    b = BASE_BAND
    coeff = rng.normal(size=b + 1) + 1j * rng.normal(size=b + 1)
    coeff /= 1.0 + 0.25 * np.arange(b + 1) ** 2
    out = np.zeros_like(x)
    for a in range(1, b + 1):
        out += 2.0 * (
            coeff[a].real * np.cos(2.0 * np.pi * a * x / box)
            - coeff[a].imag * np.sin(2.0 * np.pi * a * x / box)
        )
    return out * np.exp(-(x**2) / (2.0 * width**2))


def beat_pair_sample(
    grid: Grid2D, rng: np.random.Generator, k0: float = 2.0
) -> RealField2D:
    """Stress sample for horizontal negative-order products.

    Two nearby horizontal cosines separated by the box fundamental, under an
    x1 envelope that widens with the box. Their product carries a beat line
    at the fundamental itself, where |xi1|^(-2 sigma) mass diverges once
    sigma crosses 1/2. The x2 profile is random; the beat structure is not.
    """
    delta = 2.0 * math.pi / grid.l1
    if abs(k0 * grid.l1 / (2.0 * math.pi) % 1.0) > 1e-9:
        raise ValueError(f"carrier k0 = {k0} is not on the grid's x1 lattice")
    x1, _ = grid.meshgrid()
    w1 = grid.l1 / 8.0
    carrier = (np.cos(k0 * x1) + np.cos((k0 + delta) * x1)) * np.exp(
        -(x1**2) / (2.0 * w1**2)
    )
    profile = _profile_1d(grid.x2, BASE_BOX, rng, width=0.8)
    raw = forward_transform(RealField2D(grid, carrier * profile[None, :]))
    # The envelope leaks a little mass onto the xi1 = 0 column; the beat line
    # sits at the fundamental, one column over, so projecting the leak keeps
    # the sample admissible for the negative-order estimates it stresses.
    coeffs = raw.coeffs.copy()
    coeffs[0, :] = 0.0
    return inverse_transform(SpectralField2D(grid, coeffs))


def bump_cosine_sample(
    grid: Grid2D, rng: np.random.Generator, width: float = 0.5
) -> RealField2D:
    """Stress sample for weighted double-Riesz bounds.

    A narrow vertical bump times the box-fundamental horizontal cosine. The
    transforms smear the bump into an exponential tail of reach l1/(2 pi);
    for weight exponents past the Muckenhoupt range the tail's weighted mass
    diverges with the box. Randomness enters through a mild modulation of the
    bump so repeated samples are not identical.
    """
    x1, x2 = grid.meshgrid()
    k0 = 2.0 * math.pi / grid.l1
    mod = 1.0 + 0.3 * math.tanh(rng.normal()) * np.cos(
        2.0 * np.pi * x2 / BASE_BOX + rng.uniform(0.0, 2.0 * np.pi)
    )
    bump = np.exp(-(x2**2) / (2.0 * width**2)) * mod
    return RealField2D(grid, np.cos(k0 * x1) * bump)
