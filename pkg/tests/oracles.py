"""Slow reference implementations the fast paths are tested against.

Everything here is deliberately naive: O(N^4) mode loops, textbook finite
difference stencils, scipy quadrature on closed forms. None of it should be
imported outside the test suite.
"""

import numpy as np
from scipy import integrate


def brute_dft(samples: np.ndarray, l1: float, l2: float) -> np.ndarray:
    """Centered-basis Fourier coefficients by direct summation.

    c(m1, m2) = (1 / n1 n2) sum_j f(x_j) exp(-i xi . x_j) with x the centered
    grid coordinates, returned in FFT storage order to match the package.
    """
    n1, n2 = samples.shape
    x1 = -0.5 * l1 + (l1 / n1) * np.arange(n1)
    x2 = -0.5 * l2 + (l2 / n2) * np.arange(n2)
    m1 = np.rint(np.fft.fftfreq(n1) * n1).astype(int)
    m2 = np.rint(np.fft.fftfreq(n2) * n2).astype(int)
    out = np.zeros((n1, n2), dtype=np.complex128)
    for i, a in enumerate(m1):
        e1 = np.exp(-1j * (2.0 * np.pi * a / l1) * x1)
        for j, b in enumerate(m2):
            e2 = np.exp(-1j * (2.0 * np.pi * b / l2) * x2)
            out[i, j] = np.sum(samples * np.outer(e1, e2)) / (n1 * n2)
    return out


def brute_synthesis(coeffs: np.ndarray, l1: float, l2: float) -> np.ndarray:
    """Inverse of brute_dft: f(x_j) = sum_m c(m) exp(i xi . x_j)."""
    n1, n2 = coeffs.shape
    x1 = -0.5 * l1 + (l1 / n1) * np.arange(n1)
    x2 = -0.5 * l2 + (l2 / n2) * np.arange(n2)
    m1 = np.rint(np.fft.fftfreq(n1) * n1).astype(int)
    m2 = np.rint(np.fft.fftfreq(n2) * n2).astype(int)
    out = np.zeros((n1, n2), dtype=np.complex128)
    for i, a in enumerate(m1):
        e1 = np.exp(1j * (2.0 * np.pi * a / l1) * x1)
        for j, b in enumerate(m2):
            e2 = np.exp(1j * (2.0 * np.pi * b / l2) * x2)
            out += coeffs[i, j] * np.outer(e1, e2)
    return out


def brute_circular_convolution(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """(f * g)(k) = sum_a f(a) g(k - a mod n), the grid-product theorem.

    With the 1/(n1 n2) transform normalization the pointwise product of two
    sample arrays has exactly this table as its coefficients, aliasing
    included; the centered phases compose consistently because the grids are
    even.
    """
    n1, n2 = f.shape
    out = np.zeros((n1, n2), dtype=np.complex128)
    for k1 in range(n1):
        for k2 in range(n2):
            acc = 0.0 + 0.0j
            for a1 in range(n1):
                for a2 in range(n2):
                    acc += f[a1, a2] * g[(k1 - a1) % n1, (k2 - a2) % n2]
            out[k1, k2] = acc
    return out


def brute_advection(
    u1: np.ndarray,
    u2: np.ndarray,
    fhat: np.ndarray,
    l1: float,
    l2: float,
) -> np.ndarray:
    """Coefficients of u . grad f via derivative tables and convolution sums.

    u1, u2 are sample arrays, fhat a coefficient table. This reproduces the
    undealiased pseudo-spectral term: differentiate spectrally, multiply on
    the grid (= circular convolution), sum the two components.
    """
    n1, n2 = fhat.shape
    xi1 = 2.0 * np.pi * np.rint(np.fft.fftfreq(n1) * n1) / l1
    xi2 = 2.0 * np.pi * np.rint(np.fft.fftfreq(n2) * n2) / l2
    d1f = 1j * xi1[:, None] * fhat
    d2f = 1j * xi2[None, :] * fhat
    u1hat = brute_dft(u1, l1, l2)
    u2hat = brute_dft(u2, l1, l2)
    return brute_circular_convolution(u1hat, d1f) + brute_circular_convolution(
        u2hat, d2f
    )


FD8_WEIGHTS = (
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
)


def fd8_partial(samples: np.ndarray, h: float, axis: int) -> np.ndarray:
    """Eighth-order centered first derivative with periodic wraparound."""
    out = np.zeros_like(samples, dtype=np.float64)
    for offset, w in zip(range(-4, 5), FD8_WEIGHTS):
        if w != 0.0:
            out += w * np.roll(samples, -offset, axis=axis)
    return out / h


def quad_mixed_norm(func, l1, l2, p1, p2, reduce_x1_first=True):
    """Mixed Lebesgue norm of a closed-form f(x1, x2) by nested quadrature."""
    lo1, hi1 = -0.5 * l1, 0.5 * l1
    lo2, hi2 = -0.5 * l2, 0.5 * l2

    def line_norm(g, lo, hi, p):
        if np.isinf(p):
            xs = np.linspace(lo, hi, 4001)
            return float(np.max(np.abs([g(x) for x in xs])))
        val, _ = integrate.quad(
            lambda x: abs(g(x)) ** p, lo, hi, limit=400, epsabs=1e-13, epsrel=1e-13
        )
        return val ** (1.0 / p)

    if reduce_x1_first:
        def inner(x2):
            return line_norm(lambda x1: func(x1, x2), lo1, hi1, p1)

        return line_norm(inner, lo2, hi2, p2)

    def inner(x1):
        return line_norm(lambda x2: func(x1, x2), lo2, hi2, p2)

    return line_norm(inner, lo1, hi1, p1)
