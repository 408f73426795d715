"""Transforms, Fourier symbols, and norms against brute-force references."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anslab.core import (
    Grid2D,
    MixedNormSpec,
    RealField2D,
    SpectralField2D,
    ZeroModePolicy,
    apply_symbol,
    dealias_two_thirds,
    forward_transform,
    hermitian_defect,
    inner_product,
    inverse_transform,
    l2_norm,
    lambda1_pow,
    lambda_pow,
    mixed_norm,
    neg_horizontal_sobolev_norm,
    partial_derivative,
    sobolev_norm,
)
from conftest import smooth_field
from oracles import brute_dft, brute_synthesis, fd8_partial, quad_mixed_norm

TWO_PI = 2.0 * np.pi
G16 = Grid2D(16, 16, TWO_PI, TWO_PI)


def test_grid_validation():
    with pytest.raises(ValueError, match="even integer"):
        Grid2D(15, 16, TWO_PI, TWO_PI)
    with pytest.raises(ValueError, match="even integer"):
        Grid2D(2, 16, TWO_PI, TWO_PI)
    with pytest.raises(ValueError, match="positive"):
        Grid2D(16, 16, -1.0, TWO_PI)


def test_grid_coordinates_are_centered():
    g = Grid2D(8, 8, TWO_PI, 4.0 * np.pi)
    assert g.x1[0] == -np.pi
    assert g.x2[0] == -2.0 * np.pi
    assert 0.0 in g.x1  # the origin is a sample point on even grids
    np.testing.assert_allclose(np.diff(g.x1), g.h1)


def test_forward_transform_matches_brute_dft(rng):
    g = Grid2D(8, 8, TWO_PI, 4.0 * np.pi)
    f = RealField2D(g, rng.normal(size=g.shape))
    got = forward_transform(f).coeffs
    want = brute_dft(f.samples, g.l1, g.l2)
    np.testing.assert_allclose(got, want, atol=1e-12)


def test_inverse_transform_matches_brute_synthesis(rng):
    g = Grid2D(8, 8, TWO_PI, TWO_PI)
    f = RealField2D(g, rng.normal(size=g.shape))
    spec = forward_transform(f)
    want = brute_synthesis(spec.coeffs, g.l1, g.l2)
    assert np.max(np.abs(want.imag)) < 1e-12
    np.testing.assert_allclose(inverse_transform(spec).samples, want.real, atol=1e-12)


def test_round_trip_identity(rng):
    g = Grid2D(16, 32, TWO_PI, 4.0 * np.pi)
    f = RealField2D(g, rng.normal(size=g.shape))
    back = inverse_transform(forward_transform(f))
    np.testing.assert_allclose(back.samples, f.samples, atol=1e-13)


def test_single_cosine_lands_on_its_modes():
    x1, _ = G16.meshgrid()
    f = RealField2D(G16, np.cos(2.0 * x1) + 0.0 * G16.meshgrid()[1])
    c = forward_transform(f).coeffs
    i = list(G16.m1).index(2)
    j = list(G16.m1).index(-2)
    assert abs(c[i, 0] - 0.5) < 1e-14
    assert abs(c[j, 0] - 0.5) < 1e-14
    mask = np.ones(G16.shape, bool)
    mask[i, 0] = mask[j, 0] = False
    assert np.max(np.abs(c[mask])) < 1e-14


def test_parseval(smooth16):
    spec = forward_transform(smooth16)
    assert math.isclose(l2_norm(smooth16), l2_norm(spec), rel_tol=1e-12)


def test_inner_product_grid_mismatch(rng):
    f = RealField2D(G16, rng.normal(size=G16.shape))
    g2 = Grid2D(16, 16, 4.0 * np.pi, TWO_PI)
    g = RealField2D(g2, rng.normal(size=g2.shape))
    with pytest.raises(ValueError, match="different grids"):
        inner_product(f, g)


@given(lam=st.floats(min_value=-6.0, max_value=6.0))
@settings(max_examples=25, deadline=None)
def test_norm_homogeneity(lam):
    """Scaling the field scales every norm by the same factor."""
    scale = 10.0**lam
    rng = np.random.default_rng(7)
    f = smooth_field(G16, rng)
    g = RealField2D(G16, scale * f.samples)
    assert math.isclose(l2_norm(g), scale * l2_norm(f), rel_tol=1e-10)
    assert math.isclose(sobolev_norm(g, 3), scale * sobolev_norm(f, 3), rel_tol=1e-10)
    spec = MixedNormSpec(1.0, math.inf)
    assert math.isclose(
        mixed_norm(g, spec), scale * mixed_norm(f, spec), rel_tol=1e-10
    )
    na, _ = neg_horizontal_sobolev_norm(f, 0.4, 2)
    nb, _ = neg_horizontal_sobolev_norm(g, 0.4, 2)
    assert math.isclose(nb, scale * na, rel_tol=1e-10)


def test_partial_derivative_matches_fd8(rng):
    g = Grid2D(128, 128, TWO_PI, TWO_PI)
    f = smooth_field(g, rng)
    for axis, h in ((0, g.h1), (1, g.h2)):
        want = fd8_partial(f.samples, h, axis)
        got = inverse_transform(partial_derivative(forward_transform(f), axis)).samples
        scale = np.max(np.abs(want))
        assert np.max(np.abs(got - want)) < 1e-8 * scale


def test_partial_derivative_argument_checks(smooth16):
    spec = forward_transform(smooth16)
    with pytest.raises(ValueError, match="axis"):
        partial_derivative(spec, axis=2)
    with pytest.raises(ValueError, match="order"):
        partial_derivative(spec, axis=0, order=0)


def test_lambda1_negative_power_needs_projection(smooth16):
    spec = forward_transform(smooth16)
    with pytest.raises(ValueError, match="PROJECT_OUT"):
        lambda1_pow(spec, -0.5)
    with pytest.raises(ValueError, match="PROJECT_OUT"):
        lambda_pow(spec, -0.5)


def test_lambda1_annihilates_and_keeps_zero_column():
    _, x2 = G16.meshgrid()
    vert = RealField2D(G16, np.cos(x2) + 0.0 * G16.meshgrid()[0])
    spec = forward_transform(vert)
    # A pure function of x2 lives on the xi1 = 0 column entirely.
    gone = lambda1_pow(spec, 0.7)
    assert np.max(np.abs(gone.coeffs)) < 1e-14
    kept = lambda1_pow(spec, 0.0)
    np.testing.assert_allclose(kept.coeffs, spec.coeffs, atol=1e-15)
    projected = lambda1_pow(spec, 0.0, ZeroModePolicy.PROJECT_OUT)
    assert np.max(np.abs(projected.coeffs)) < 1e-14


def test_fractional_powers_on_a_single_mode():
    x1, x2 = G16.meshgrid()
    f = RealField2D(G16, np.cos(3.0 * x1 + 4.0 * x2))
    spec = forward_transform(f)
    for a in (0.5, 1.0, 1.6):
        iso = inverse_transform(lambda_pow(spec, a)).samples
        np.testing.assert_allclose(iso, 5.0**a * f.samples, atol=1e-12 * 5.0**a)
        horiz = inverse_transform(lambda1_pow(spec, a)).samples
        np.testing.assert_allclose(horiz, 3.0**a * f.samples, atol=1e-12 * 3.0**a)


def test_apply_symbol_rejects_non_finite(smooth16):
    spec = forward_transform(smooth16)
    sym = np.ones(G16.shape)
    sym[3, 5] = np.inf
    with pytest.raises(ValueError, match="wavenumber"):
        apply_symbol(spec, sym)


def test_inverse_transform_rejects_non_hermitian():
    c = np.zeros(G16.shape, dtype=complex)
    c[1, 0] = 1.0  # no conjugate partner at m1 = -1
    with pytest.raises(ValueError, match="Hermitian"):
        inverse_transform(SpectralField2D(G16, c))


def test_hermitian_defect_scales(smooth16):
    spec = forward_transform(smooth16)
    assert hermitian_defect(spec) < 1e-14
    c = spec.coeffs.copy()
    c[2, 3] += 0.5j
    assert hermitian_defect(SpectralField2D(G16, c)) > 0.4


def test_dealias_two_thirds_mask(rng):
    g = Grid2D(12, 12, TWO_PI, TWO_PI)
    f = RealField2D(g, rng.normal(size=g.shape))
    spec = forward_transform(f)
    cut = dealias_two_thirds(spec)
    keep = (np.abs(g.m1)[:, None] <= 4) & (np.abs(g.m2)[None, :] <= 4)
    np.testing.assert_allclose(cut.coeffs[keep], spec.coeffs[keep])
    assert np.max(np.abs(cut.coeffs[~keep])) == 0.0


@pytest.mark.parametrize(
    "p1,p2",
    [(1.0, 2.0), (2.0, 2.0), (3.0, math.inf), (math.inf, 1.0), (2.0, math.inf)],
)
@pytest.mark.parametrize("x1_first", [True, False])
def test_mixed_norm_against_quadrature(p1, p2, x1_first):
    g = Grid2D(32, 32, TWO_PI, TWO_PI)
    x1, x2 = g.meshgrid()
    f = RealField2D(g, (2.0 + np.cos(x1)) * (2.0 + np.sin(x2)))
    got = mixed_norm(f, MixedNormSpec(p1, p2, reduce_x1_first=x1_first))
    want = quad_mixed_norm(
        lambda a, b: (2.0 + np.cos(a)) * (2.0 + np.sin(b)),
        g.l1,
        g.l2,
        p1,
        p2,
        reduce_x1_first=x1_first,
    )
    assert math.isclose(got, want, rel_tol=3e-5)


def test_mixed_norm_reduce_order_differs():
    g = Grid2D(32, 32, TWO_PI, TWO_PI)
    x1, x2 = g.meshgrid()
    f = RealField2D(g, np.exp(np.cos(x1)) + 0.2 * np.sin(x2) * np.cos(2 * x1))
    spec = MixedNormSpec(1.0, math.inf, reduce_x1_first=True)
    other = MixedNormSpec(1.0, math.inf, reduce_x1_first=False)
    assert abs(mixed_norm(f, spec) - mixed_norm(f, other)) > 1e-3


def test_mixed_norm_spec_validation():
    with pytest.raises(ValueError, match="p >= 1"):
        MixedNormSpec(0.5, 2.0)
    with pytest.raises(ValueError, match="p >= 1"):
        MixedNormSpec(2.0, float("nan"))


def test_sobolev_norm_composes_from_derivatives(smooth16):
    k = 3
    spec = forward_transform(smooth16)
    d1 = l2_norm(partial_derivative(spec, 0, order=k))
    d2 = l2_norm(partial_derivative(spec, 1, order=k))
    want = math.sqrt(l2_norm(smooth16) ** 2 + d1**2 + d2**2)
    assert math.isclose(sobolev_norm(smooth16, k), want, rel_tol=1e-12)
    assert math.isclose(sobolev_norm(smooth16, 0), l2_norm(smooth16), rel_tol=1e-12)
    with pytest.raises(ValueError, match="nonnegative"):
        sobolev_norm(smooth16, -1)


def test_neg_horizontal_norm_zero_column_report():
    x1, x2 = G16.meshgrid()
    pure_vertical = RealField2D(G16, np.cos(x2) + 0.0 * x1)
    value, frac = neg_horizontal_sobolev_norm(pure_vertical, 0.4, 1)
    assert value == 0.0
    assert frac == 1.0
    mixed = RealField2D(G16, np.cos(x2) + np.cos(x1))
    value, frac = neg_horizontal_sobolev_norm(mixed, 0.4, 1)
    assert value > 0.0
    assert 0.0 < frac < 1.0
    with pytest.raises(ValueError, match="sigma"):
        neg_horizontal_sobolev_norm(mixed, 1.5, 1)


def test_neg_horizontal_norm_single_mode_value():
    """On one horizontal mode the norm is an explicit closed form."""
    x1, _ = G16.meshgrid()
    f = RealField2D(G16, np.cos(2.0 * x1) + 0.0 * G16.meshgrid()[1])
    sigma, k = 0.3, 2
    value, frac = neg_horizontal_sobolev_norm(f, sigma, k)
    base = l2_norm(f)
    want = 2.0 ** (-sigma) * math.sqrt(1.0 + 2.0 ** (2 * k)) * base
    assert frac < 1e-28
    assert math.isclose(value, want, rel_tol=1e-12)


def test_field_validation_rejects_bad_shapes_and_nans():
    with pytest.raises(ValueError, match="shape"):
        RealField2D(G16, np.zeros((4, 4)))
    bad = np.zeros(G16.shape)
    bad[0, 0] = np.nan
    with pytest.raises(ValueError, match="finite"):
        RealField2D(G16, bad)
    with pytest.raises(ValueError, match="finite"):
        SpectralField2D(G16, np.full(G16.shape, np.inf, dtype=complex))


def test_fields_are_immutable(smooth16):
    with pytest.raises(ValueError):
        smooth16.samples[0, 0] = 1.0
