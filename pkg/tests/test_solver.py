"""Time stepping: exact solutions, conservation ledgers, run mechanics."""

import math

import numpy as np
import pytest

from anslab.core import Grid2D, SpectralField2D, forward_transform, inverse_transform
from anslab.operators import ModelParams, biot_savart, nonlinear_advection
from anslab.solver import (
    DIAG_KEYS,
    DiagnosticsRecord,
    RunResult,
    SimState,
    SolverConfig,
    diagnostics_record,
    energy_ledger,
    hk_ledger_series,
    init_from_preset,
    read_diagnostics_csv,
    rhs_nonlinear,
    run,
    step,
    write_diagnostics_csv,
)

TWO_PI = 2.0 * np.pi
G64 = Grid2D(64, 64, TWO_PI, TWO_PI)
PARAMS = ModelParams(nu=0.2, s=0.6, k=3)


def test_taylor_green_exact_decay():
    """The cellular flow self-advects trivially, so the run is the pure
    semigroup; its four modes all sit at |xi1| = 1 and decay like e^(-nu t)
    for every fractional order."""
    eps = 0.8
    state = init_from_preset("taylor_green", G64, PARAMS, eps=eps)
    result = run(state, SolverConfig(dt=0.01, t_end=1.0, diag_stride=10))
    assert not result.aborted
    x1, x2 = G64.meshgrid()
    want = -2.0 * eps * math.exp(-PARAMS.nu * 1.0) * np.cos(x1) * np.cos(x2)
    got = inverse_transform(result.final_state.omega_hat).samples
    np.testing.assert_allclose(got, want, atol=1e-12 * eps)
    assert result.final_state.t == pytest.approx(1.0)


def test_taylor_green_nonlinear_term_vanishes():
    state = init_from_preset("taylor_green", G64, PARAMS, eps=1.0)
    rhs = rhs_nonlinear(state)
    assert np.max(np.abs(rhs.coeffs)) < 1e-14


def test_rhs_nonlinear_matches_operator_composition(rng):
    state = init_from_preset("random_band", G64, PARAMS, eps=1.0, seed=12)
    u = biot_savart(state.omega_hat)
    want = -nonlinear_advection(u, state.omega_hat, dealias=True).coeffs
    got = rhs_nonlinear(state).coeffs
    np.testing.assert_allclose(got, want, atol=1e-15)
    assert got[0, 0] == 0.0


def test_energy_ledger_small_drift():
    params = ModelParams(nu=0.1, s=0.75, k=3)
    state = init_from_preset("random_band", G64, params, eps=0.5, seed=4)
    result = run(state, SolverConfig(dt=2e-3, t_end=0.5, diag_stride=10))
    ledger = energy_ledger(result.records, params.nu)
    assert ledger.max_abs_drift < 2e-6
    assert len(ledger.drifts) == len(result.records)


def test_inviscid_energy_conservation():
    params = ModelParams(nu=0.0, s=0.75, k=3)
    state = init_from_preset("random_band", G64, params, eps=0.5, seed=4)
    result = run(state, SolverConfig(dt=1e-3, t_end=0.3, diag_stride=10))
    ledger = energy_ledger(result.records, 0.0)
    assert ledger.max_abs_drift < 1e-10


def test_hk_ledger_nearly_nonincreasing():
    params = ModelParams(nu=0.1, s=0.75, k=3)
    state = init_from_preset("random_band", G64, params, eps=0.5, seed=4)
    result = run(state, SolverConfig(dt=2e-3, t_end=0.5, diag_stride=10))
    series = hk_ledger_series(result, params.nu)
    increases = np.diff(series) / series[0]
    assert np.max(increases) < 1e-4


def test_record_spacing_and_count():
    state = init_from_preset("taylor_green", G64, PARAMS, eps=0.1)
    result = run(state, SolverConfig(dt=0.1, t_end=1.0, diag_stride=1))
    assert len(result.records) == 11
    times = [r.t for r in result.records]
    np.testing.assert_allclose(times, np.linspace(0.0, 1.0, 11), atol=1e-12)
    strided = run(state, SolverConfig(dt=0.1, t_end=1.0, diag_stride=5))
    assert [round(r.t, 10) for r in strided.records] == [0.0, 0.5, 1.0]


def test_zero_horizon_returns_single_record():
    state = init_from_preset("taylor_green", G64, PARAMS, eps=0.1)
    result = run(state, SolverConfig(dt=0.1, t_end=0.0))
    assert len(result.records) == 1
    assert result.records[0].t == 0.0


def test_auto_stepping_reaches_the_end():
    state = init_from_preset("random_band", G64, PARAMS, eps=0.5, seed=2)
    result = run(state, SolverConfig(dt="auto", t_end=0.2, diag_stride=4, cfl=0.3))
    assert not result.aborted
    assert result.final_state.t == pytest.approx(0.2, abs=1e-10)


def test_blowup_aborts_with_reason():
    params = ModelParams(nu=0.0, s=0.5, k=3)
    state = init_from_preset("random_band", G64, params, eps=200.0, seed=1)
    with np.errstate(over="ignore", invalid="ignore"):
        result = run(state, SolverConfig(dt=0.5, t_end=20.0, diag_stride=1))
    assert result.aborted
    assert "non-finite" in result.abort_reason
    assert "instability-candidate" in result.flags
    # records collected before the blowup survive, and the final state is usable
    assert len(result.records) >= 1
    assert np.all(np.isfinite(result.final_state.omega_hat.coeffs))


def test_step_validation_and_single_step():
    state = init_from_preset("taylor_green", G64, PARAMS, eps=0.3)
    with pytest.raises(ValueError, match="dt"):
        step(state, 0.0)
    after = step(state, 0.05)
    assert after.t == pytest.approx(0.05)
    assert after.init_norms == state.init_norms


def test_solver_config_validation():
    with pytest.raises(ValueError, match="dt"):
        SolverConfig(dt="fast", t_end=1.0)
    with pytest.raises(ValueError, match="dt"):
        SolverConfig(dt=-0.1, t_end=1.0)
    with pytest.raises(ValueError, match="t_end"):
        SolverConfig(dt=0.1, t_end=-1.0)
    with pytest.raises(ValueError, match="cfl"):
        SolverConfig(dt=0.1, t_end=1.0, cfl=1.5)
    with pytest.raises(ValueError, match="diag_stride"):
        SolverConfig(dt=0.1, t_end=1.0, diag_stride=0)


def test_sim_state_requires_mean_free():
    coeffs = np.zeros(G64.shape, dtype=complex)
    coeffs[0, 0] = 1.0
    with pytest.raises(ValueError, match="mean-free"):
        SimState(0.0, SpectralField2D(G64, coeffs), PARAMS)


def test_taylor_green_preset_uses_literal_amplitude():
    eps = 0.25
    state = init_from_preset("taylor_green", G64, PARAMS, eps=eps)
    omega = inverse_transform(state.omega_hat)
    assert np.max(np.abs(omega.samples)) == pytest.approx(2.0 * eps, rel=1e-12)
    assert state.init_norms is not None
    assert set(state.init_norms) == {
        "l2_u",
        "hk_u",
        "neg_hk_u",
        "w_hk_u",
        "w_neg_hk_u",
    }


def test_banded_stream_preset_hits_budget_exactly():
    g = Grid2D(128, 192, 8 * TWO_PI, 8 * TWO_PI)
    params = ModelParams(nu=0.05, s=0.8, sigma=0.4, k=4)
    eps = 1e-3
    state = init_from_preset("banded_stream", g, params, eps=eps)
    assert max(state.init_norms.values()) == pytest.approx(eps, rel=1e-9)
    # no mass on the xi1 = 0 column: the stream function starts at mode one
    c = state.omega_hat.coeffs
    assert np.max(np.abs(c[0, :])) < 1e-13 * np.max(np.abs(c))


def test_random_band_preset_seeded():
    a = init_from_preset("random_band", G64, PARAMS, eps=0.5, seed=7)
    b = init_from_preset("random_band", G64, PARAMS, eps=0.5, seed=7)
    np.testing.assert_array_equal(a.omega_hat.coeffs, b.omega_hat.coeffs)
    c = init_from_preset("random_band", G64, PARAMS, eps=0.5, seed=8)
    assert np.max(np.abs(c.omega_hat.coeffs - a.omega_hat.coeffs)) > 0.0


def test_unknown_preset_and_bad_eps():
    with pytest.raises(ValueError, match="unknown preset"):
        init_from_preset("vortex_pair", G64, PARAMS, eps=0.1)
    with pytest.raises(ValueError, match="eps"):
        init_from_preset("taylor_green", G64, PARAMS, eps=0.0)


def test_diagnostics_record_pins_key_order():
    good = dict.fromkeys(DIAG_KEYS, 1.0)
    DiagnosticsRecord(0.0, good)
    shuffled = dict(reversed(list(good.items())))
    with pytest.raises(ValueError, match="order"):
        DiagnosticsRecord(0.0, shuffled)
    bad = dict(good)
    bad["l2_u1"] = -1.0
    with pytest.raises(ValueError, match="l2_u1"):
        DiagnosticsRecord(0.0, bad)


def test_csv_round_trip(tmp_path):
    state = init_from_preset("random_band", G64, PARAMS, eps=0.5, seed=3)
    result = run(state, SolverConfig(dt=0.05, t_end=0.2))
    path = tmp_path / "series.csv"
    write_diagnostics_csv(result.records, str(path))
    times, columns = read_diagnostics_csv(str(path))
    assert set(columns) == set(DIAG_KEYS)
    np.testing.assert_array_equal(times, [r.t for r in result.records])
    for key in DIAG_KEYS:
        np.testing.assert_array_equal(
            columns[key], [r.norms[key] for r in result.records]
        )


def test_csv_reader_requires_time_column(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError, match="'t'"):
        read_diagnostics_csv(str(path))


def test_ledger_helpers_validate_inputs():
    with pytest.raises(ValueError, match="at least one"):
        energy_ledger([], 0.1)
    rec = diagnostics_record(
        init_from_preset("taylor_green", G64, PARAMS, eps=0.1)
    )
    result = RunResult(
        records=(rec,),
        final_state=init_from_preset("taylor_green", G64, PARAMS, eps=0.1),
        extras={"hk_diss_int": (0.0, 0.0)},
    )
    with pytest.raises(ValueError, match="misaligned"):
        hk_ledger_series(result, 0.1)
