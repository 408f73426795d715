"""Vorticity-form time integration with horizontal fractional dissipation.

The scheme is fourth-order Runge-Kutta on the integrating-factor variable:
the linear flow exp(-nu |xi1|^(2s) dt) is applied exactly mode by mode, so a
purely linear run has no time-discretization error at all, and the xi1 = 0
column evolves only through nonlinear transfer (its linear factor is exactly
one). The nonlinear term is pseudo-spectral with two-thirds dealiasing, which
makes the quadratic conservation checks in the tests meaningful rather than
approximate.

A run carries a battery of norms chosen to expose anisotropic decay: plain
and directional L^2 norms of the velocity, the Sobolev and negative-order
diagnostics, the dissipation integral, and five vertically weighted norms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .core import (
    Grid2D,
    RealField2D,
    SpectralField2D,
    forward_transform,
    inverse_transform,
)
from .operators import ModelParams, VelocityField, biot_savart, nonlinear_advection
from .weights import truncated_power

__all__ = [
    "DIAG_KEYS",
    "SimState",
    "SolverConfig",
    "DiagnosticsRecord",
    "RunResult",
    "EnergyLedger",
    "init_from_preset",
    "rhs_nonlinear",
    "step",
    "run",
    "diagnostics_record",
    "energy_ledger",
    "hk_ledger_series",
    "write_diagnostics_csv",
    "read_diagnostics_csv",
    "INIT_PRESETS",
]

DIAG_KEYS = (
    "l2_u1",
    "l2_u2",
    "l2_p1u1",
    "l2_p2u1",
    "l2_p1u2",
    "hk_u",
    "neg_hk_u",
    "diss_int",
    "w_u",
    "w_p1u",
    "w_p2u1",
    "w_u2",
    "w_p1u2",
)

INIT_PRESETS = ("taylor_green", "banded_stream", "random_band")


@dataclass(frozen=True)
class SimState:
    """Vorticity state at one instant, with the model parameters riding along.

    The mean vorticity must vanish (otherwise no periodic velocity exists);
    construction enforces it against the total coefficient mass.
    init_norms carries the data-size report produced by the presets.
    """

    t: float
    omega_hat: SpectralField2D
    params: ModelParams
    init_norms: Mapping[str, float] | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.t):
            raise ValueError(f"time must be finite, got {self.t!r}")
        c = self.omega_hat.coeffs
        total = float(np.sqrt(np.sum(np.abs(c) ** 2)))
        mean = float(np.abs(c[0, 0]))
        if total > 0 and mean >= 1e-12 * total:
            raise ValueError(
                f"mean vorticity is {mean:.3e} ({mean / total:.2e} of total); "
                "states must be mean-free"
            )

    @property
    def grid(self) -> Grid2D:
        return self.omega_hat.grid


@dataclass(frozen=True)
class SolverConfig:
    """Stepping controls. dt may be the string "auto" for CFL-driven steps.

    With auto stepping the step is cfl * min(h) / max|u|, refreshed at every
    diagnostic boundary from the velocity there. Dealiasing is always on;
    there is deliberately no switch for it.
    """

    dt: float | str
    t_end: float
    cfl: float = 0.4
    diag_stride: int = 1

    def __post_init__(self) -> None:
        if isinstance(self.dt, str):
            if self.dt != "auto":
                raise ValueError(f"dt must be positive or 'auto', got {self.dt!r}")
        elif not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive or 'auto', got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end >= 0):
            raise ValueError(f"t_end must be >= 0, got {self.t_end!r}")
        if not (0 < self.cfl <= 1.0):
            raise ValueError(f"cfl must lie in (0, 1], got {self.cfl!r}")
        if not isinstance(self.diag_stride, (int, np.integer)) or self.diag_stride < 1:
            raise ValueError(
                f"diag_stride must be a positive integer, got {self.diag_stride!r}"
            )


@dataclass(frozen=True)
class DiagnosticsRecord:
    """One row of the run battery; keys and their order are frozen."""

    t: float
    norms: Mapping[str, float]

    def __post_init__(self) -> None:
        if tuple(self.norms.keys()) != DIAG_KEYS:
            raise ValueError(
                f"diagnostic keys must be exactly {DIAG_KEYS} in order, "
                f"got {tuple(self.norms.keys())}"
            )
        for key, value in self.norms.items():
            if not (math.isfinite(value) and value >= 0):
                raise ValueError(f"norm {key} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class RunResult:
    records: tuple[DiagnosticsRecord, ...]
    final_state: SimState
    aborted: bool = False
    abort_reason: str | None = None
    flags: tuple[str, ...] = ()
    extras: Mapping[str, tuple[float, ...]] = field(default_factory=dict)


@dataclass(frozen=True)
class EnergyLedger:
    """Per-record drift of ||u||^2 + 2 nu int ||Lambda_1^s u||^2 against t=0."""

    drifts: tuple[float, ...]
    max_abs_drift: float


class _Workspace:
    """Precomputed multiplier arrays for one (grid, params, dt) combination."""

    def __init__(self, grid: Grid2D, params: ModelParams, dt: float):
        self.grid = grid
        self.params = params
        self.dt = dt
        xi1c, xi2r = grid.xi1_col, grid.xi2_row
        self.xi1c, self.xi2r = xi1c, xi2r
        mag2 = xi1c**2 + xi2r**2
        inv = np.where(mag2 == 0.0, 0.0, 1.0 / np.where(mag2 == 0.0, 1.0, mag2))
        self.inv_mag2 = inv
        symbol = params.nu * np.abs(xi1c) ** (2.0 * params.s)
        self.E = np.exp(-dt * symbol) * np.ones_like(xi2r)
        self.Eh = np.exp(-0.5 * dt * symbol) * np.ones_like(xi2r)
        if params.s > 0:
            zero_col = (grid.m1 == 0).nonzero()[0][0]
            if not (
                np.all(self.E[zero_col, :] == 1.0)
                and np.all(self.Eh[zero_col, :] == 1.0)
            ):
                raise AssertionError(
                    "xi1 = 0 modes must carry a linear factor of exactly 1"
                )
        self.mask = grid.dealias_mask
        self.phase = grid.centered_phase
        self.n_total = grid.n1 * grid.n2

    def to_phys(self, coeffs: np.ndarray) -> np.ndarray:
        return (np.fft.ifft2(coeffs * self.phase) * self.n_total).real

    def to_spec(self, samples: np.ndarray) -> np.ndarray:
        return np.fft.fft2(samples) * (self.phase / self.n_total)

    def nonlinear(self, omh: np.ndarray) -> np.ndarray:
        """-dealias(F[u . grad omega]), mean mode pinned to zero."""
        u1h = 1j * self.xi2r * omh * self.inv_mag2
        u2h = -1j * self.xi1c * omh * self.inv_mag2
        w1h = 1j * self.xi1c * omh
        w2h = 1j * self.xi2r * omh
        conv = self.to_phys(u1h) * self.to_phys(w1h) + self.to_phys(u2h) * self.to_phys(
            w2h
        )
        out = -self.to_spec(conv)
        out = np.where(self.mask, out, 0.0)
        out[0, 0] = 0.0
        return out

    def step_array(self, omh: np.ndarray) -> np.ndarray:
        dt, E, Eh = self.dt, self.E, self.Eh
        k1 = self.nonlinear(omh)
        s1 = Eh * (omh + 0.5 * dt * k1)
        k2 = self.nonlinear(s1)
        s2 = Eh * omh + 0.5 * dt * k2
        k3 = self.nonlinear(s2)
        s3 = E * omh + dt * (Eh * k3)
        k4 = self.nonlinear(s3)
        return E * omh + (dt / 6.0) * (E * k1 + 2.0 * Eh * (k2 + k3) + k4)


class _DiagEngine:
    """Instantaneous diagnostics from a raw coefficient array."""

    def __init__(self, grid: Grid2D, params: ModelParams):
        self.grid = grid
        self.params = params
        xi1c, xi2r = grid.xi1_col, grid.xi2_row
        self.xi1c, self.xi2r = xi1c, xi2r
        mag2 = xi1c**2 + xi2r**2
        self.inv_mag2 = np.where(
            mag2 == 0.0, 0.0, 1.0 / np.where(mag2 == 0.0, 1.0, mag2)
        )
        self.area = grid.l1 * grid.l2
        k = params.k
        self.hk_weight = 1.0 + xi1c ** (2 * k) + xi2r ** (2 * k)
        zero_col = (grid.m1 == 0)[:, None]
        with np.errstate(divide="ignore"):
            self.neg_weight = np.where(
                zero_col, 0.0, np.abs(xi1c) ** (-2.0 * params.sigma)
            )
        self.diss_weight = np.abs(xi1c) ** (2.0 * params.s)
        g = params.gamma
        self.w_mid = truncated_power(grid.x2, (3.0 * g + 4.0) / 7.0)[None, :] ** 2
        self.w_p2 = truncated_power(grid.x2, (5.0 * g + 2.0) / 7.0)[None, :] ** 2
        self.w_g = truncated_power(grid.x2, g)[None, :] ** 2
        self.phase = grid.centered_phase
        self.n_total = grid.n1 * grid.n2
        self.cell = grid.cell_area

    def to_phys(self, coeffs: np.ndarray) -> np.ndarray:
        return (np.fft.ifft2(coeffs * self.phase) * self.n_total).real

    def _l2sq(self, coeffs: np.ndarray) -> float:
        return float(self.area * np.sum(np.abs(coeffs) ** 2))

    def _wl2sq(self, samples: np.ndarray, wsq: np.ndarray) -> float:
        return float(self.cell * np.sum(samples**2 * wsq))

    def instantaneous(self, omh: np.ndarray) -> tuple[dict[str, float], float, float]:
        """Returns (norms sans diss_int, L2 dissipator, H^k dissipator)."""
        u1h = 1j * self.xi2r * omh * self.inv_mag2
        u2h = -1j * self.xi1c * omh * self.inv_mag2
        p1u1h = 1j * self.xi1c * u1h
        p2u1h = 1j * self.xi2r * u1h
        p1u2h = 1j * self.xi1c * u2h
        usq = np.abs(u1h) ** 2 + np.abs(u2h) ** 2
        out: dict[str, float] = {}
        out["l2_u1"] = math.sqrt(self._l2sq(u1h))
        out["l2_u2"] = math.sqrt(self._l2sq(u2h))
        out["l2_p1u1"] = math.sqrt(self._l2sq(p1u1h))
        out["l2_p2u1"] = math.sqrt(self._l2sq(p2u1h))
        out["l2_p1u2"] = math.sqrt(self._l2sq(p1u2h))
        out["hk_u"] = float(np.sqrt(self.area * np.sum(self.hk_weight * usq)))
        out["neg_hk_u"] = float(
            np.sqrt(self.area * np.sum(self.neg_weight * self.hk_weight * usq))
        )
        u1 = self.to_phys(u1h)
        u2 = self.to_phys(u2h)
        p1u1 = self.to_phys(p1u1h)
        p2u1 = self.to_phys(p2u1h)
        p1u2 = self.to_phys(p1u2h)
        out["w_u"] = math.sqrt(
            self._wl2sq(u1, self.w_mid) + self._wl2sq(u2, self.w_mid)
        )
        out["w_p1u"] = math.sqrt(
            self._wl2sq(p1u1, self.w_mid) + self._wl2sq(p1u2, self.w_mid)
        )
        out["w_p2u1"] = math.sqrt(self._wl2sq(p2u1, self.w_p2))
        out["w_u2"] = math.sqrt(self._wl2sq(u2, self.w_g))
        out["w_p1u2"] = math.sqrt(self._wl2sq(p1u2, self.w_g))
        diss_l2 = float(self.area * np.sum(self.diss_weight * usq))
        diss_hk = float(
            self.area * np.sum(self.diss_weight * self.hk_weight * usq)
        )
        return out, diss_l2, diss_hk

    def max_speed(self, omh: np.ndarray) -> float:
        u1h = 1j * self.xi2r * omh * self.inv_mag2
        u2h = -1j * self.xi1c * omh * self.inv_mag2
        return float(np.max(np.hypot(self.to_phys(u1h), self.to_phys(u2h))))


def _ordered(partial: dict[str, float], diss_int: float) -> dict[str, float]:
    merged = dict(partial)
    merged["diss_int"] = diss_int
    return {key: merged[key] for key in DIAG_KEYS}


def diagnostics_record(state: SimState, diss_int: float = 0.0) -> DiagnosticsRecord:
    """Compute the full battery for a state, with a caller-supplied integral."""
    engine = _DiagEngine(state.grid, state.params)
    partial, _, _ = engine.instantaneous(state.omega_hat.coeffs)
    return DiagnosticsRecord(state.t, _ordered(partial, diss_int))


def rhs_nonlinear(state: SimState) -> SpectralField2D:
    """-dealias(F[u . grad omega]) with the mean mode pinned to zero.

    The pinning encodes that divergence-free transport conserves the mean
    exactly; zeroing removes the roundoff drift that would otherwise
    accumulate against the mean-free state invariant.
    """
    u = biot_savart(state.omega_hat)
    adv = nonlinear_advection(u, state.omega_hat, dealias=True)
    out = -adv.coeffs
    out = out.copy()
    out[0, 0] = 0.0
    return SpectralField2D(state.grid, out)


def step(state: SimState, dt: float) -> SimState:
    """One integrating-factor RK4 step of length dt."""
    if not (math.isfinite(dt) and dt > 0):
        raise ValueError(f"dt must be positive and finite, got {dt!r}")
    ws = _Workspace(state.grid, state.params, dt)
    new = ws.step_array(state.omega_hat.coeffs)
    if not np.all(np.isfinite(new)):
        raise FloatingPointError(
            f"state became non-finite during the step starting at t = {state.t}"
        )
    return SimState(
        state.t + dt,
        SpectralField2D(state.grid, new),
        state.params,
        state.init_norms,
    )


def run(state: SimState, config: SolverConfig) -> RunResult:
    """March to t_end, recording diagnostics every diag_stride steps.

    t_end = 0 produces the single initial record. If the state goes
    non-finite the run stops and returns everything recorded so far, flagged
    as aborted; if the H^k norm exceeds ten times its initial value the run
    continues but carries an "instability-candidate" flag.
    """
    grid, params = state.grid, state.params
    engine = _DiagEngine(grid, params)
    omh = state.omega_hat.coeffs.copy()
    t = state.t
    t_end = state.t + config.t_end

    partial, diss_l2, diss_hk = engine.instantaneous(omh)
    diss_int = 0.0
    hk_int = 0.0
    records = [DiagnosticsRecord(t, _ordered(partial, diss_int))]
    hk_series = [hk_int]
    hk0 = max(partial["hk_u"], 1e-300)
    last_diss_l2, last_diss_hk, last_t = diss_l2, diss_hk, t

    flags: list[str] = []
    aborted = False
    abort_reason: str | None = None

    if config.t_end > 0:
        workspace: _Workspace | None = None
        while t < t_end - 1e-12 * max(1.0, t_end):
            if config.dt == "auto":
                speed = max(engine.max_speed(omh), 1e-12)
                dt_block = config.cfl * min(grid.h1, grid.h2) / speed
            else:
                dt_block = float(config.dt)
            stop = False
            for _ in range(config.diag_stride):
                dt_step = min(dt_block, t_end - t)
                if dt_step <= 1e-14 * max(1.0, t_end):
                    stop = True
                    break
                if workspace is None or workspace.dt != dt_step:
                    workspace = _Workspace(grid, params, dt_step)
                omh = workspace.step_array(omh)
                t += dt_step
                if not np.all(np.isfinite(omh)):
                    aborted = True
                    abort_reason = f"non-finite state at t = {t:.6g}"
                    stop = True
                    break
            if aborted:
                break
            partial, diss_l2, diss_hk = engine.instantaneous(omh)
            diss_int += 0.5 * (last_diss_l2 + diss_l2) * (t - last_t)
            hk_int += 0.5 * (last_diss_hk + diss_hk) * (t - last_t)
            last_diss_l2, last_diss_hk, last_t = diss_l2, diss_hk, t
            records.append(DiagnosticsRecord(t, _ordered(partial, diss_int)))
            hk_series.append(hk_int)
            if partial["hk_u"] > 10.0 * hk0 and "instability-candidate" not in flags:
                flags.append("instability-candidate")
            if stop:
                break

    final = SimState(
        t,
        SpectralField2D(grid, omh)
        if np.all(np.isfinite(omh))
        else state.omega_hat,
        params,
        state.init_norms,
    )
    return RunResult(
        records=tuple(records),
        final_state=final,
        aborted=aborted,
        abort_reason=abort_reason,
        flags=tuple(flags),
        extras={"hk_diss_int": tuple(hk_series)},
    )


def energy_ledger(
    records: Iterable[DiagnosticsRecord], nu: float
) -> EnergyLedger:
    """Relative drift of ||u(t)||^2 + 2 nu int_0^t ||Lambda_1^s u||^2 dtau.

    For the exact flow this quantity is constant in time; the drift of the
    discrete version (trapezoid integral at record times) measures scheme and
    quadrature error together.
    """
    recs = list(records)
    if not recs:
        raise ValueError("energy ledger needs at least one record")
    e0 = recs[0].norms["l2_u1"] ** 2 + recs[0].norms["l2_u2"] ** 2
    base = max(e0, 1e-300)
    drifts = tuple(
        (
            r.norms["l2_u1"] ** 2
            + r.norms["l2_u2"] ** 2
            + 2.0 * nu * r.norms["diss_int"]
            - e0
        )
        / base
        for r in recs
    )
    return EnergyLedger(drifts, max(abs(d) for d in drifts))


def hk_ledger_series(result: RunResult, nu: float) -> tuple[float, ...]:
    """||u||_{H^k}^2 + 2 nu int ||Lambda_1^s u||_{H^k}^2, per record.

    For the exact flow this is nonincreasing (the nonlinear transfer enters
    only through a bounded trilinear term); monotonicity within a small
    tolerance is the global-regularity ledger check.
    """
    hk_int = result.extras["hk_diss_int"]
    if len(hk_int) != len(result.records):
        raise ValueError("extras series and records are misaligned")
    return tuple(
        r.norms["hk_u"] ** 2 + 2.0 * nu * hi
        for r, hi in zip(result.records, hk_int)
    )


def _taylor_green(grid: Grid2D, eps: float) -> np.ndarray:
    for l, name in ((grid.l1, "l1"), (grid.l2, "l2")):
        m = l / (2.0 * math.pi)
        if abs(m - round(m)) > 1e-9:
            raise ValueError(
                f"taylor_green needs box lengths that are multiples of 2 pi, "
                f"got {name} = {l}"
            )
    x1, x2 = grid.meshgrid()
    return -2.0 * eps * np.cos(x1) * np.cos(x2)


def _banded_stream(grid: Grid2D, params: ModelParams) -> np.ndarray:
    """Raw stream function: low horizontal band times a vertical Gaussian.

    Coefficient magnitudes follow m^(sigma - 1/2), which puts the data right
    at the finiteness edge of the negative-order horizontal norm; that shape
    is what produces the reference decay rates the experiments fit against.
    The envelope is kept narrow relative to the box so that the vertical
    derivative dominates the velocity: u1 then carries the slow horizontal
    spectrum and u2 the derivative-weighted fast one, with little mixing in
    the weighted norms.
    """
    x1, x2 = grid.meshgrid()
    width = grid.l2 / 64.0
    psi = np.zeros_like(x1 * x2)
    for m in range(1, 9):
        xi = 2.0 * math.pi * m / grid.l1
        psi = psi + m ** (params.sigma - 0.5) * np.cos(xi * x1)
    return psi * np.exp(-(x2**2) / (2.0 * width**2))


def _random_band(grid: Grid2D, seed: int | None) -> np.ndarray:
    """Hermitian complex-Gaussian coefficients on a low band, zero mean."""
    rng = np.random.default_rng(0 if seed is None else seed)
    b1, b2 = max(grid.n1 // 8, 2), max(grid.n2 // 8, 2)
    raw = rng.normal(size=(2 * b1 + 1, 2 * b2 + 1)) + 1j * rng.normal(
        size=(2 * b1 + 1, 2 * b2 + 1)
    )
    a1 = np.arange(-b1, b1 + 1)[:, None]
    a2 = np.arange(-b2, b2 + 1)[None, :]
    raw /= 1.0 + a1**2 + a2**2
    table = 0.5 * (raw + np.conj(raw[::-1, ::-1]))
    table[b1, b2] = 0.0
    coeffs = np.zeros(grid.shape, dtype=np.complex128)
    idx1 = np.arange(-b1, b1 + 1) % grid.n1
    idx2 = np.arange(-b2, b2 + 1) % grid.n2
    coeffs[np.ix_(idx1, idx2)] = table
    return coeffs


def initial_norm_report(
    omega_hat: SpectralField2D, params: ModelParams
) -> dict[str, float]:
    """Size of the data in the norms the decay statements hypothesize on."""
    from .core import sobolev_norm
    from .weights import weight_samples

    grid = omega_hat.grid
    u = biot_savart(omega_hat)
    engine = _DiagEngine(grid, params)
    partial, _, _ = engine.instantaneous(omega_hat.coeffs)
    report = {
        "l2_u": math.hypot(partial["l2_u1"], partial["l2_u2"]),
        "hk_u": partial["hk_u"],
        "neg_hk_u": partial["neg_hk_u"],
    }
    w = weight_samples(grid, params.gamma)
    wu1 = RealField2D(grid, u.u1.samples * w)
    wu2 = RealField2D(grid, u.u2.samples * w)
    report["w_hk_u"] = math.hypot(
        sobolev_norm(wu1, params.k), sobolev_norm(wu2, params.k)
    )
    from .core import neg_horizontal_sobolev_norm

    n1, _ = neg_horizontal_sobolev_norm(wu1, params.sigma, params.k)
    n2, _ = neg_horizontal_sobolev_norm(wu2, params.sigma, params.k)
    report["w_neg_hk_u"] = math.hypot(n1, n2)
    return report


def init_from_preset(
    preset: str,
    grid: Grid2D,
    params: ModelParams,
    eps: float,
    seed: int | None = None,
) -> SimState:
    """Build an initial state from one of the named data families.

    ``taylor_green`` uses eps as the literal amplitude of the closed form
    omega = -2 eps cos(x1) cos(x2) (it is the exact-solution benchmark, not a
    small-data preset, so no hypothesis budget applies). ``banded_stream``
    and ``random_band`` scale their raw profile so the largest hypothesis
    norm equals eps exactly; the stored init_norms report what was measured.
    """
    if not (math.isfinite(eps) and eps > 0):
        raise ValueError(f"eps must be positive and finite, got {eps!r}")
    if preset == "taylor_green":
        omega = forward_transform(RealField2D(grid, _taylor_green(grid, eps)))
        state = SimState(0.0, omega, params)
        report = initial_norm_report(omega, params)
        return SimState(0.0, omega, params, report)
    if preset == "banded_stream":
        psi = forward_transform(RealField2D(grid, _banded_stream(grid, params)))
        mag2 = grid.xi1_col**2 + grid.xi2_row**2
        omega_raw = SpectralField2D(grid, -mag2 * psi.coeffs)
    elif preset == "random_band":
        omega_raw = SpectralField2D(grid, _random_band(grid, seed))
    else:
        raise ValueError(
            f"unknown preset {preset!r}; choose one of {INIT_PRESETS}"
        )
    report = initial_norm_report(omega_raw, params)
    budget = max(report.values())
    scale = eps / budget
    omega = SpectralField2D(grid, omega_raw.coeffs * scale)
    report = {key: value * scale for key, value in report.items()}
    if max(report.values()) > eps * (1.0 + 1e-9):
        raise ValueError(
            f"hypothesis norms exceed the budget eps = {eps}: {report}"
        )
    return SimState(0.0, omega, params, report)


def write_diagnostics_csv(records: Iterable[DiagnosticsRecord], path: str) -> None:
    """Plain CSV, pinned column order, 17 significant digits (round-trip safe)."""
    lines = ["t," + ",".join(DIAG_KEYS)]
    for rec in records:
        vals = [f"{rec.t:.17g}"] + [f"{rec.norms[k]:.17g}" for k in DIAG_KEYS]
        lines.append(",".join(vals))
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_diagnostics_csv(path: str) -> tuple[np.ndarray, dict[str, np.ndarray]]:
    """Read a diagnostics CSV; returns (times, column map). Tolerates extra
    columns so hand-made files with a subset of keys still fit the fitter."""
    with open(path, "r", encoding="ascii") as fh:
        header = fh.readline().strip().split(",")
        if not header or header[0] != "t":
            raise ValueError(f"{path}: first column must be 't', got {header[:1]}")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    data = np.array(rows, dtype=np.float64)
    if data.ndim != 2 or data.shape[1] != len(header):
        raise ValueError(f"{path}: ragged or empty CSV")
    return data[:, 0], {name: data[:, i] for i, name in enumerate(header) if i > 0}
