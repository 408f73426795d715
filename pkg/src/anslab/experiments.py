"""Decay experiments: preset catalog, rate tables, verdicts, and reports.

An experiment runs the solver on preset initial data, fits the decay
exponent of every norm key its rate table predicts, and grades each key
consistent, inconclusive, or violation-candidate. The inconclusive grade
comes from a resolvability guard: the same fit applied to the pure
semigroup evolution of the same initial data over the same window. The
periodic box has a spectral gap, so only a bounded stretch of algebraic
decay fits into any window; when even the linear flow cannot exhibit the
predicted rate there, a slow nonlinear fit proves nothing either way.

Grading is one-sided throughout: the predictions are upper bounds on the
norms, so decaying faster than predicted is always consistent, and a
violation-candidate is a flag for human review printed together with the
discretization caveat, never a claim by itself.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .core import Grid2D
from .fitting import FitResult, default_fit_window, fit_power_law
from .operators import ModelParams, frac_heat_propagate
from .solver import (
    DIAG_KEYS,
    DiagnosticsRecord,
    RunResult,
    SimState,
    SolverConfig,
    diagnostics_record,
    init_from_preset,
    run,
    write_diagnostics_csv,
)

__all__ = [
    "SCHEMA_VERSION",
    "REGIMES",
    "STATUS_CONSISTENT",
    "STATUS_INCONCLUSIVE",
    "STATUS_VIOLATION",
    "TheoryPrediction",
    "ExperimentPreset",
    "Verdict",
    "ExperimentBundle",
    "box_gap",
    "predicted_exponents",
    "get_preset",
    "preset_names",
    "run_experiment",
    "overall_status",
    "report_json",
    "plot_description",
    "emit_report",
]

SCHEMA_VERSION = 1

REGIMES = ("thm1", "thm3", "rem13", "thm4")

STATUS_CONSISTENT = "consistent"
STATUS_INCONCLUSIVE = "inconclusive"
STATUS_VIOLATION = "violation-candidate"
_STATUS_RANK = {STATUS_CONSISTENT: 0, STATUS_INCONCLUSIVE: 1, STATUS_VIOLATION: 2}

_CAVEAT = (
    "finite box, finite resolution, and a finite fit window all bias fitted "
    "exponents; review before reading anything into this"
)

# Ordering checks per regime: (faster key, slower key, margin). A margin of
# None means half the predicted exponent gap between the two keys, the same
# half-strength convention the derivative-gap acceptance checks use.
_ORDERINGS: dict[str, tuple[tuple[str, str, float | None], ...]] = {
    "thm1": (),
    "thm3": (("l2_u2", "l2_u1", -0.05), ("l2_p1u1", "l2_u1", None)),
    "rem13": (("l2_u2", "l2_u1", -0.05),),
    "thm4": (("w_u2", "w_u", None),),
}


def box_gap(params: ModelParams, l1: float, t_end: float) -> float:
    """nu (2 pi / l1)^(2s) t_end: linear decay of the box fundamental.

    Keeping this at or below 0.1 makes the slowest mode's exponential factor
    indistinguishable from 1 over the run, which is what lets algebraic
    decay show at all on a periodic surrogate of the whole plane.
    """
    return params.nu * (2.0 * math.pi / l1) ** (2.0 * params.s) * t_end


@dataclass(frozen=True)
class TheoryPrediction:
    """Predicted decay exponents, keyed by diagnostic norm.

    A value p for key means the norm is predicted to be O((1+t)^-p). Only
    the keys the tagged regime actually covers appear; the global-bound
    regime (thm1) has an empty table because it predicts boundedness, not
    rates.
    """

    regime: str
    exponents: Mapping[str, float]

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}; choose from {REGIMES}")
        for key, value in self.exponents.items():
            if key not in DIAG_KEYS:
                raise ValueError(f"prediction key {key!r} is not a diagnostic norm")
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"predicted exponent for {key} must be > 0, got {value!r}")


def predicted_exponents(params: ModelParams, regime: str) -> TheoryPrediction:
    """Evaluate the decay-rate table of a regime at the given parameters.

    Pure arithmetic in (s, sigma); gamma moves the weights, not the rates.
    Parameters outside the regime are rejected naming each violated
    constraint, which keeps accidental cross-regime reads loud.
    """
    if regime not in REGIMES:
        raise ValueError(f"unknown regime {regime!r}; choose from {REGIMES}")
    status = params.regime_report()[regime]
    if not status.satisfied:
        raise ValueError(
            f"params violate the {regime} regime: " + "; ".join(status.failures)
        )
    s, sg = params.s, params.sigma
    table: dict[str, float]
    if regime == "thm1":
        table = {}
    elif regime == "thm3":
        table = {
            "l2_u1": sg / (2.0 * s),
            "l2_u2": (sg + 2.0 / 3.0) / (2.0 * s),
            "l2_p1u1": (sg + 1.0) / (2.0 * s),
            "l2_p2u1": sg / (2.0 * s),
            "l2_p1u2": 2.0 * sg / s,
        }
    elif regime == "rem13":
        table = {
            "l2_u1": sg / (2.0 * s),
            "l2_u2": (4.0 * sg + 1.0) / (4.0 * s),
            "l2_p1u1": (sg + 1.0) / (2.0 * s),
            "l2_p1u2": (2.0 * sg + 1.0) / (2.0 * s),
        }
    else:
        table = {
            "w_u": sg / (2.0 * s),
            "w_p1u": (sg + 1.0) / (2.0 * s),
            "w_p2u1": sg / (2.0 * s),
            "w_u2": (sg + 1.0) / (2.0 * s),
            "w_p1u2": (2.0 * sg + 1.0) / (2.0 * s),
        }
    return TheoryPrediction(regime=regime, exponents=table)


@dataclass(frozen=True)
class ExperimentPreset:
    """Everything one experiment needs: grid, parameters, stepping, data, window.

    Validation enforces the two hard invariants: the parameters must sit
    inside the regime whose rate table the experiment is graded against,
    and the box-gap number must not exceed 0.1 (see :func:`box_gap`).
    """

    name: str
    regime: str
    n1: int
    n2: int
    l1: float
    l2: float
    params: ModelParams
    config: SolverConfig
    init_preset: str = "banded_stream"
    eps: float = 1e-3
    seed: int | None = None
    window: tuple[float, float] | None = None
    tolerance: float = 0.2

    def __post_init__(self) -> None:
        if self.regime not in REGIMES:
            raise ValueError(f"unknown regime {self.regime!r}; choose from {REGIMES}")
        status = self.params.regime_report()[self.regime]
        if not status.satisfied:
            raise ValueError(
                f"preset {self.name!r} violates the {self.regime} regime: "
                + "; ".join(status.failures)
            )
        gap = box_gap(self.params, self.l1, self.config.t_end)
        if gap > 0.1 + 1e-12:
            raise ValueError(
                f"preset {self.name!r} breaks the box-gap condition: "
                f"nu (2 pi/l1)^(2s) t_end = {gap:.4g} > 0.1"
            )
        if not (0.0 < self.tolerance < 1.0):
            raise ValueError(f"tolerance must lie in (0, 1), got {self.tolerance!r}")
        if self.window is not None and not (self.window[0] < self.window[1]):
            raise ValueError(f"empty fit window {self.window}")

    def grid(self) -> Grid2D:
        return Grid2D(self.n1, self.n2, self.l1, self.l2)

    def predictions(self) -> TheoryPrediction:
        return predicted_exponents(self.params, self.regime)


def _catalog() -> dict[str, ExperimentPreset]:
    box = 64.0 * math.pi
    return {
        "thm1-default": ExperimentPreset(
            name="thm1-default",
            regime="thm1",
            n1=512,
            n2=256,
            l1=box,
            l2=box,
            params=ModelParams(nu=0.05, s=0.5, sigma=0.4, gamma=0.0, k=3),
            config=SolverConfig(dt=0.1, t_end=50.0, diag_stride=1),
            eps=1e-6,
        ),
        "thm3-default": ExperimentPreset(
            name="thm3-default",
            regime="thm3",
            n1=512,
            n2=256,
            l1=box,
            l2=box,
            params=ModelParams(nu=0.05, s=0.8, sigma=0.4, gamma=0.0, k=10),
            config=SolverConfig(dt=0.5, t_end=500.0, diag_stride=5),
            eps=1e-3,
            window=(220.0, 500.0),
        ),
        "rem13-default": ExperimentPreset(
            name="rem13-default",
            regime="rem13",
            n1=512,
            n2=256,
            l1=box,
            l2=box,
            params=ModelParams(nu=0.02, s=0.5, sigma=0.4, gamma=0.0, k=10),
            config=SolverConfig(dt=0.5, t_end=150.0, diag_stride=1),
            eps=1e-3,
        ),
        "thm4-default": ExperimentPreset(
            name="thm4-default",
            regime="thm4",
            n1=512,
            n2=256,
            l1=box,
            l2=box,
            params=ModelParams(nu=0.05, s=0.8, sigma=0.45, gamma=0.2, k=31),
            config=SolverConfig(dt=0.5, t_end=500.0, diag_stride=5),
            eps=1e-3,
            window=(250.0, 500.0),
        ),
    }


def preset_names() -> tuple[str, ...]:
    return tuple(_catalog().keys())


def get_preset(name: str) -> ExperimentPreset:
    catalog = _catalog()
    if name not in catalog:
        known = ", ".join(sorted(catalog))
        raise KeyError(f"unknown preset {name!r}; shipped presets: {known}")
    return catalog[name]


@dataclass(frozen=True)
class Verdict:
    """One graded check. fitted / predicted / linear_achievable are decay
    exponents (positive means decay), already negated from the raw log-log
    slopes; checks without a rate leave them None."""

    key: str
    status: str
    fitted: float | None = None
    predicted: float | None = None
    linear_achievable: float | None = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.status not in _STATUS_RANK:
            raise ValueError(f"unknown verdict status {self.status!r}")


def overall_status(verdicts: tuple[Verdict, ...]) -> str:
    """Worst single status; an empty set of checks is degenerately consistent."""
    worst = STATUS_CONSISTENT
    for v in verdicts:
        if _STATUS_RANK[v.status] > _STATUS_RANK[worst]:
            worst = v.status
    return worst


@dataclass(frozen=True)
class ExperimentBundle:
    """Run records plus everything derived from them.

    ``fits`` hold the raw data fits and ``linear_fits`` the semigroup
    reference fits, both as log-log slopes; ``window`` is the window the
    fits actually used (the preset's, or the default rule's output).
    ``result`` keeps the full solver output for ledger-style checks; it is
    not serialized.
    """

    preset: ExperimentPreset
    records: tuple[DiagnosticsRecord, ...]
    prediction: TheoryPrediction
    fits: tuple[FitResult, ...] = ()
    linear_fits: tuple[FitResult, ...] = ()
    verdicts: tuple[Verdict, ...] = ()
    window: tuple[float, float] | None = None
    flags: tuple[str, ...] = ()
    aborted: bool = False
    abort_reason: str | None = None
    result: RunResult | None = field(default=None, compare=False)

    def overall(self) -> str:
        return overall_status(self.verdicts)

    @classmethod
    def empty(cls, preset: ExperimentPreset) -> "ExperimentBundle":
        return cls(
            preset=preset,
            records=(),
            prediction=TheoryPrediction(regime=preset.regime, exponents={}),
        )


def _linear_reference_records(
    state: SimState, times: np.ndarray
) -> tuple[DiagnosticsRecord, ...]:
    """Diagnostics of the pure semigroup flow of the data at the given times."""
    out = []
    for t in times:
        prop = frac_heat_propagate(state.omega_hat, state.params, float(t))
        out.append(
            diagnostics_record(SimState(float(t), prop, state.params, state.init_norms))
        )
    return tuple(out)


def _sup_verdict(key: str, values: np.ndarray, factor: float = 2.0) -> Verdict:
    v0 = float(values[0])
    vmax = float(np.max(values))
    if vmax == 0.0:
        return Verdict(
            key, STATUS_CONSISTENT, note="series identically zero; bound holds degenerately"
        )
    if vmax <= factor * v0:
        return Verdict(
            key,
            STATUS_CONSISTENT,
            note=f"sup {vmax:.6g} within {factor:g} x initial {v0:.6g}",
        )
    return Verdict(
        key,
        STATUS_VIOLATION,
        note=(
            f"sup {vmax:.6g} exceeds {factor:g} x initial {v0:.6g}; " + _CAVEAT
        ),
    )


def run_experiment(preset: ExperimentPreset) -> ExperimentBundle:
    """Run the preset and grade it against its rate table.

    Per predicted key: decay at or above (1 - tolerance) x predicted is
    consistent; below that, the verdict is inconclusive when the semigroup
    reference shows the window could not certify the rate in the first
    place, and violation-candidate when it could. Regime-specific ordering
    checks (the faster component must be measured faster) and the bound on
    the norm the hypotheses cap ride along as extra verdicts.

    A solver abort still yields a bundle: whatever was recorded is graded,
    keys whose fits became impossible go inconclusive, and the abort is
    flagged.
    """
    grid = preset.grid()
    state = init_from_preset(
        preset.init_preset, grid, preset.params, preset.eps, preset.seed
    )
    result = run(state, preset.config)
    prediction = preset.predictions()

    times = np.array([r.t for r in result.records], dtype=np.float64)
    window: tuple[float, float] | None
    if preset.window is not None:
        window = preset.window
    elif times.size >= 2:
        window = default_fit_window(times)
    else:
        window = None

    series = {
        key: np.array([r.norms[key] for r in result.records], dtype=np.float64)
        for key in DIAG_KEYS
    }
    predicted_keys = [key for key in DIAG_KEYS if key in prediction.exponents]

    linear_map: dict[str, float] = {}
    linear_fits: list[FitResult] = []
    need_linear = (
        window is not None
        and any(float(np.max(series[key])) > 0.0 for key in predicted_keys)
    )
    if need_linear:
        lo, hi = window
        in_window = times[(times >= lo) & (times <= hi)]
        lin_records = _linear_reference_records(state, in_window)
        for key in predicted_keys:
            vals = np.array([r.norms[key] for r in lin_records], dtype=np.float64)
            try:
                fit = fit_power_law(in_window, vals, window, key=key)
            except ValueError:
                continue
            linear_fits.append(fit)
            linear_map[key] = -fit.exponent

    fits: list[FitResult] = []
    fitted_map: dict[str, float] = {}
    degenerate_keys: set[str] = set()
    verdicts: list[Verdict] = []
    for key in predicted_keys:
        pred = prediction.exponents[key]
        vals = series[key]
        if float(np.max(vals)) == 0.0:
            degenerate_keys.add(key)
            verdicts.append(
                Verdict(
                    key,
                    STATUS_CONSISTENT,
                    predicted=pred,
                    note="series identically zero; decay bound holds degenerately",
                )
            )
            continue
        try:
            fit = fit_power_law(times, vals, window, key=key)
        except ValueError as exc:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_INCONCLUSIVE,
                    predicted=pred,
                    note=f"fit unavailable: {exc}",
                )
            )
            continue
        fits.append(fit)
        fitted = -fit.exponent
        fitted_map[key] = fitted
        threshold = pred * (1.0 - preset.tolerance)
        linear = linear_map.get(key)
        if fitted >= threshold:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_CONSISTENT,
                    fitted=fitted,
                    predicted=pred,
                    linear_achievable=linear,
                    note=(
                        f"fitted decay {fitted:.4f} meets threshold {threshold:.4f} "
                        f"(predicted {pred:.4f})"
                    ),
                )
            )
        elif linear is None or linear < threshold:
            lin_txt = "unavailable" if linear is None else f"{linear:.4f}"
            verdicts.append(
                Verdict(
                    key,
                    STATUS_INCONCLUSIVE,
                    fitted=fitted,
                    predicted=pred,
                    linear_achievable=linear,
                    note=(
                        f"window cannot certify the rate: semigroup reference fits "
                        f"{lin_txt}, below threshold {threshold:.4f}; measured {fitted:.4f}"
                    ),
                )
            )
        else:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_VIOLATION,
                    fitted=fitted,
                    predicted=pred,
                    linear_achievable=linear,
                    note=(
                        f"fitted decay {fitted:.4f} misses threshold {threshold:.4f} "
                        f"although the semigroup reference reaches {linear:.4f}; "
                        + _CAVEAT
                    ),
                )
            )

    for fast, slow, margin in _ORDERINGS[preset.regime]:
        key = f"ordering_{fast}_vs_{slow}"
        if margin is None:
            margin = 0.5 * (prediction.exponents[fast] - prediction.exponents[slow])
        if fast in degenerate_keys and slow in degenerate_keys:
            verdicts.append(
                Verdict(key, STATUS_CONSISTENT, note="both series identically zero")
            )
            continue
        if fast not in fitted_map or slow not in fitted_map:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_INCONCLUSIVE,
                    note="ordering needs both fits; at least one is unavailable",
                )
            )
            continue
        gap = fitted_map[fast] - fitted_map[slow]
        lin_gap = None
        if fast in linear_map and slow in linear_map:
            lin_gap = linear_map[fast] - linear_map[slow]
        if gap >= margin:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_CONSISTENT,
                    fitted=gap,
                    predicted=margin,
                    linear_achievable=lin_gap,
                    note=(
                        f"{fast} decays faster than {slow} by {gap:.4f} "
                        f"(margin {margin:.4f})"
                    ),
                )
            )
        elif margin > 0 and (lin_gap is None or lin_gap < margin):
            lin_txt = "unavailable" if lin_gap is None else f"{lin_gap:.4f}"
            verdicts.append(
                Verdict(
                    key,
                    STATUS_INCONCLUSIVE,
                    fitted=gap,
                    predicted=margin,
                    linear_achievable=lin_gap,
                    note=(
                        f"window cannot separate the pair: semigroup reference "
                        f"gap {lin_txt} under margin {margin:.4f}; measured {gap:.4f}"
                    ),
                )
            )
        else:
            verdicts.append(
                Verdict(
                    key,
                    STATUS_VIOLATION,
                    fitted=gap,
                    predicted=margin,
                    linear_achievable=lin_gap,
                    note=(
                        f"measured gap {gap:.4f} under margin {margin:.4f} "
                        f"although the semigroup reference separates the pair; "
                        + _CAVEAT
                    ),
                )
            )

    if preset.regime == "thm1":
        verdicts.append(_sup_verdict("sup_hk_u", series["hk_u"]))
    else:
        verdicts.append(_sup_verdict("sup_neg_hk_u", series["neg_hk_u"]))

    flags = list(result.flags)
    if result.aborted:
        flags.append("aborted")

    return ExperimentBundle(
        preset=preset,
        records=result.records,
        prediction=prediction,
        fits=tuple(fits),
        linear_fits=tuple(linear_fits),
        verdicts=tuple(verdicts),
        window=window,
        flags=tuple(flags),
        aborted=result.aborted,
        abort_reason=result.abort_reason,
        result=result,
    )


def _fit_doc(fit: FitResult, kind: str) -> dict:
    return {
        "kind": kind,
        "key": fit.key,
        "exponent": float(fit.exponent),
        "stderr": float(fit.stderr),
        "window": [float(fit.window[0]), float(fit.window[1])],
        "n_points": int(fit.n_points),
    }


def report_json(bundle: ExperimentBundle) -> str:
    """The JSON verdict document, serialized deterministically.

    Key order is sorted and floats use repr round-tripping, so two bundles
    from identical runs serialize to identical bytes.
    """
    preset = bundle.preset
    doc = {
        "schema_version": SCHEMA_VERSION,
        "preset": preset.name,
        "regime": preset.regime,
        "grid": {
            "n1": preset.n1,
            "n2": preset.n2,
            "l1": float(preset.l1),
            "l2": float(preset.l2),
        },
        "params": {
            "nu": float(preset.params.nu),
            "s": float(preset.params.s),
            "sigma": float(preset.params.sigma),
            "gamma": float(preset.params.gamma),
            "k": int(preset.params.k),
        },
        "config": {
            "dt": preset.config.dt
            if isinstance(preset.config.dt, str)
            else float(preset.config.dt),
            "t_end": float(preset.config.t_end),
            "cfl": float(preset.config.cfl),
            "diag_stride": int(preset.config.diag_stride),
        },
        "init_preset": preset.init_preset,
        "eps": float(preset.eps),
        "seed": preset.seed,
        "tolerance": float(preset.tolerance),
        "window": None
        if bundle.window is None
        else [float(bundle.window[0]), float(bundle.window[1])],
        "n_records": len(bundle.records),
        "aborted": bundle.aborted,
        "abort_reason": bundle.abort_reason,
        "flags": list(bundle.flags),
        "predictions": [
            {"key": key, "exponent": float(bundle.prediction.exponents[key])}
            for key in DIAG_KEYS
            if key in bundle.prediction.exponents
        ],
        "fits": [_fit_doc(f, "data") for f in bundle.fits]
        + [_fit_doc(f, "linear-reference") for f in bundle.linear_fits],
        "verdicts": [
            {
                "key": v.key,
                "status": v.status,
                "fitted": v.fitted,
                "predicted": v.predicted,
                "linear_achievable": v.linear_achievable,
                "note": v.note,
            }
            for v in bundle.verdicts
        ],
        "overall": bundle.overall(),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def plot_description(bundle: ExperimentBundle, series_file: str) -> str:
    """Declarative plot file: one stanza per predicted key.

    Line format (all floats %.17g, documented in the README): a header
    naming the format and the CSV, then per key a ``plot`` block giving the
    columns, the log transforms, the fit window, and exactly one guide line
    through (anchor-t, anchor-value) with slope -predicted in the
    transformed coordinates.
    """
    lines = [
        f"anslab-plot-description {SCHEMA_VERSION}",
        f"preset {bundle.preset.name}",
        f"series-file {series_file}",
    ]
    if not bundle.records:
        return "\n".join(lines) + "\n"
    times = np.array([r.t for r in bundle.records], dtype=np.float64)
    for key in DIAG_KEYS:
        if key not in bundle.prediction.exponents:
            continue
        pred = bundle.prediction.exponents[key]
        vals = np.array([r.norms[key] for r in bundle.records], dtype=np.float64)
        if bundle.window is not None:
            lo, hi = bundle.window
            idx = np.nonzero((times >= lo) & (times <= hi))[0]
            anchor = int(idx[0]) if idx.size else 0
        else:
            anchor = 0
        lines.append(f"plot {key}")
        lines.append("  xcolumn t")
        lines.append(f"  ycolumn {key}")
        lines.append("  xtransform log1p")
        lines.append("  ytransform log")
        if bundle.window is not None:
            lines.append(f"  window {bundle.window[0]:.17g} {bundle.window[1]:.17g}")
        lines.append(f"  guide-slope {-pred:.17g}")
        lines.append(f"  guide-anchor-t {times[anchor]:.17g}")
        lines.append(f"  guide-anchor-value {vals[anchor]:.17g}")
        lines.append("end")
    return "\n".join(lines) + "\n"


def emit_report(bundle: ExperimentBundle, out_dir: str | Path) -> dict[str, Path]:
    """Write the three artifacts and return their paths.

    ``<name>-series.csv`` in the solver CSV format, ``<name>-report.json``
    (see :func:`report_json`), and ``<name>-plots.txt`` (see
    :func:`plot_description`). All three are deterministic byte for byte
    given an identical bundle.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    base = bundle.preset.name
    csv_path = out / f"{base}-series.csv"
    write_diagnostics_csv(bundle.records, str(csv_path))
    json_path = out / f"{base}-report.json"
    json_path.write_text(report_json(bundle), encoding="ascii")
    plots_path = out / f"{base}-plots.txt"
    plots_path.write_text(plot_description(bundle, csv_path.name), encoding="ascii")
    return {"csv": csv_path, "json": json_path, "plots": plots_path}
