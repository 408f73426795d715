#!/usr/bin/env python3
"""A full decay experiment at desk scale: run, grade, and write artifacts.

The shipped presets (thm3-default and friends) run at 512 x 256 for
hundreds of time units; this script builds a shrunken preset in the same
small-s regime and walks the same pipeline in a few seconds: solve, fit
every predicted norm, grade each fit consistent / inconclusive /
violation-candidate against the rate table, and emit the three artifacts
(series CSV, verdict JSON, plot description) into ./demo-out.

The inconclusive grade is the interesting one: the box spectral gap means
only a bounded stretch of algebraic decay fits into any window, so each
fit is compared against the same fit applied to the pure semigroup flow of
the same data. When even the linear flow cannot show the predicted rate in
the window, a slow nonlinear fit proves nothing, and the verdict says so.
"""

import math

from anslab.experiments import ExperimentPreset, emit_report, run_experiment
from anslab.operators import ModelParams
from anslab.solver import SolverConfig

if __name__ == "__main__":
    preset = ExperimentPreset(
        name="rem13-desk",
        regime="rem13",
        n1=64,
        n2=192,
        l1=4.0 * math.pi,
        l2=4.0 * math.pi,
        params=ModelParams(nu=0.05, s=0.5, sigma=0.4, gamma=0.0, k=10),
        config=SolverConfig(dt=0.05, t_end=3.5),
        eps=1e-3,
    )
    print(f"running {preset.name}: {preset.n1} x {preset.n2}, "
          f"t_end = {preset.config.t_end}")
    bundle = run_experiment(preset)

    print(f"\nfit window: [{bundle.window[0]:.2f}, {bundle.window[1]:.2f}]")
    print(f"{'key':28s} {'status':16s} {'fitted':>8s} {'predicted':>10s} {'linear':>8s}")
    for v in bundle.verdicts:
        fitted = "-" if v.fitted is None else f"{v.fitted:8.4f}"
        pred = "-" if v.predicted is None else f"{v.predicted:10.4f}"
        lin = "-" if v.linear_achievable is None else f"{v.linear_achievable:8.4f}"
        print(f"{v.key:28s} {v.status:16s} {fitted:>8s} {pred:>10s} {lin:>8s}")
    print(f"\noverall: {bundle.overall()}")

    paths = emit_report(bundle, "demo-out")
    for tag, path in paths.items():
        print(f"wrote {tag:5s} {path}")
