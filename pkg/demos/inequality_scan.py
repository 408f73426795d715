#!/usr/bin/env python3
"""Scan a few certified inequality cases and one planted counterexample.

Each analytic estimate ships as a LemmaCase: an id, parameters inside the
hypotheses, and a recipe that evaluates both sides on random smooth fields.
The suite samples fields at two resolutions and watches the ratio
lhs / rhs. For a true estimate the ratio family stays bounded under
refinement (the constant is what it is, but it stops moving). The negative
controls carry parameters the hypotheses forbid, and the same machinery is
expected to catch them: their ratio maxima must grow monotonically across
a ladder of refinements, otherwise the harness could not have certified
anything in the first place.
"""

from anslab.inequalities import default_cases, run_suite

if __name__ == "__main__":
    cases = default_cases(include_controls=True)
    # a slice across the catalog: products, semigroup, Riesz composition,
    # plus both shipped negative controls (the labels carry a bang)
    wanted = ("L21", "L23", "L27", "L212")
    picks = [c for c in cases if c.id in wanted and not c.negative_control]
    picks += [c for c in cases if c.negative_control]

    report = run_suite(seed=11, n_samples=20, resolutions=(64, 128), cases=picks)

    print(f"{'case':38s} {'verdict':8s} detail")
    for summary in report.summaries:
        tag = "ok" if summary.passed else "FAIL"
        if summary.case.negative_control:
            ladder = " -> ".join(f"{lv.max_ratio:.3g}" for lv in summary.levels)
            print(f"{summary.case.label():38s} {tag:8s} ratio maxima {ladder}")
        else:
            print(
                f"{summary.case.label():38s} {tag:8s} "
                f"max {summary.max_ratio:.3g}, median {summary.median_ratio:.3g}, "
                f"drift {summary.drift:.1%}"
            )
    print(f"\nsuite passed: {report.passed}")
    print("(controls count as passed when the ladder grows: the harness saw")
    print(" the violation it was built to see)")
