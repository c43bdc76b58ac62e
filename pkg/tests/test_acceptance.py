"""Acceptance gate: every check in the verification suite, one line each.

Each test runs one suite check at seed 0, prints a single PASS or FAIL
line naming the check, and asserts the verdict.  Running this module
directly (``python3 tests/test_acceptance.py``) prints the twelve lines
without pytest capture.
"""

import sys

from lpgeom.suite import (
    check_ball_classification,
    check_cone_projection_identities,
    check_duality_identity_sweep,
    check_duality_map_regression,
    check_face_examples,
    check_fixed_point_and_dual_vision,
    check_generalized_double_duality,
    check_intersection_dual_union,
    check_metric_double_dual_gap,
    check_metric_dual_cone_nonconvexity,
    check_primal_vision_nonconvexity,
    check_projection_solver_oracle,
)

_CHECKS = (
    check_duality_map_regression,
    check_duality_identity_sweep,
    check_metric_dual_cone_nonconvexity,
    check_metric_double_dual_gap,
    check_cone_projection_identities,
    check_projection_solver_oracle,
    check_generalized_double_duality,
    check_intersection_dual_union,
    check_face_examples,
    check_ball_classification,
    check_fixed_point_and_dual_vision,
    check_primal_vision_nonconvexity,
)


def _gate(check):
    record = check(seed=0)
    line = f"{'PASS' if record.status == 'pass' else 'FAIL'}: {record.check_id}"
    print(line)
    assert record.status == "pass", f"{record.check_id}: {record.values}"
    return record


def test_duality_map_regression():
    _gate(check_duality_map_regression)


def test_duality_identity_sweep():
    _gate(check_duality_identity_sweep)


def test_metric_dual_cone_nonconvexity():
    _gate(check_metric_dual_cone_nonconvexity)


def test_metric_double_dual_gap():
    _gate(check_metric_double_dual_gap)


def test_cone_projection_identities():
    _gate(check_cone_projection_identities)


def test_projection_solver_oracle():
    _gate(check_projection_solver_oracle)


def test_generalized_double_duality():
    _gate(check_generalized_double_duality)


def test_intersection_dual_union():
    _gate(check_intersection_dual_union)


def test_face_examples():
    _gate(check_face_examples)


def test_ball_classification():
    _gate(check_ball_classification)


def test_fixed_point_and_dual_vision():
    _gate(check_fixed_point_and_dual_vision)


def test_primal_vision_nonconvexity():
    _gate(check_primal_vision_nonconvexity)


if __name__ == "__main__":
    failures = 0
    for chk in _CHECKS:
        rec = chk(seed=0)
        print(f"{'PASS' if rec.status == 'pass' else 'FAIL'}: {rec.check_id}")
        failures += rec.status != "pass"
    sys.exit(1 if failures else 0)
