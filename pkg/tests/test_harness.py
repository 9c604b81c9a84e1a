import numpy as np
import pytest

from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.oracle import affine_arc_quadrature
from numsig.curves.partition import PartitionKind
from numsig.errors import InvalidOption, SingularParametrization
from numsig.harness.convergence import (StudyConfig, Quantity, ExpansionId, ReportFlag, run_convergence,
                                        residual_order, torsion_gap_study, fit_slope)
from numsig.harness.study_session import StudySession
from numsig.signatures.affine2 import AffineVariant, affine_segment_length
from numsig.signatures.euclid2 import EuclidVariant
from numsig.signatures.euclid3 import TorsionVariant

POLAR = {"eps": 0.1, "k": 1}
TREFOIL = {"eps": 0.1, "k": 3}
# r = 1 + 0.1 cos 3t has zero curvature at t = pi / 3; stay on a convex arc
ARC = (-0.6, 0.6)
# central stretch of ARC, scored identically at every scale
ARC_CORE = (-0.3, 0.3)
# the 0.1 scale is pre-asymptotic on the trefoil arc
AFFINE_SCALES = (0.05, 0.025, 0.0125, 0.00625)


@pytest.mark.parametrize("variant", [EuclidVariant.S3, EuclidVariant.S4, EuclidVariant.S5])
def test_corrected_kappa_s_converges(variant):
    report = run_convergence(StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, variant=variant))
    assert report.monotone
    assert report.slope >= 0.8


@pytest.mark.parametrize("variant", [EuclidVariant.S1, EuclidVariant.S2])
def test_original_kappa_s_stalls(variant):
    report = run_convergence(StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, variant=variant))
    assert report.slope <= 0.3


def test_kappa_expansion_remainder_is_second_order():
    report = residual_order(StudyConfig("polar_cos", curve_params=POLAR), ExpansionId.EUCLID2_KAPPA)
    assert 1.8 <= report.slope <= 2.5


def test_corrected_affine_kappa_s_converges():
    report = run_convergence(StudyConfig("polar_cos", Quantity.AFFINE_KAPPA_S, TREFOIL, t_range=ARC,
                                         score_range=ARC_CORE, scales=AFFINE_SCALES,
                                         variant=AffineVariant.NEW))
    assert report.slope >= 0.8


def test_original_affine_kappa_s_stalls():
    report = run_convergence(StudyConfig("polar_cos", Quantity.AFFINE_KAPPA_S, TREFOIL, t_range=ARC,
                                         score_range=ARC_CORE, scales=AFFINE_SCALES,
                                         variant=AffineVariant.OLD))
    assert report.slope <= 0.3


def test_affine_expansion_remainder():
    report = residual_order(StudyConfig("polar_cos", curve_params=TREFOIL, t_range=ARC, score_range=ARC_CORE,
                                        scales=AFFINE_SCALES), ExpansionId.AFFINE_KAPPA)
    assert report.slope >= 1.5


@pytest.mark.parametrize("quantity, variant, tau_variant", [
    (Quantity.KAPPA, None, TorsionVariant.T1),
    (Quantity.KAPPA_S, EuclidVariant.S5, TorsionVariant.T1),
    (Quantity.TAU, None, TorsionVariant.T1),
    (Quantity.TAU, None, TorsionVariant.T2),
    (Quantity.TAU_S, None, TorsionVariant.T1),
])
def test_sqrt_helix_errors_shrink(quantity, variant, tau_variant):
    report = run_convergence(StudyConfig("sqrt_helix", quantity, variant=variant, tau_variant=tau_variant))
    assert report.monotone
    assert report.max_errors[-1] <= 0.25 * report.max_errors[0]


@pytest.mark.parametrize("expansion_id", [ExpansionId.TAU1, ExpansionId.TAU2])
def test_torsion_expansions_are_second_order(expansion_id):
    assert residual_order(StudyConfig("sqrt_helix"), expansion_id).slope >= 1.8


def test_space_kappa_expansion_remainder_is_second_order():
    assert residual_order(StudyConfig("sqrt_helix"), ExpansionId.EUCLID3_KAPPA).slope >= 1.8


def test_printed_tau2_coefficient_is_first_order_only():
    assert residual_order(StudyConfig("sqrt_helix"), ExpansionId.TAU2_PRINTED).slope < 1.5


def test_torsion_gap_tends_to_limit():
    report = torsion_gap_study(StudyConfig("sqrt_helix"))
    relative = report.relative_max_errors()
    assert report.slope >= 0.8
    assert relative[-1] < relative[0]
    assert relative[-1] <= 0.1


def test_three_point_affine_length_is_second_order():
    model = builtin_curve("polar_cos", **TREFOIL)
    scales = (0.1, 0.05, 0.025, 0.0125)
    errors = []
    for dt in scales:
        ts = np.arange(ARC[0], ARC[1] + 1e-12, dt)
        pts = model.sample(ts)
        errors.append(max(abs(affine_segment_length(pts[j], pts[j + 1], pts[j + 2])
                              - affine_arc_quadrature(model, ts[j], ts[j + 1]))
                          for j in range(len(ts) - 2)))
    assert fit_slope(scales, errors) >= 1.8


def test_circle_is_exact():
    report = run_convergence(StudyConfig("circle", Quantity.KAPPA))
    assert ReportFlag.EXACT in report.flags
    assert report.slope is None
    assert "slope n/a" in report.summary()


def test_two_scales_are_low_confidence():
    report = run_convergence(StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, scales=(0.1, 0.05)))
    assert ReportFlag.LOW_CONFIDENCE in report.flags
    assert len(report.rows()) == 2


def test_reports_are_deterministic():
    cfg = StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, partition=PartitionKind.JITTER,
                      scales=(0.1, 0.05, 0.025), seed=11)
    first, second = run_convergence(cfg), run_convergence(cfg)
    assert first == second
    assert first.seed == 11


def test_report_rows():
    report = run_convergence(StudyConfig("polar_cos", Quantity.KAPPA, POLAR, scales=(0.1, 0.05)))
    row = report.rows()[0]
    assert row["scale"] == 0.1
    assert row["n"] == report.counts[0]
    assert row["max_err"] >= row["l2_err"]


@pytest.mark.parametrize("scales", [(0.1,), (0.05, 0.1), (0.1, 0.1), (0.1, -0.05)])
def test_bad_scales(scales):
    with pytest.raises(InvalidOption):
        StudyConfig("circle", scales=scales)


def test_errors_carry_the_scale():
    cfg = StudyConfig("sqrt_helix", Quantity.KAPPA, t_range=(0.0, 1.0), scales=(0.1, 0.05))
    with pytest.raises(SingularParametrization) as excinfo:
        run_convergence(cfg)
    assert "dt = 0.1" in str(excinfo.value)
    assert excinfo.value.exit_code == 4


def test_expansion_dimension_mismatch():
    with pytest.raises(InvalidOption):
        residual_order(StudyConfig("circle"), ExpansionId.TAU1)
    with pytest.raises(InvalidOption):
        torsion_gap_study(StudyConfig("circle"))


def test_torsion_on_planar_curve_is_rejected():
    with pytest.raises(InvalidOption):
        run_convergence(StudyConfig("circle", Quantity.TAU))


def test_study_session():
    session = StudySession()
    for variant in (EuclidVariant.S1, EuclidVariant.S5):
        session.prepare_study(StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, scales=(0.1, 0.05),
                                          variant=variant))
    session.prepare_study(StudyConfig("polar_cos", curve_params=POLAR, scales=(0.1, 0.05)),
                          expansion_id=ExpansionId.EUCLID2_KAPPA)
    reports = session.evaluate_studies()
    assert [r.label for r in reports] == ["polar_cos PATTERN KAPPA_S[S1]", "polar_cos PATTERN KAPPA_S[S5]",
                                          "polar_cos PATTERN EUCLID2_KAPPA"]
    with pytest.raises(InvalidOption):
        session.prepare_study(StudyConfig("circle"))


def test_every_scale_is_scored_on_the_same_window():
    cfg = StudyConfig("polar_cos", Quantity.KAPPA_S, POLAR, t_range=(0.0, 1.5), score_range=(0.5, 1.0))
    report = run_convergence(cfg)
    assert all(0.5 <= t <= 1.0 for t in report.worst_params)
    # a finer scale has about twice the samples in the window, not more
    assert all(b <= 2 * a + 3 for a, b in zip(report.counts, report.counts[1:]))


@pytest.mark.parametrize("score_range", [(1.0, 0.5), (0.5, 0.5)])
def test_bad_score_range(score_range):
    with pytest.raises(InvalidOption):
        StudyConfig("circle", score_range=score_range)
