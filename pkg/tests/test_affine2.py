import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.partition import PartitionKind, PartitionSpec, sample_curve
from numsig.errors import DegenerateConfiguration, TooFewPoints
from numsig.polycurve import PolyCurve
from numsig.signatures.affine2 import (AffineVariant, SegmentRule, AffineStencil, affine_kappa,
                                       affine_segment_length, affine_segment_lengths4, affine_signature,
                                       t_invariant, s_invariant)

ANGLES = (0.1, 0.25, 0.3, 0.5, 0.62)


def _ellipse(a, b, ts):
    return [np.array([a * math.cos(t), b * math.sin(t)]) for t in ts]


def _parabola(ss):
    return [np.array([s, 0.5 * s * s]) for s in ss]


def test_unit_circle():
    assert affine_kappa(_ellipse(1.0, 1.0, ANGLES)) == pytest.approx(1.0, rel=1e-9)


def test_s_on_unit_circle():
    # S / T^(2/3) = -1 for any five points of the unit circle
    pts = _ellipse(1.0, 1.0, (0.0, 0.3, 0.35, 1.0, 1.8))
    assert s_invariant(pts) == pytest.approx(-np.cbrt(t_invariant(pts)) ** 2, rel=1e-9)


def test_circle_radius():
    assert affine_kappa(_ellipse(2.0, 2.0, ANGLES)) == pytest.approx(2.0 ** (-4.0 / 3.0), rel=1e-9)


def test_ellipse():
    assert affine_kappa(_ellipse(2.0, 1.0, ANGLES)) == pytest.approx(2.0 ** (-2.0 / 3.0), rel=1e-9)


def test_parabola_is_flat():
    assert affine_kappa(_parabola((-0.4, -0.1, 0.0, 0.3, 0.5))) == pytest.approx(0.0, abs=1e-9)


def test_orientation_does_not_matter():
    pts = _ellipse(2.0, 1.0, ANGLES)
    assert affine_kappa(pts[::-1]) == pytest.approx(affine_kappa(pts), rel=1e-12)


def test_unimodular_invariance():
    pts = _ellipse(1.5, 0.7, (0.0, 0.2, 0.45, 0.6, 0.9))
    m = np.array([[2.0, 1.0], [1.0, 1.0]])
    moved = [m @ p + np.array([3.0, -1.0]) for p in pts]
    assert affine_kappa(moved) == pytest.approx(affine_kappa(pts), rel=1e-9)
    assert t_invariant(moved) == pytest.approx(t_invariant(pts), rel=1e-9)
    assert s_invariant(moved) == pytest.approx(s_invariant(pts), rel=1e-9)


def test_collinear_window():
    pts = [np.array(p) for p in ([0.0, 0.0], [1.0, 0.0], [2.0, 0.0], [3.0, 1.0], [4.0, 3.0])]
    with pytest.raises(DegenerateConfiguration):
        affine_kappa(pts)


def test_non_convex_window():
    pts = [np.array(p) for p in ([0.0, 0.0], [1.0, 1.0], [2.0, 0.0], [3.0, 1.0], [4.0, 0.0])]
    with pytest.raises(DegenerateConfiguration):
        affine_kappa(pts)


@given(st.integers(-20, 20), st.integers(-20, 20), st.integers(1, 5), st.integers(-5, 5),
       st.lists(st.integers(-10, 10), min_size=5, max_size=5, unique=True))
def test_collinear_integer_windows_never_produce_numbers(x0, y0, dx, dy, ks):
    pts = [np.array([x0 + k * dx, y0 + k * dy], dtype=float) for k in sorted(ks)]
    with pytest.raises(DegenerateConfiguration):
        affine_kappa(pts)


def test_three_point_length_on_circle():
    theta = 0.1
    p = _ellipse(1.0, 1.0, (0.0, theta, 2.0 * theta))
    assert affine_segment_length(*p) == pytest.approx(theta, rel=2e-3)


def test_four_point_lengths_exact_on_parabola():
    ss = (0.0, 0.1, 0.25, 0.6)
    lengths = affine_segment_lengths4(*_parabola(ss))
    assert lengths == pytest.approx((0.1, 0.15, 0.35), rel=1e-10)
    # and on its unimodular image
    m = np.array([[1.0, 3.0], [0.5, 2.5]])
    moved = [m @ p for p in _parabola(ss)]
    assert affine_segment_lengths4(*moved) == pytest.approx((0.1, 0.15, 0.35), rel=1e-10)


def test_weighted_denominator_matches_two_spans():
    ss = [0.0, 0.1, 0.15, 0.18, 0.28, 0.33, 0.36, 0.46, 0.51]
    pts = dict(zip(range(-4, 5), _parabola(ss)))
    stencil = AffineStencil(pts)
    denom = (stencil.segment(-3) + 2.0 * stencil.segment(-2) + 2.0 * stencil.segment(-1)
             + 2.0 * stencil.segment(0) + 2.0 * stencil.segment(1) + stencil.segment(2))
    # (sigma_{i+2} - sigma_{i-3}) + (sigma_{i+3} - sigma_{i-2})
    expected = (ss[6] - ss[1]) + (ss[7] - ss[2])
    assert denom == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("variant", list(AffineVariant))
@pytest.mark.parametrize("rule", list(SegmentRule))
def test_closed_ellipse_signature(variant, rule):
    model = builtin_curve("ellipse", a=2.0, b=1.0)
    curve = sample_curve(model, PartitionSpec(PartitionKind.REGULAR, 0.01, model.t_lo, model.t_hi))
    sig = affine_signature(curve, variant, rule)
    assert len(sig) == len(curve)
    np.testing.assert_allclose(sig.column("kappa_affine"), 2.0 ** (-2.0 / 3.0), rtol=1e-3)
    np.testing.assert_allclose(sig.column("kappa_affine_s"), 0.0, atol=1e-3)


def test_seven_open_points_give_one_sample():
    curve = PolyCurve(np.array(_ellipse(1.0, 1.0, np.linspace(0.0, 1.2, 7))))
    sig = affine_signature(curve)
    assert list(sig.indices()) == [3]
    assert sig.samples[0].kappa_affine == pytest.approx(1.0, rel=1e-9)


def test_too_few_points():
    with pytest.raises(TooFewPoints):
        affine_signature(PolyCurve(np.array(_ellipse(1.0, 1.0, np.linspace(0.0, 1.0, 6)))))


@pytest.fixture
def parabola_with_flat_tail():
    ss = [-1.0 + k / 7.0 for k in range(15)]
    pts = _parabola(ss)
    for k in range(10, 15):
        pts[k] = np.array([ss[k], pts[9][1]])
    return PolyCurve(np.array(pts))


def test_degenerate_windows_are_skipped(parabola_with_flat_tail, caplog):
    sig = affine_signature(parabola_with_flat_tail)
    assert 3 in sig.indices()
    assert sig.skipped
    assert "skipped" in caplog.text


def test_strict_raises_with_index(parabola_with_flat_tail):
    with pytest.raises(DegenerateConfiguration) as excinfo:
        affine_signature(parabola_with_flat_tail, strict=True)
    assert excinfo.value.index is not None


def test_all_degenerate():
    curve = PolyCurve(np.column_stack([np.arange(9.0), np.zeros(9)]))
    with pytest.raises(DegenerateConfiguration):
        affine_signature(curve)


def test_t_is_product_of_all_brackets():
    pts = _ellipse(1.0, 1.0, (0.0, 0.1, 0.2, 0.3, 0.4))
    product = 1.0
    for i in range(5):
        for j in range(i + 1, 5):
            for k in range(j + 1, 5):
                u, v = pts[i] - pts[j], pts[i] - pts[k]
                product *= u[0] * v[1] - u[1] * v[0]
    assert t_invariant(pts) == pytest.approx(product / 4.0, rel=1e-12)
