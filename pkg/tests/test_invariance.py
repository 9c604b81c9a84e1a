import functools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.partition import PartitionKind, PartitionSpec, sample_curve
from numsig.errors import InvalidOption
from numsig.harness.invariance import Group, invariance_check, random_group_element, relative_deviation, make_rng
from numsig.signatures.affine2 import AffineVariant, affine_signature
from numsig.signatures.euclid2 import EuclidVariant, euclid_signature2
from numsig.signatures.euclid3 import TorsionVariant, euclid_signature3


@functools.lru_cache(maxsize=None)
def jittered_ellipse():
    model = builtin_curve("ellipse", a=2.0, b=1.0)
    return sample_curve(model, PartitionSpec(PartitionKind.JITTER, 0.2, model.t_lo, model.t_hi, seed=3))


@functools.lru_cache(maxsize=None)
def coarse_sqrt_helix():
    model = builtin_curve("sqrt_helix")
    return sample_curve(model, PartitionSpec(PartitionKind.REGULAR, 0.3, model.t_lo, model.t_hi))


@functools.lru_cache(maxsize=None)
def trefoil_arc():
    model = builtin_curve("polar_cos", eps=0.1, k=3)
    return sample_curve(model, PartitionSpec(PartitionKind.PATTERN, 0.1, -0.6, 0.6))


@pytest.mark.parametrize("variant", list(EuclidVariant))
def test_rigid_motions_in_the_plane(variant):
    worst = invariance_check(jittered_ellipse(), Group.SE2,
                             signature_fn=lambda c: euclid_signature2(c, variant))
    assert worst < 1e-10


@pytest.mark.parametrize("tau_variant", list(TorsionVariant))
def test_rigid_motions_in_space(tau_variant):
    worst = invariance_check(coarse_sqrt_helix(), Group.SE3,
                             signature_fn=lambda c: euclid_signature3(c, tau_variant=tau_variant))
    assert worst < 1e-10


@pytest.mark.parametrize("variant", list(AffineVariant))
def test_unimodular_maps(variant):
    worst = invariance_check(trefoil_arc(), Group.SA2, signature_fn=lambda c: affine_signature(c, variant))
    assert worst < 1e-8


def test_identity():
    sig = euclid_signature2(jittered_ellipse())
    assert relative_deviation(sig, sig) == 0.0
    assert invariance_check(jittered_ellipse(), Group.SE2, trials=0) == 0.0


def test_index_mismatch_is_infinite():
    sig = euclid_signature2(jittered_ellipse())
    shorter = euclid_signature2(jittered_ellipse())
    shorter.samples.pop()
    assert relative_deviation(sig, shorter) == np.inf


def test_group_dimension():
    with pytest.raises(InvalidOption):
        invariance_check(coarse_sqrt_helix(), Group.SE2)


def test_reflection_in_space():
    curve = coarse_sqrt_helix()
    sig = euclid_signature3(curve)
    mirrored = euclid_signature3(curve.transformed(np.diag([-1.0, 1.0, 1.0]), np.zeros(3)))
    np.testing.assert_allclose(mirrored.column("kappa"), sig.column("kappa"), rtol=1e-12)
    np.testing.assert_allclose(mirrored.column("tau"), -sig.column("tau"), rtol=1e-12)
    np.testing.assert_allclose(mirrored.column("tau_s"), -sig.column("tau_s"), rtol=1e-10)


@given(st.integers(0, 2 ** 32 - 1))
def test_random_elements_are_in_the_group(seed):
    rng = make_rng(seed)
    m, v = random_group_element(Group.SE2, rng)
    assert m @ m.T == pytest.approx(np.eye(2), abs=1e-12)
    assert np.linalg.det(m) == pytest.approx(1.0)
    m, v = random_group_element(Group.SE3, rng)
    assert m @ m.T == pytest.approx(np.eye(3), abs=1e-12)
    assert np.linalg.det(m) == pytest.approx(1.0)
    assert v.shape == (3,)
    m, v = random_group_element(Group.SA2, rng)
    assert np.linalg.det(m) == pytest.approx(1.0, rel=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.0, 2.0 * math.pi), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_any_rotation_keeps_the_signature(theta, tx, ty):
    c, s = math.cos(theta), math.sin(theta)
    curve = jittered_ellipse()
    moved = curve.transformed(np.array([[c, -s], [s, c]]), np.array([tx, ty]))
    assert relative_deviation(euclid_signature2(curve), euclid_signature2(moved)) < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.floats(0.5, 2.0), st.floats(-2.0, 2.0), st.floats(-1.0, 1.0), st.floats(-1.0, 1.0))
def test_any_shear_and_squeeze_keeps_the_affine_signature(scale, shear, tx, ty):
    m = np.diag([scale, 1.0 / scale]) @ np.array([[1.0, shear], [0.0, 1.0]])
    curve = trefoil_arc()
    moved = curve.transformed(m, np.array([tx, ty]))
    assert relative_deviation(affine_signature(curve), affine_signature(moved)) < 1e-8
