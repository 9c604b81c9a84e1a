import math

import numpy as np
import pytest

from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.partition import PartitionKind, PartitionSpec, sample_curve
from numsig.polycurve import PolyCurve


def circle_points(n, radius=1.0):
    t = 2.0 * math.pi * np.arange(n) / n
    return np.column_stack([radius * np.cos(t), radius * np.sin(t)])


@pytest.fixture
def unit_circle_200():
    return PolyCurve(circle_points(200), closed=True)


@pytest.fixture
def polar_cos_pattern():
    """ r = 1 + 0.1 cos t, one full period, 1, 1/2, 1/3 pattern at dt = 0.1 """
    model = builtin_curve("polar_cos", eps=0.1, k=1)
    return sample_curve(model, PartitionSpec(PartitionKind.PATTERN, 0.1, model.t_lo, model.t_hi))


@pytest.fixture
def trefoil_arc():
    """ r = 1 + 0.1 cos 3t on an arc free of flat points, regular dt = 0.1 """
    model = builtin_curve("polar_cos", eps=0.1, k=3)
    return sample_curve(model, PartitionSpec(PartitionKind.REGULAR, 0.1, -0.6, 0.6))


@pytest.fixture
def sqrt_helix_coarse():
    model = builtin_curve("sqrt_helix")
    return sample_curve(model, PartitionSpec(PartitionKind.REGULAR, 0.25, model.t_lo, model.t_hi))


@pytest.fixture
def sqrt_helix_pattern():
    model = builtin_curve("sqrt_helix")
    return sample_curve(model, PartitionSpec(PartitionKind.PATTERN, 0.05, model.t_lo, model.t_hi))
