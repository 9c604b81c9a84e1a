import logging
from enum import Enum

import numpy as np
from scipy.spatial.transform import Rotation

from numsig.errors import InvalidOption
from numsig.polycurve import PolyCurve
from numsig.signatures.affine2 import affine_signature
from numsig.signatures.euclid2 import euclid_signature2
from numsig.signatures.euclid3 import euclid_signature3

logger = logging.getLogger(__name__)


class Group(Enum):
    SE2 = 1
    SE3 = 2
    SA2 = 3


GROUP_DIMENSION = {Group.SE2: 2, Group.SE3: 3, Group.SA2: 2}

DEFAULT_SIGNATURE = {
    Group.SE2: euclid_signature2,
    Group.SE3: euclid_signature3,
    Group.SA2: affine_signature,
}


def make_rng(seed):
    return np.random.Generator(np.random.Philox(seed))


def random_group_element(group, rng):
    """ (M, v) acting as x -> M x + v """
    if group == Group.SE2:
        theta = rng.uniform(0.0, 2.0 * np.pi)
        c, s = np.cos(theta), np.sin(theta)
        return np.array([[c, -s], [s, c]]), rng.uniform(-1.0, 1.0, size=2)
    if group == Group.SE3:
        return Rotation.random(random_state=rng).as_matrix(), rng.uniform(-1.0, 1.0, size=3)
    while True:
        m = rng.uniform(-2.0, 2.0, size=(2, 2))
        det = np.linalg.det(m)
        if abs(det) >= 0.5:
            break
    if det < 0.0:
        m[:, 0] = -m[:, 0]
    return m / np.sqrt(abs(det)), rng.uniform(-1.0, 1.0, size=2)


def relative_deviation(reference, other):
    """ Worst difference between two signatures, each column scaled by its largest reference value. """
    if not np.array_equal(reference.indices(), other.indices()):
        return np.inf
    ref, val = reference.values(), other.values()
    if ref.size == 0:
        return 0.0
    scale = np.max(np.abs(ref), axis=0)
    scale[scale == 0.0] = 1.0
    return float(np.max(np.abs(val - ref) / scale))


def invariance_check(points, group, trials=100, seed=0, closed=False, signature_fn=None):
    """ Largest relative change of the signature over `trials` random elements of `group`. """
    curve = points if isinstance(points, PolyCurve) else PolyCurve(points, closed)
    if curve.dimension != GROUP_DIMENSION[group]:
        raise InvalidOption("%s acts on %dD points, got %dD" % (group.name, GROUP_DIMENSION[group], curve.dimension))
    signature_fn = signature_fn or DEFAULT_SIGNATURE[group]
    reference = signature_fn(curve)
    rng = make_rng(seed)
    worst = 0.0
    for _ in range(trials):
        matrix, offset = random_group_element(group, rng)
        worst = max(worst, relative_deviation(reference, signature_fn(curve.transformed(matrix, offset))))
    logger.debug("%s invariance over %d trials: worst relative deviation %g", group.name, trials, worst)
    return worst
