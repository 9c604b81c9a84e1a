"""
Joint-invariant primitives: distances, triangle areas, signed parallelogram
areas, tetrahedron volume and height.

Everything here is a pure function of its value inputs.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from numsig.errors import (InvalidGeometry, NegativeDiscriminant, NotRealizable,
                           DegenerateBase)

logger = logging.getLogger(__name__)

TOL = 1e-12

# Point2 / Point3 are plain float arrays of shape (2,) / (3,)
Point2 = np.ndarray
Point3 = np.ndarray


def distance(p, q):
    diff = np.subtract(p, q, dtype=float)
    return math.sqrt(float(np.dot(diff, diff)))


def cross2(u, v):
    return float(u[0] * v[1] - u[1] * v[0])


def is_collinear(pm, p0, pp):
    """
    True when the turn (P0 - Pm) x (Pp - P0) is within roundoff of zero, measured
    against the longest side and the coordinate magnitude of the triple.
    """
    u, v = np.subtract(p0, pm, dtype=float), np.subtract(pp, p0, dtype=float)
    turn = abs(cross2(u, v)) if len(u) == 2 else float(np.linalg.norm(np.cross(u, v)))
    side = max(distance(pm, p0), distance(p0, pp), distance(pm, pp))
    size = float(np.max(np.abs(np.concatenate([pm, p0, pp]))))
    return turn <= TOL * side * max(side, size)


def signed_parallelogram3(pi, pj, pk):
    """ [ijk]: signed area of the parallelogram with sides Pi-Pj and Pi-Pk. """
    return cross2(np.subtract(pi, pj), np.subtract(pi, pk))


def signed_parallelogram4(pi, pj, pk, pl):
    """ [ijkl]: signed area of the parallelogram with sides Pi-Pj and Pk-Pl. """
    return cross2(np.subtract(pi, pj), np.subtract(pk, pl))


def _sorted_desc(x, y, z):
    # x >= y >= z
    if x < y:
        x, y = y, x
    if y < z:
        y, z = z, y
        if x < y:
            x, y = y, x
    return x, y, z


@dataclass(frozen=True)
class TriangleSides:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for side in (self.a, self.b, self.c):
            if not math.isfinite(side) or side < 0.0:
                raise InvalidGeometry("triangle side must be finite and nonnegative: %r" % (side,))
        x, y, z = _sorted_desc(self.a, self.b, self.c)
        if z - (x - y) < -TOL * x:
            raise InvalidGeometry("sides (%r, %r, %r) violate the triangle inequality" % (self.a, self.b, self.c))

    @staticmethod
    def from_points(pm, p0, pp):
        """ a = d(Pm,P0), b = d(P0,Pp), c = d(Pm,Pp) """
        return TriangleSides(distance(pm, p0), distance(p0, pp), distance(pm, pp))

    def scale(self):
        return max(self.a, self.b, self.c)


def heron_area(sides):
    """
    Triangle area from its sides, in the sorted-operand form that stays
    accurate for needle triangles:
        x >= y >= z,  16 A^2 = (x+(y+z)) (z-(x-y)) (z+(x-y)) (x+(y-z))
    The parentheses are significant.
    """
    x, y, z = _sorted_desc(sides.a, sides.b, sides.c)
    prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z))
    if prod < 0.0:
        if prod < -TOL * x ** 4:
            raise NegativeDiscriminant("inconsistent triangle sides (%r, %r, %r)" % (sides.a, sides.b, sides.c))
        logger.debug("clamping heron discriminant %g to zero", prod)
        prod = 0.0
    return 0.25 * math.sqrt(prod)


@dataclass(frozen=True)
class TetraDistances:
    """
    Mutual distances of P_{i-1}, P_i, P_{i+1}, P_{i+2}:
        a = d(P_{i-1},P_i)    b = d(P_i,P_{i+1})    c = d(P_{i-1},P_{i+1})
        d = d(P_{i+1},P_{i+2}) e = d(P_i,P_{i+2})    f = d(P_{i-1},P_{i+2})
    """
    a: float
    b: float
    c: float
    d: float
    e: float
    f: float

    def __post_init__(self):
        for side in self.as_tuple():
            if not math.isfinite(side) or side < 0.0:
                raise InvalidGeometry("tetrahedron distance must be finite and nonnegative: %r" % (side,))
        if _gram_determinant(self) < -TOL * self.scale() ** 6:
            raise NotRealizable("distances %s are not realizable in 3-space" % (self.as_tuple(),))

    @staticmethod
    def from_points(pm, p0, pp, pq):
        return TetraDistances(distance(pm, p0), distance(p0, pp), distance(pm, pp),
                              distance(pp, pq), distance(p0, pq), distance(pm, pq))

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d, self.e, self.f)

    def scale(self):
        return max(self.as_tuple())

    def base(self):
        return TriangleSides(self.a, self.b, self.c)


def cayley_menger_matrix(t):
    """ The bordered 5x5 Cayley-Menger matrix; det = 288 V^2. """
    a2, b2, c2, d2, e2, f2 = (x * x for x in t.as_tuple())
    return np.array([
        [0.0, 1.0, 1.0, 1.0, 1.0],
        [1.0, 0.0, a2, c2, f2],
        [1.0, a2, 0.0, b2, e2],
        [1.0, c2, b2, 0.0, d2],
        [1.0, f2, e2, d2, 0.0],
    ])


def _gram_determinant(t):
    # Gram matrix of the three edges leaving P_{i-1}: det = 36 V^2 = det(CM) / 8
    a2, b2, c2, d2, e2, f2 = (x * x for x in t.as_tuple())
    g = np.array([
        [a2, 0.5 * (a2 + c2 - b2), 0.5 * (a2 + f2 - e2)],
        [0.5 * (a2 + c2 - b2), c2, 0.5 * (c2 + f2 - d2)],
        [0.5 * (a2 + f2 - e2), 0.5 * (c2 + f2 - d2), f2],
    ])
    return float(np.linalg.det(g))


def cayley_menger_volume(t):
    det = _gram_determinant(t)
    if det < 0.0:
        if det < -TOL * t.scale() ** 6:
            raise NotRealizable("Cayley-Menger determinant %g < 0" % det)
        logger.debug("clamping Cayley-Menger determinant %g to zero", det)
        det = 0.0
    return math.sqrt(det) / 6.0


def tetra_height(t):
    """ Height of the tetrahedron over the base (P_{i-1}, P_i, P_{i+1}), i.e. from P_{i+2}. """
    base_area = heron_area(t.base())
    if base_area < TOL * max(t.a, t.b, t.c) ** 2:
        raise DegenerateBase("base triangle (%r, %r, %r) is degenerate" % (t.a, t.b, t.c))
    return 3.0 * cayley_menger_volume(t) / base_area


def signed_tetra_height(pm, p0, pp, pq):
    """
    Signed distance of P_{i+2} from the plane of (P_{i-1}, P_i, P_{i+1}),
    positive when the chords (P_i-P_{i-1}, P_{i+1}-P_i, P_{i+2}-P_{i+1}) are
    right-handed. Same magnitude as tetra_height, computed from coordinates.
    """
    u = np.subtract(p0, pm)
    v = np.subtract(pp, p0)
    w = np.subtract(pq, pp)
    normal = np.cross(u, v)
    twice_area = float(np.linalg.norm(normal))
    scale = max(float(np.linalg.norm(u)), float(np.linalg.norm(v)), float(np.linalg.norm(u + v)))
    if twice_area < 2.0 * TOL * scale ** 2:
        raise DegenerateBase("base triangle of the tetrahedron is degenerate")
    return float(np.dot(normal, w)) / twice_area
