"""
Planar Euclidean signature: three-point curvature and the five
finite-difference estimates of its arc-length derivative.

    g = d(P_{i-2},P_{i-1})   a = d(P_{i-1},P_i)   b = d(P_i,P_{i+1})
    d = d(P_{i+1},P_{i+2})   c = d(P_{i-1},P_{i+1})
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional

import numpy as np

from numsig.errors import DuplicatePoints
from numsig.geom import TriangleSides, heron_area, cross2, distance, is_collinear, TOL
from numsig.signatures.signature_base import SignatureBase


class EuclidVariant(Enum):
    S1 = 1
    S2 = 2
    S3 = 3
    S4 = 4
    S5 = 5


def _check_chords(sides, pm, p0, pp):
    tol = TOL * max(1.0, float(np.max(np.abs(np.concatenate([pm, p0, pp])))))
    for name, chord in zip("abc", (sides.a, sides.b, sides.c)):
        if chord <= tol:
            raise DuplicatePoints("chord %s = %g vanishes" % (name, chord))


def kappa_tilde(pm, p0, pp):
    """
    Signed Menger curvature 4 * area / (a b c) of the triangle (P_{i-1}, P_i, P_{i+1}).
    Positive when the triple turns counterclockwise; collinear triples (to roundoff) give 0.
    """
    sides = TriangleSides.from_points(pm, p0, pp)
    _check_chords(sides, pm, p0, pp)
    if is_collinear(pm, p0, pp):
        return 0.0
    turn = cross2(np.subtract(p0, pm), np.subtract(pp, p0))
    mag = 4.0 * heron_area(sides) / (sides.a * sides.b * sides.c)
    return math.copysign(mag, turn)


class EuclidStencil:
    """
    Points at offsets around P_i plus lazily computed three-point curvatures.
    `kappa_fn` is kappa_tilde in the plane and the unsigned curvature in space.
    """

    def __init__(self, points, kappa_fn=kappa_tilde):
        self.points = points
        self.kappa_fn = kappa_fn
        self._kappa = {}

    @staticmethod
    def from_curve(curve, i, behind, ahead, kappa_fn=kappa_tilde):
        return EuclidStencil(curve.window(i, behind, ahead), kappa_fn)

    def chord(self, j, k):
        return distance(self.points[j], self.points[k])

    @property
    def g(self):
        return self.chord(-2, -1)

    @property
    def a(self):
        return self.chord(-1, 0)

    @property
    def b(self):
        return self.chord(0, 1)

    @property
    def d(self):
        return self.chord(1, 2)

    @property
    def c(self):
        return self.chord(-1, 1)

    def kappa(self, k):
        """ Three-point curvature centred at P_{i+k} """
        if k not in self._kappa:
            self._kappa[k] = self.kappa_fn(self.points[k - 1], self.points[k], self.points[k + 1])
        return self._kappa[k]


def kappa_s_v1(st):
    return (st.kappa(1) - st.kappa(0)) / st.b


def kappa_s_v2(st):
    return (st.kappa(1) - st.kappa(-1)) / st.c


def kappa_s_v3(st):
    return 3.0 * (st.kappa(1) - st.kappa(0)) / (st.a + st.b + st.d)


def kappa_s_v4(st):
    return (1.5 * (st.kappa(1) - st.kappa(0)) / (st.a + st.b + st.d)
            + 1.5 * (st.kappa(0) - st.kappa(-1)) / (st.a + st.b + st.g))


def kappa_s_v5(st):
    return 3.0 * (st.kappa(1) - st.kappa(-1)) / (2.0 * st.a + 2.0 * st.b + st.d + st.g)


KAPPA_S = {
    EuclidVariant.S1: kappa_s_v1,
    EuclidVariant.S2: kappa_s_v2,
    EuclidVariant.S3: kappa_s_v3,
    EuclidVariant.S4: kappa_s_v4,
    EuclidVariant.S5: kappa_s_v5,
}

# (points behind, points ahead of P_i)
STENCIL_OFFSETS = {
    EuclidVariant.S1: (1, 2),
    EuclidVariant.S2: (2, 2),
    EuclidVariant.S3: (1, 2),
    EuclidVariant.S4: (2, 2),
    EuclidVariant.S5: (2, 2),
}


@dataclass(frozen=True)
class EuclidSample2:
    VALUE_FIELDS: ClassVar[tuple] = ("kappa", "kappa_s")
    index: int
    t: Optional[float]
    kappa: float
    kappa_s: float
    variant: EuclidVariant


class EuclideanSignature2(SignatureBase):
    kind = "euclid2"
    dimension = 2
    min_points = 5

    def __init__(self, variant=EuclidVariant.S5, strict=True):
        super().__init__(strict)
        self.variant = variant

    def stencil_offsets(self):
        return STENCIL_OFFSETS[self.variant]

    def validate(self, curve):
        super().validate(curve)
        curve.check_distinct()

    def evaluate_at(self, curve, i):
        behind, ahead = self.stencil_offsets()
        st = EuclidStencil.from_curve(curve, i, behind, ahead)
        return EuclidSample2(i, curve.param(i), st.kappa(0), KAPPA_S[self.variant](st), self.variant)


def euclid_signature2(curve, variant=EuclidVariant.S5):
    return EuclideanSignature2(variant).compute(curve)
