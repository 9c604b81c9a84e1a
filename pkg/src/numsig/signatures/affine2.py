"""
Planar equi-affine signature.

Five-point curvature from the joint invariants
    T = (product of the ten brackets [lmn], l < m < n) / 4
    S = (a quartic polynomial in the brackets) / 4
of the points P_{i-2}..P_{i+2}, together with discrete affine arc lengths
and two finite-difference estimates of the affine curvature derivative.
[lmn] is the signed parallelogram area with sides P_l - P_m and P_l - P_n.
"""
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional

import numpy as np

from numsig.errors import DegenerateConfiguration
from numsig.geom import TOL, signed_parallelogram3, signed_parallelogram4, distance
from numsig.signatures.signature_base import SignatureBase

# S / T^(2/3) evaluates to -kappa with the bracket orientation used here
# (-1 on every five points of the unit circle).
AFFINE_SIGN = -1.0


class AffineVariant(Enum):
    OLD = 1
    NEW = 2


class SegmentRule(Enum):
    # cube root of the triangle area (P_j, P_{j+1}, P_{j+2}), resp. (P_{j-1}, P_j, P_{j+1})
    FORWARD = 1
    BACKWARD = 2
    # four-point rule exact on parabolas, default
    AREA_RATIO = 3


def _brackets(pts):
    if len(pts) != 5:
        raise DegenerateConfiguration("five points expected, got %d" % len(pts))
    br = {lmn: signed_parallelogram3(pts[lmn[0]], pts[lmn[1]], pts[lmn[2]])
          for lmn in itertools.combinations(range(5), 3)}
    scale = max(distance(p, q) for p, q in itertools.combinations(pts, 2))
    tol = TOL * scale * scale
    for lmn, value in br.items():
        if abs(value) <= tol:
            raise DegenerateConfiguration("points %d, %d, %d are collinear" % lmn)
    signs = {value > 0.0 for value in br.values()}
    if len(signs) > 1:
        raise DegenerateConfiguration("five-point window is not convex")
    return br


def _t_s(pts):
    br = _brackets(pts)
    t = math.prod(br.values()) / 4.0
    b4_1234 = signed_parallelogram4(pts[1], pts[2], pts[3], pts[4])
    b4_1324 = signed_parallelogram4(pts[1], pts[3], pts[2], pts[4])
    s = (br[0, 1, 3] ** 2 * br[0, 2, 4] ** 2 * b4_1234 ** 2
         + br[0, 1, 2] ** 2 * br[0, 3, 4] ** 2 * b4_1324 ** 2
         - 2.0 * br[0, 1, 2] * br[0, 3, 4] * br[0, 1, 3] * br[0, 2, 4]
         * (br[1, 2, 3] * br[2, 3, 4] + br[1, 2, 4] * br[1, 3, 4])
         ) / 4.0
    return t, s


def t_invariant(pts):
    return _t_s(pts)[0]


def s_invariant(pts):
    return _t_s(pts)[1]


def affine_kappa(pts):
    """ Five-point affine curvature at the middle point; exact on every conic. """
    t, s = _t_s(pts)
    return AFFINE_SIGN * s / np.cbrt(t) ** 2


def affine_segment_length(p0, p1, p2):
    """ Three-point affine arc length: cube root of twice the triangle area. """
    twice_area = abs(signed_parallelogram3(p0, p1, p2))
    scale = max(distance(p0, p1), distance(p1, p2), distance(p0, p2))
    if twice_area <= TOL * scale * scale:
        raise DegenerateConfiguration("collinear triple in affine arc length")
    return float(np.cbrt(twice_area))


def affine_segment_lengths4(p0, p1, p2, p3):
    """
    Affine arc lengths (h0, h1, h2) of the three segments of P0..P3 from the
    four triangle areas. Uses 4 area(l,m,n) = h_lm h_mn h_ln on parabolas.
    """
    x = 2.0 * abs(signed_parallelogram3(p0, p1, p2))
    y = 2.0 * abs(signed_parallelogram3(p1, p2, p3))
    z = 2.0 * abs(signed_parallelogram3(p0, p1, p3))
    w = 2.0 * abs(signed_parallelogram3(p0, p2, p3))
    scale = distance(p0, p3)
    if min(x, y, z, w) <= TOL * scale * scale:
        raise DegenerateConfiguration("collinear triple in affine arc length")
    # fractions u, v, w_ of the total length l
    v = math.sqrt(x * y / (z * w))
    q = math.sqrt(x * w / (y * z))
    u_plus_v = q * (1.0 + v) / (1.0 + q)
    v_plus_w = (1.0 + v) / (1.0 + q)
    u, w_ = u_plus_v - v, v_plus_w - v
    if u <= 0.0 or w_ <= 0.0:
        raise DegenerateConfiguration("four-point window is not convex")
    total = float(np.cbrt(y / (v * w_ * v_plus_w)))
    return u * total, v * total, w_ * total


class AffineStencil:
    """ P_{i-3}..P_{i+3} (wider for the three-point rules) with cached curvatures and segment lengths. """

    def __init__(self, points, rule=SegmentRule.AREA_RATIO):
        self.points = points
        self.rule = rule
        self.lo = min(points)
        self.hi = max(points)
        self._kappa = {}
        self._window = {}

    def kappa(self, k):
        if k not in self._kappa:
            self._kappa[k] = affine_kappa([self.points[k + j] for j in range(-2, 3)])
        return self._kappa[k]

    def segment(self, j):
        """ Affine length of the segment P_{i+j} P_{i+j+1} """
        p = self.points
        if self.rule == SegmentRule.FORWARD:
            return affine_segment_length(p[j], p[j + 1], p[j + 2])
        if self.rule == SegmentRule.BACKWARD:
            return affine_segment_length(p[j - 1], p[j], p[j + 1])
        start = min(max(j - 1, self.lo), self.hi - 3)
        if start not in self._window:
            self._window[start] = affine_segment_lengths4(*(p[start + m] for m in range(4)))
        return self._window[start][j - start]


def affine_kappa_s_old(st):
    return (st.kappa(1) - st.kappa(-1)) / (st.segment(0) + st.segment(-1))


def affine_kappa_s_new(st):
    denom = (st.segment(-3) + 2.0 * st.segment(-2) + 2.0 * st.segment(-1)
             + 2.0 * st.segment(0) + 2.0 * st.segment(1) + st.segment(2))
    return 5.0 * (st.kappa(1) - st.kappa(-1)) / denom


KAPPA_S = {
    AffineVariant.OLD: affine_kappa_s_old,
    AffineVariant.NEW: affine_kappa_s_new,
}


def stencil_offsets(variant, rule):
    if variant == AffineVariant.NEW and rule == SegmentRule.FORWARD:
        return 3, 4
    if variant == AffineVariant.NEW and rule == SegmentRule.BACKWARD:
        return 4, 3
    return 3, 3


@dataclass(frozen=True)
class AffineSample:
    VALUE_FIELDS: ClassVar[tuple] = ("kappa_affine", "kappa_affine_s")
    index: int
    t: Optional[float]
    kappa_affine: float
    kappa_affine_s: float
    variant: AffineVariant


class AffineSignature(SignatureBase):
    """
    Degenerate windows are skipped with a warning unless strict; a curve with
    no usable window at all raises DegenerateConfiguration.
    """
    kind = "affine2"
    dimension = 2
    min_points = 7

    def __init__(self, variant=AffineVariant.NEW, rule=SegmentRule.AREA_RATIO, strict=False):
        super().__init__(strict)
        self.variant = variant
        self.rule = rule

    def stencil_offsets(self):
        return stencil_offsets(self.variant, self.rule)

    def evaluate_at(self, curve, i):
        behind, ahead = self.stencil_offsets()
        st = AffineStencil(curve.window(i, behind, ahead), self.rule)
        return AffineSample(i, curve.param(i), st.kappa(0), KAPPA_S[self.variant](st), self.variant)

    def compute(self, curve):
        result = super().compute(curve)
        if not result.samples:
            raise DegenerateConfiguration("every affine window is degenerate")
        return result


def affine_signature(curve, variant=AffineVariant.NEW, rule=SegmentRule.AREA_RATIO, strict=False):
    return AffineSignature(variant, rule, strict).compute(curve)
