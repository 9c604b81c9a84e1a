"""
Space-curve Euclidean signature (kappa, kappa_s, tau, tau_s).

Chords around P_i, with P_{i+2} as the tetrahedron apex:
    g = d(P_{i-2},P_{i-1})  a = d(P_{i-1},P_i)  b = d(P_i,P_{i+1})  c = d(P_{i-1},P_{i+1})
    d = d(P_{i+1},P_{i+2})  e = d(P_i,P_{i+2})  f = d(P_{i-1},P_{i+2})  h = d(P_{i+2},P_{i+3})
"""
from dataclasses import dataclass
from enum import Enum
from typing import ClassVar, Optional

import numpy as np

from numsig.errors import DuplicatePoints, DegenerateBase, VanishingCurvature, InvalidOption
from numsig.geom import TOL, TriangleSides, TetraDistances, heron_area, is_collinear, signed_tetra_height
from numsig.signatures.euclid2 import EuclidVariant, EuclidStencil, KAPPA_S
from numsig.signatures.signature_base import SignatureBase

# Calibrated against tau = -(a_t x a_tt . a_ttt) / |a_t x a_tt|^2:
# the right-handed helix (cos t, sin t, t) has tau = -1/2.
TORSION_SIGN = -1.0

VANISHING_KAPPA = 1e-9


class TorsionVariant(Enum):
    T1 = 1
    T2 = 2


def kappa3(pm, p0, pp):
    """ Unsigned three-point curvature 4 * area / (a b c) """
    sides = TriangleSides.from_points(pm, p0, pp)
    tol = TOL * max(1.0, float(np.max(np.abs(np.concatenate([pm, p0, pp])))))
    if min(sides.a, sides.b, sides.c) <= tol:
        raise DuplicatePoints("coincident points in curvature triple")
    if is_collinear(pm, p0, pp):
        return 0.0
    return 4.0 * heron_area(sides) / (sides.a * sides.b * sides.c)


def _checked_kappa(t, pm, p0, pp, kappa_hint):
    kappa = kappa3(pm, p0, pp) if kappa_hint is None else kappa_hint
    if kappa < VANISHING_KAPPA / t.scale():
        raise VanishingCurvature("three-point curvature %g too small for torsion" % kappa)
    return kappa


def tau1(pm, p0, pp, pq, kappa_hint=None):
    t = TetraDistances.from_points(pm, p0, pp, pq)
    height = signed_tetra_height(pm, p0, pp, pq)
    kappa = _checked_kappa(t, pm, p0, pp, kappa_hint)
    return TORSION_SIGN * 6.0 * height / (t.d * t.e * t.f * kappa)


def tau2(pm, p0, pp, pq):
    t = TetraDistances.from_points(pm, p0, pp, pq)
    height = signed_tetra_height(pm, p0, pp, pq)
    if t.f <= TOL * t.scale():
        raise DegenerateBase("chord f vanishes")
    area_ebd = heron_area(TriangleSides(t.e, t.b, t.d))
    if area_ebd < TOL * max(t.e, t.b, t.d) ** 2:
        raise DegenerateBase("triangle (P_i, P_{i+1}, P_{i+2}) is degenerate")
    return TORSION_SIGN * 1.5 * height * t.b / (t.f * area_ebd)


def tau_s_formula(tau_next, tau_prev, tau0, kappa0, kappa_s0, a, b, d, g, h):
    """ Corrected centred difference of tau1 across P_{i-1}..P_{i+1}. """
    correction = (2.0 * a + 2.0 * b - 2.0 * d - 3.0 * h + g) * tau0 * kappa_s0 / (6.0 * kappa0)
    return 4.0 * (tau_next - tau_prev + correction) / (2.0 * a + 2.0 * b + 2.0 * d + h + g)


class TorsionStencil(EuclidStencil):
    """ P_{i-2}..P_{i+3} """

    def __init__(self, points):
        super().__init__(points, kappa3)
        self._tau1 = {}

    @staticmethod
    def from_curve(curve, i):
        return TorsionStencil(curve.window(i, 2, 3))

    @property
    def e(self):
        return self.chord(0, 2)

    @property
    def h(self):
        return self.chord(2, 3)

    def tau1(self, k):
        """ tau1 on (P_{i+k-1}, .., P_{i+k+2}) """
        if k not in self._tau1:
            p = self.points
            self._tau1[k] = tau1(p[k - 1], p[k], p[k + 1], p[k + 2], kappa_hint=self.kappa(k))
        return self._tau1[k]

    def tau(self, variant):
        if variant == TorsionVariant.T1:
            return self.tau1(0)
        p = self.points
        return tau2(p[-1], p[0], p[1], p[2])


def kappa_s3(st, variant=EuclidVariant.S5):
    if variant not in (EuclidVariant.S3, EuclidVariant.S4, EuclidVariant.S5):
        raise InvalidOption("space curves support kappa_s variants S3, S4 and S5, not %s" % variant.name)
    return KAPPA_S[variant](st)


def tau_s(st, kappa, kappa_s, tau):
    return tau_s_formula(st.tau1(1), st.tau1(-1), tau, kappa, kappa_s, st.a, st.b, st.d, st.g, st.h)


def torsion_gap_ratio(st):
    """ (tau1 - tau2) / (a + e); tends to tau kappa_s / (3 kappa) """
    gap = st.tau(TorsionVariant.T1) - st.tau(TorsionVariant.T2)
    return gap / (st.a + st.e)


@dataclass(frozen=True)
class EuclidSample3:
    VALUE_FIELDS: ClassVar[tuple] = ("kappa", "kappa_s", "tau", "tau_s")
    index: int
    t: Optional[float]
    kappa: float
    kappa_s: float
    tau: float
    tau_s: float
    kappa_variant: EuclidVariant
    tau_variant: TorsionVariant


class EuclideanSignature3(SignatureBase):
    kind = "euclid3"
    dimension = 3
    min_points = 6

    def __init__(self, kappa_variant=EuclidVariant.S5, tau_variant=TorsionVariant.T1, strict=True):
        super().__init__(strict)
        if kappa_variant not in (EuclidVariant.S3, EuclidVariant.S4, EuclidVariant.S5):
            raise InvalidOption("space curves support kappa_s variants S3, S4 and S5, not %s" % kappa_variant.name)
        self.kappa_variant = kappa_variant
        self.tau_variant = tau_variant

    def stencil_offsets(self):
        return 2, 3

    def validate(self, curve):
        super().validate(curve)
        curve.check_distinct()

    def evaluate_at(self, curve, i):
        st = TorsionStencil.from_curve(curve, i)
        kappa = st.kappa(0)
        kappa_s = kappa_s3(st, self.kappa_variant)
        tau = st.tau(self.tau_variant)
        # the tau_s correction is built on tau1 at P_i whatever the reported variant
        return EuclidSample3(i, curve.param(i), kappa, kappa_s, tau,
                             tau_s(st, kappa, kappa_s, st.tau1(0)),
                             self.kappa_variant, self.tau_variant)


def euclid_signature3(curve, kappa_variant=EuclidVariant.S5, tau_variant=TorsionVariant.T1):
    return EuclideanSignature3(kappa_variant, tau_variant).compute(curve)
