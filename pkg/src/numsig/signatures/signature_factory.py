from enum import Enum

from numsig.errors import InvalidOption
from .euclid2 import EuclideanSignature2, EuclidVariant
from .euclid3 import EuclideanSignature3, TorsionVariant
from .affine2 import AffineSignature, AffineVariant, SegmentRule


class SignatureFactory:
    class SignatureType(Enum):
        EUCLID2 = 1
        AFFINE2 = 2
        EUCLID3 = 3

    class Quantity(Enum):
        KAPPA = 1
        KAPPA_S = 2
        TAU = 3
        TAU_S = 4
        AFFINE_KAPPA = 5
        AFFINE_KAPPA_S = 6

    # quantity -> (signature sample attribute, oracle sample attribute)
    QUANTITY_FIELDS = {
        Quantity.KAPPA: ("kappa", "kappa"),
        Quantity.KAPPA_S: ("kappa_s", "kappa_s"),
        Quantity.TAU: ("tau", "tau"),
        Quantity.TAU_S: ("tau_s", "tau_s"),
        Quantity.AFFINE_KAPPA: ("kappa_affine", "affine_kappa"),
        Quantity.AFFINE_KAPPA_S: ("kappa_affine_s", "affine_kappa_s"),
    }

    @staticmethod
    def create_signature(signature_type, variant=None, tau_variant=TorsionVariant.T1,
                         segment_rule=SegmentRule.AREA_RATIO, strict=None):
        if signature_type == SignatureFactory.SignatureType.EUCLID2:
            return EuclideanSignature2(variant or EuclidVariant.S5, strict=True if strict is None else strict)
        elif signature_type == SignatureFactory.SignatureType.EUCLID3:
            return EuclideanSignature3(variant or EuclidVariant.S5, tau_variant, strict=True if strict is None else strict)
        elif signature_type == SignatureFactory.SignatureType.AFFINE2:
            return AffineSignature(variant or AffineVariant.NEW, segment_rule, strict=False if strict is None else strict)
        else:
            raise NotImplementedError("signature_type not yet supported: %s" % str(signature_type))

    @staticmethod
    def signature_type_for(quantity, dimension):
        Q = SignatureFactory.Quantity
        T = SignatureFactory.SignatureType
        if quantity in (Q.AFFINE_KAPPA, Q.AFFINE_KAPPA_S):
            if dimension != 2:
                raise InvalidOption("affine quantities need a planar curve")
            return T.AFFINE2
        if quantity in (Q.TAU, Q.TAU_S):
            if dimension != 3:
                raise InvalidOption("torsion needs a space curve")
            return T.EUCLID3
        return T.EUCLID2 if dimension == 2 else T.EUCLID3
