import logging
from dataclasses import dataclass, field

import numpy as np

from numsig.errors import GeometryError, InvalidGeometry, TooFewPoints

logger = logging.getLogger(__name__)


@dataclass
class SignatureCurve:
    kind: str
    samples: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def __len__(self):
        return len(self.samples)

    def indices(self):
        return np.array([s.index for s in self.samples], dtype=int)

    def params(self):
        return np.array([np.nan if s.t is None else s.t for s in self.samples], dtype=float)

    def column(self, name):
        return np.array([getattr(s, name) for s in self.samples], dtype=float)

    def value_fields(self):
        if not self.samples:
            return ()
        return self.samples[0].VALUE_FIELDS

    def values(self):
        """ (n_samples, n_values) array of the invariant columns """
        names = self.value_fields()
        return np.array([[getattr(s, name) for name in names] for s in self.samples], dtype=float).reshape(len(self.samples), len(names))


class SignatureBase:
    """
    A discrete signature estimator: evaluates one sample per admissible
    index of a PolyCurve from the stencil around that index.
    Subclasses provide stencil_offsets() and evaluate_at().
    """
    kind = None
    dimension = None
    min_points = None

    def __init__(self, strict=True):
        self.strict = strict

    def stencil_offsets(self):
        raise NotImplementedError("SignatureBase.stencil_offsets is abstract")

    def evaluate_at(self, curve, i):
        raise NotImplementedError("SignatureBase.evaluate_at is abstract")

    def validate(self, curve):
        if curve.dimension != self.dimension:
            raise InvalidGeometry("%s signature needs %dD points, got %dD" % (self.kind, self.dimension, curve.dimension))
        if len(curve) < self.min_points:
            raise TooFewPoints("%s signature needs at least %d points, got %d" % (self.kind, self.min_points, len(curve)))

    def compute(self, curve):
        self.validate(curve)
        behind, ahead = self.stencil_offsets()
        indices = curve.admissible_indices(behind, ahead)
        if len(indices) == 0:
            raise TooFewPoints("no index of a %d-point curve has a full %d-point stencil" % (len(curve), behind + ahead + 1))

        result = SignatureCurve(self.kind)
        for i in indices:
            try:
                result.samples.append(self.evaluate_at(curve, i))
            except GeometryError as err:
                if err.index is None:
                    err.index = i
                    err.args = ("%s (index %d)" % (err, i),)
                if self.strict:
                    raise
                result.skipped.append(i)

        if result.skipped:
            logger.warning("%s signature: skipped %d degenerate samples at indices %s",
                           self.kind, len(result.skipped), result.skipped)
        return result
