import logging
from dataclasses import dataclass, field

import numpy as np

from numsig.polycurve import PolyCurve

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CurveModel:
    """
    An analytic curve t -> alpha(t) with exact derivatives.
    `jet(t, k)` returns the k-th derivative at t, k = 0..max_order.
    [t_lo, t_hi] is the default sampling range; closed models repeat with `period`.
    """
    name: str
    dimension: int
    jet: object
    t_lo: float
    t_hi: float
    closed: bool = False
    period: float = None
    params: dict = field(default_factory=dict)
    max_order: int = 5

    def derivative(self, t, order=0):
        if not 0 <= order <= self.max_order:
            raise ValueError("derivative order %d outside 0..%d" % (order, self.max_order))
        return np.asarray(self.jet(float(t), order), dtype=float)

    def position(self, t):
        return self.derivative(t, 0)

    def sample(self, ts):
        return np.array([self.position(t) for t in ts]).reshape(len(ts), self.dimension)

    def is_full_period(self, t_lo, t_hi):
        return self.closed and abs((t_hi - t_lo) - self.period) <= 1e-9 * self.period

    def poly_curve(self, ts, closed=False):
        return PolyCurve(self.sample(ts), closed=closed, params=ts)

    def reparametrized(self, scale, shift=0.0):
        """ t -> alpha(shift + scale t), scale > 0 """
        if scale <= 0.0:
            raise ValueError("reparametrization scale must be positive")
        jet = self.jet

        def new_jet(t, k):
            return scale ** k * np.asarray(jet(shift + scale * t, k), dtype=float)

        period = None if self.period is None else self.period / scale
        return CurveModel(self.name, self.dimension, new_jet,
                          (self.t_lo - shift) / scale, (self.t_hi - shift) / scale,
                          self.closed, period, dict(self.params, scale=scale, shift=shift), self.max_order)


def check_derivatives(model, trials=20, seed=0, step=1e-4):
    """
    Largest relative mismatch between each exact derivative and the central
    difference of the one below it, over random t in the default range.
    """
    rng = np.random.Generator(np.random.Philox(seed))
    margin = max(10.0 * step, 0.01 * (model.t_hi - model.t_lo))
    worst = 0.0
    for t in rng.uniform(model.t_lo + margin, model.t_hi - margin, size=trials):
        for k in range(1, model.max_order + 1):
            exact = model.derivative(t, k)
            approx = (model.derivative(t + step, k - 1) - model.derivative(t - step, k - 1)) / (2.0 * step)
            rel = np.linalg.norm(exact - approx) / max(1.0, np.linalg.norm(exact))
            worst = max(worst, rel)
    logger.debug("%s: worst derivative mismatch %g", model.name, worst)
    return worst
