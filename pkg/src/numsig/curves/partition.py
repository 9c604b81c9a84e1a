import itertools
import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from numsig.errors import EmptyRange, InvalidOption

logger = logging.getLogger(__name__)

DEFAULT_WEIGHTS = (1.0, 1.0 / 2.0, 1.0 / 3.0)


class PartitionKind(Enum):
    REGULAR = 1
    PATTERN = 2
    JITTER = 3


@dataclass(frozen=True)
class PartitionSpec:
    """
    REGULAR: t_lo + k dt.
    PATTERN: steps dt * w cycling through `weights` (1, 1/2, 1/3 by default).
    JITTER: steps dt * (1 + amplitude * u), u uniform in [-1, 1] from a Philox stream seeded by `seed`.
    """
    kind: PartitionKind
    dt: float
    t_lo: float
    t_hi: float
    weights: tuple = DEFAULT_WEIGHTS
    seed: int = 0
    amplitude: float = 0.25

    def __post_init__(self):
        if not self.dt > 0.0:
            raise InvalidOption("partition step must be positive, got %r" % (self.dt,))
        if not self.weights or min(self.weights) <= 0.0:
            raise InvalidOption("pattern weights must be positive, got %r" % (self.weights,))
        if not 0.0 <= self.amplitude < 1.0:
            raise InvalidOption("jitter amplitude must lie in [0, 1), got %r" % (self.amplitude,))

    def min_step(self):
        if self.kind == PartitionKind.PATTERN:
            return self.dt * min(self.weights)
        if self.kind == PartitionKind.JITTER:
            return self.dt * (1.0 - self.amplitude)
        return self.dt

    def steps(self):
        if self.kind == PartitionKind.PATTERN:
            return (self.dt * w for w in itertools.cycle(self.weights))
        rng = np.random.Generator(np.random.Philox(self.seed))
        return (self.dt * (1.0 + self.amplitude * u) for u in iter(lambda: rng.uniform(-1.0, 1.0), None))


def generate_partition(spec, closed=False):
    """
    Strictly increasing parameter values covering [t_lo, t_hi].
    Open: a last value overshooting t_hi by rounding is clipped to it. Closed (one full period):
    t_hi is the same point as t_lo, so values closer to it than half the
    smallest step are dropped.
    """
    if not spec.t_hi > spec.t_lo:
        raise EmptyRange("empty parameter range [%g, %g]" % (spec.t_lo, spec.t_hi))
    slack = 1e-9 * spec.dt
    if spec.kind == PartitionKind.REGULAR:
        count = int(np.floor((spec.t_hi - spec.t_lo) / spec.dt + 1e-9))
        ts = spec.t_lo + spec.dt * np.arange(count + 1)
    else:
        ts = [spec.t_lo]
        for step in spec.steps():
            nxt = ts[-1] + step
            if nxt > spec.t_hi + slack:
                break
            ts.append(nxt)
        ts = np.array(ts)

    if closed:
        ts = ts[ts < spec.t_hi - 0.5 * spec.min_step()]
    else:
        ts = np.minimum(ts, spec.t_hi)
    logger.debug("%s partition: %d values, dt = %g", spec.kind.name, len(ts), spec.dt)
    return ts


def sample_curve(model, spec):
    """ PolyCurve of `model` at the partition; closed when the range is one full period of a closed model. """
    closed = model.is_full_period(spec.t_lo, spec.t_hi)
    return model.poly_curve(generate_partition(spec, closed), closed=closed)
