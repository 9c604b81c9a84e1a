"""
Convergence studies: sample a builtin curve at a ladder of partition scales,
compare a discrete estimator (or an expansion remainder) pointwise against
the exact invariants at the shared t_i, and fit the log-log order.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from numsig.errors import InvalidOption, SignatureError
from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.oracle import oracle_sample, oracle_euclid3, oracle_euclid2, affine_arc_quadrature, oracle_affine2
from numsig.curves.partition import (PartitionKind, PartitionSpec, DEFAULT_WEIGHTS, generate_partition,
                                     sample_curve)
from numsig.geom import distance
from numsig.signatures.affine2 import SegmentRule, affine_kappa
from numsig.signatures.euclid2 import kappa_tilde
from numsig.signatures.euclid3 import TorsionVariant, TorsionStencil, kappa3, tau1, tau2, torsion_gap_ratio
from numsig.signatures.signature_factory import SignatureFactory

logger = logging.getLogger(__name__)

Quantity = SignatureFactory.Quantity

ACCEPTANCE_SCALES = (0.1, 0.05, 0.025, 0.0125)

# errors below this (relative to the size of the exact values) are roundoff
EXACT_TOL = 1e-9


class ExpansionId(Enum):
    EUCLID2_KAPPA = 1
    EUCLID3_KAPPA = 2
    TAU1 = 3
    TAU2 = 4
    # tau2 with the first-order coefficient (a + b + e) as printed; only first order accurate
    TAU2_PRINTED = 5
    AFFINE_KAPPA = 6


class ReportFlag:
    EXACT = "EXACT"
    LOW_CONFIDENCE = "LOW_CONFIDENCE"


@dataclass(frozen=True)
class StudyConfig:
    curve: str
    quantity: Quantity = Quantity.KAPPA_S
    curve_params: dict = field(default_factory=dict)
    partition: PartitionKind = PartitionKind.PATTERN
    weights: tuple = DEFAULT_WEIGHTS
    scales: tuple = ACCEPTANCE_SCALES
    t_range: Optional[tuple] = None
    # t-window scored at every scale; defaults to the span scored at the coarsest scale
    score_range: Optional[tuple] = None
    variant: Optional[Enum] = None
    tau_variant: TorsionVariant = TorsionVariant.T1
    segment_rule: SegmentRule = SegmentRule.AREA_RATIO
    seed: int = 0
    amplitude: float = 0.25

    def __post_init__(self):
        scales = tuple(float(s) for s in self.scales)
        if len(scales) < 2:
            raise InvalidOption("a convergence study needs at least two scales")
        if min(scales) <= 0.0 or any(b >= a for a, b in zip(scales, scales[1:])):
            raise InvalidOption("scales must be positive and strictly decreasing: %s" % (scales,))
        if self.score_range is not None:
            lo, hi = (float(x) for x in self.score_range)
            if not lo < hi:
                raise InvalidOption("score range must be increasing: %s" % (self.score_range,))
            object.__setattr__(self, "score_range", (lo, hi))
        object.__setattr__(self, "scales", scales)

    def model(self):
        return builtin_curve(self.curve, **self.curve_params)

    def partition_spec(self, model, dt):
        t_lo, t_hi = self.t_range if self.t_range is not None else (model.t_lo, model.t_hi)
        return PartitionSpec(self.partition, dt, t_lo, t_hi, tuple(self.weights), self.seed, self.amplitude)

    def label(self):
        name = self.quantity.name
        if self.variant is not None:
            name = "%s[%s]" % (name, self.variant.name)
        return "%s %s %s" % (self.curve, self.partition.name, name)


@dataclass
class ConvergenceReport:
    label: str
    scales: list
    counts: list
    max_errors: list
    l2_errors: list
    worst_indices: list
    worst_params: list
    references: list
    slope: Optional[float]
    l2_slope: Optional[float]
    monotone: bool
    flags: tuple
    seed: int = 0

    def relative_max_errors(self):
        return np.array(self.max_errors) / np.maximum(np.array(self.references), 1e-300)

    def rows(self):
        return [dict(scale=s, n=n, max_err=m, l2_err=l, worst_index=wi, worst_t=wt)
                for s, n, m, l, wi, wt in zip(self.scales, self.counts, self.max_errors, self.l2_errors,
                                              self.worst_indices, self.worst_params)]

    def summary(self):
        if self.slope is None or self.l2_slope is None:
            fit = "slope n/a"
        else:
            fit = "slope %.3f (l2 %.3f)" % (self.slope, self.l2_slope)
        flags = " [%s]" % ", ".join(self.flags) if self.flags else ""
        return "%s: %s, monotone=%s%s" % (self.label, fit, self.monotone, flags)


def fit_slope(scales, errors):
    """ Least-squares slope of log(error) against log(scale). """
    if len(scales) < 2:
        raise InvalidOption("slope fit needs at least two scales")
    if len(scales) == 2:
        logger.info("slope fitted on two scales only")
    errors = np.asarray(errors, dtype=float)
    if np.any(errors <= 0.0):
        return None
    return float(np.polyfit(np.log(scales), np.log(errors), 1)[0])


def _report(label, scales, per_scale, seed):
    counts, max_errors, l2_errors, worst_indices, worst_params, references = [], [], [], [], [], []
    for indices, ts, errors, exact in per_scale:
        if len(errors) == 0:
            raise InvalidOption("%s: no samples to compare" % label)
        err = np.abs(errors)
        k = int(np.argmax(err))
        counts.append(len(err))
        max_errors.append(float(err[k]))
        l2_errors.append(float(np.sqrt(np.mean(err ** 2))))
        worst_indices.append(int(indices[k]))
        worst_params.append(float(ts[k]))
        references.append(float(np.max(np.abs(exact))))

    flags = []
    if max(max_errors) <= EXACT_TOL * max(1.0, max(references)):
        flags.append(ReportFlag.EXACT)
        slope = l2_slope = None
    else:
        slope = fit_slope(scales, max_errors)
        l2_slope = fit_slope(scales, l2_errors)
    if len(scales) == 2:
        flags.append(ReportFlag.LOW_CONFIDENCE)
    monotone = all(b < a for a, b in zip(max_errors, max_errors[1:]))
    report = ConvergenceReport(label, list(scales), counts, max_errors, l2_errors, worst_indices, worst_params,
                               references, slope, l2_slope, monotone, tuple(flags), seed)
    logger.info(report.summary())
    return report


def _scored_span(sample):
    ts = sample[1]
    if len(ts) == 0:
        raise InvalidOption("no samples to compare at the coarsest scale")
    return float(np.min(ts)), float(np.max(ts))


def _restrict(sample, lo, hi):
    """ Samples with lo <= t <= hi """
    indices, ts, errors, exact = (np.asarray(x) for x in sample)
    keep = (ts >= lo) & (ts <= hi)
    return indices[keep], ts[keep], errors[keep], exact[keep]


def _study(cfg, label, evaluate):
    model = cfg.model()
    per_scale = []
    for dt in cfg.scales:
        spec = cfg.partition_spec(model, dt)
        try:
            per_scale.append(evaluate(model, spec))
        except SignatureError as err:
            raise err.with_context("%s, dt = %g" % (label, dt)) from err
    lo, hi = cfg.score_range if cfg.score_range is not None else _scored_span(per_scale[0])
    logger.debug("%s: scoring t in [%g, %g]", label, lo, hi)
    return _report(label, cfg.scales, [_restrict(sample, lo, hi) for sample in per_scale], cfg.seed)


def run_convergence(cfg):
    """ Max and RMS error of the configured estimator against the exact invariant at each scale. """
    model = cfg.model()
    signature_type = SignatureFactory.signature_type_for(cfg.quantity, model.dimension)
    estimator = SignatureFactory.create_signature(signature_type, cfg.variant, cfg.tau_variant, cfg.segment_rule)
    sample_attr, oracle_attr = SignatureFactory.QUANTITY_FIELDS[cfg.quantity]
    affine = signature_type == SignatureFactory.SignatureType.AFFINE2

    def evaluate(model, spec):
        sig = estimator.compute(sample_curve(model, spec))
        ts = sig.params()
        exact = np.array([getattr(oracle_sample(model, t, affine), oracle_attr) for t in ts])
        return sig.indices(), ts, sig.column(sample_attr) - exact, exact

    return _study(cfg, cfg.label(), evaluate)


# Expansion remainders: each returns (remainder, exact value) at index i of an open curve.

def _kappa_remainder(model, curve, i):
    pm, p0, pp = curve.point(i - 1), curve.point(i), curve.point(i + 1)
    a, b = distance(pm, p0), distance(p0, pp)
    t = curve.param(i)
    if curve.dimension == 2:
        kappa, kappa_s = oracle_euclid2(model, t)
        estimate = kappa_tilde(pm, p0, pp)
    else:
        o = oracle_euclid3(model, t)
        kappa, kappa_s = o.kappa, o.kappa_s
        estimate = kappa3(pm, p0, pp)
    return estimate - kappa - (b - a) * kappa_s / 3.0, kappa


def _tau_remainder(model, curve, i, estimator, kappa_s_coeff):
    p = [curve.point(i + k) for k in (-1, 0, 1, 2)]
    a, b, e = distance(p[0], p[1]), distance(p[1], p[2]), distance(p[1], p[3])
    o = oracle_euclid3(model, curve.param(i))
    first_order = (o.tau * o.kappa_s / (6.0 * o.kappa)) * kappa_s_coeff(a, b, e) + (o.tau_s / 4.0) * (b - a + e)
    return estimator(*p) - o.tau - first_order, o.tau


def _affine_remainder(model, curve, i):
    pts = [curve.point(i + k) for k in range(-2, 3)]
    t = curve.param(i)
    kappa, kappa_s = oracle_affine2(model, t)
    span = sum(affine_arc_quadrature(model, t, curve.param(i + k)) for k in range(-2, 3))
    return affine_kappa(pts) - kappa - span * kappa_s / 5.0, kappa


# expansion -> (points behind, points ahead, remainder)
EXPANSIONS = {
    ExpansionId.EUCLID2_KAPPA: (1, 1, _kappa_remainder),
    ExpansionId.EUCLID3_KAPPA: (1, 1, _kappa_remainder),
    ExpansionId.TAU1: (1, 2, lambda m, c, i: _tau_remainder(m, c, i, tau1, lambda a, b, e: a - b + 3.0 * e)),
    ExpansionId.TAU2: (1, 2, lambda m, c, i: _tau_remainder(m, c, i, tau2, lambda a, b, e: e - a - b)),
    ExpansionId.TAU2_PRINTED: (1, 2, lambda m, c, i: _tau_remainder(m, c, i, tau2, lambda a, b, e: a + b + e)),
    ExpansionId.AFFINE_KAPPA: (2, 2, _affine_remainder),
}

EXPANSION_DIMENSION = {
    ExpansionId.EUCLID2_KAPPA: 2,
    ExpansionId.EUCLID3_KAPPA: 3,
    ExpansionId.TAU1: 3,
    ExpansionId.TAU2: 3,
    ExpansionId.TAU2_PRINTED: 3,
    ExpansionId.AFFINE_KAPPA: 2,
}


def _interior_study(cfg, label, behind, ahead, remainder):
    """ Per-index study on the open sampling, interior indices only. """
    def evaluate(model, spec):
        curve = model.poly_curve(generate_partition(spec, closed=False))
        indices = np.array(curve.admissible_indices(behind, ahead))
        values = [remainder(model, curve, i) for i in indices]
        ts = np.array([curve.param(i) for i in indices])
        errors = np.array([v[0] for v in values])
        exact = np.array([v[1] for v in values])
        return indices, ts, errors, exact

    return _study(cfg, label, evaluate)


def residual_order(cfg, expansion_id):
    """ Order of what remains of an estimator after subtracting the exact value and its first-order expansion term. """
    behind, ahead, remainder = EXPANSIONS[expansion_id]
    dimension = cfg.model().dimension
    if dimension != EXPANSION_DIMENSION[expansion_id]:
        raise InvalidOption("%s expansion needs a %dD curve, '%s' is %dD"
                            % (expansion_id.name, EXPANSION_DIMENSION[expansion_id], cfg.curve, dimension))
    return _interior_study(cfg, "%s %s %s" % (cfg.curve, cfg.partition.name, expansion_id.name),
                           behind, ahead, remainder)


def _gap_deviation(model, curve, i):
    st = TorsionStencil(curve.window(i, 1, 2))
    o = oracle_euclid3(model, curve.param(i))
    target = o.tau * o.kappa_s / (3.0 * o.kappa)
    return torsion_gap_ratio(st) - target, target


def torsion_gap_study(cfg):
    """ (tau1 - tau2) / (a + e) against its limit tau kappa_s / (3 kappa). """
    if cfg.model().dimension != 3:
        raise InvalidOption("torsion gap study needs a space curve")
    return _interior_study(cfg, "%s %s TAU_GAP" % (cfg.curve, cfg.partition.name), 1, 2, _gap_deviation)
