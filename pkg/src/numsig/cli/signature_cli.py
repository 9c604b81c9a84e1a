"""
Command line front end:

    numsig sig2d-euclid | sig2d-affine | sig3d   (--input FILE | --curve NAME ...) [--out CSV] [--plot SVG]
    numsig convergence --curve NAME --dt 0.1 0.05 ... [--quantity Q] [--residual R]
    numsig oracle --curve NAME [--group euclid|affine]

Exit status: 0 ok, 2 bad input, 3 degenerate geometry, 4 oracle/domain failure, 1 anything else.
"""
import argparse
import contextlib
import logging
import sys
import traceback

from numsig.cli import __version__
from numsig.cli.output_formatting import CSVOutput, TextOutput, SVGOutput, ColumnSource, SIGNATURE_COLUMNS
from numsig.cli.point_io import read_points
from numsig.cli.run_options import (OptionKeys, RunManifest, merge_options, parse_float, parse_floats,
                                    parse_enum, parse_bool, curve_params)
from numsig.curves.builtin_curves import builtin_curve
from numsig.curves.oracle import oracle_sample
from numsig.curves.partition import PartitionKind, PartitionSpec, generate_partition, sample_curve
from numsig.errors import SignatureError, InvalidOption, DomainError
from numsig.harness.convergence import StudyConfig, ExpansionId
from numsig.harness.study_session import StudySession
from numsig.polycurve import PolyCurve
from numsig.signatures.affine2 import AffineVariant, SegmentRule
from numsig.signatures.euclid2 import EuclidVariant
from numsig.signatures.euclid3 import TorsionVariant
from numsig.signatures.signature_factory import SignatureFactory

logger = logging.getLogger(__name__)

SignatureType = SignatureFactory.SignatureType

# subcommand -> (signature type, point dimension, default variant)
SIGNATURE_COMMANDS = {
    "sig2d-euclid": (SignatureType.EUCLID2, 2, "s5"),
    "sig2d-affine": (SignatureType.AFFINE2, 2, "new"),
    "sig3d": (SignatureType.EUCLID3, 3, "s5"),
}

TORSION_GAP = "tau_gap"


@contextlib.contextmanager
def _output(path, mode="w"):
    if path is None or path == "-":
        yield sys.stdout.buffer if "b" in mode else sys.stdout
    else:
        with open(path, mode, newline=None if "b" in mode else "") as fh:
            yield fh


def _manifest(args):
    flags = {
        OptionKeys.CURVE: args.curve, OptionKeys.EPS: args.eps, OptionKeys.K: args.k, OptionKeys.R: args.R,
        OptionKeys.A: args.a, OptionKeys.B: args.b, OptionKeys.PARTITION: args.partition,
        OptionKeys.WEIGHTS: args.weights, OptionKeys.RANGE: args.range, OptionKeys.SEED: args.seed,
        OptionKeys.AMPLITUDE: args.amplitude,
    }
    for key in (OptionKeys.VARIANT, OptionKeys.TAU, OptionKeys.SEGMENT_RULE, OptionKeys.QUANTITY,
                OptionKeys.RESIDUAL, OptionKeys.DT, OptionKeys.SCORE_RANGE):
        value = getattr(args, key, None)
        flags[key] = ",".join(value) if isinstance(value, list) else value
    if getattr(args, "closed", False):
        flags[OptionKeys.CLOSED] = "true"
    if getattr(args, "strict", False):
        flags[OptionKeys.STRICT] = "true"
    options = merge_options(args.config, flags)
    return RunManifest(args.command, options, getattr(args, "input", None), args.out, getattr(args, "plot", None))


def _model(options):
    return builtin_curve(options[OptionKeys.CURVE], **curve_params(options))


def _bounds(options, key):
    bounds = parse_floats(options, key)
    if len(bounds) != 2:
        raise InvalidOption("--%s expects two numbers, got '%s'" % (key.replace("_", "-"), options[key]))
    return bounds


def _score_range(options):
    if options.get(OptionKeys.SCORE_RANGE) is None:
        return None
    return _bounds(options, OptionKeys.SCORE_RANGE)


def _t_range(options, model):
    if options.get(OptionKeys.RANGE) is None:
        return model.t_lo, model.t_hi
    return _bounds(options, OptionKeys.RANGE)


def _partition_spec(options, model, dt):
    t_lo, t_hi = _t_range(options, model)
    return PartitionSpec(parse_enum(PartitionKind, options[OptionKeys.PARTITION], "partition"), dt, t_lo, t_hi,
                         parse_floats(options, OptionKeys.WEIGHTS), int(parse_float(options, OptionKeys.SEED)),
                         parse_float(options, OptionKeys.AMPLITUDE))


def _load_curve(manifest, dimension):
    """ (PolyCurve, CurveModel or None) """
    options = manifest.options
    if manifest.input_path is not None:
        points = read_points(manifest.input_path, dimension)
        return PolyCurve(points, parse_bool(options, OptionKeys.CLOSED)), None
    model = _model(options)
    if model.dimension != dimension:
        raise InvalidOption("curve '%s' is %dD, %s needs %dD points"
                            % (model.name, model.dimension, manifest.subcommand, dimension))
    return sample_curve(model, _partition_spec(options, model, parse_float(options, OptionKeys.DT))), model


def _variant(signature_type, text):
    if signature_type == SignatureType.AFFINE2:
        return parse_enum(AffineVariant, text, "affine variant")
    return parse_enum(EuclidVariant, text, "curvature variant")


def _overlay(model, signature, kind):
    affine = kind == "affine2"
    try:
        return ColumnSource([oracle_sample(model, t, affine) for t in signature.params()])
    except DomainError as err:
        logger.warning("no exact overlay: %s", err)
        return None


def _cmd_signature(args):
    manifest = _manifest(args)
    signature_type, dimension, default_variant = SIGNATURE_COMMANDS[manifest.subcommand]
    options = manifest.options
    curve, model = _load_curve(manifest, dimension)
    estimator = SignatureFactory.create_signature(
        signature_type,
        _variant(signature_type, options.get(OptionKeys.VARIANT) or default_variant),
        parse_enum(TorsionVariant, options[OptionKeys.TAU], "torsion variant"),
        parse_enum(SegmentRule, options[OptionKeys.SEGMENT_RULE], "segment rule"),
        strict=True if parse_bool(options, OptionKeys.STRICT) else None)
    signature = estimator.compute(curve)
    logger.info("%s: %d samples from %d points", signature.kind, len(signature), len(curve))

    with _output(manifest.out) as out:
        CSVOutput().format_signature(signature, out)
    if manifest.plot is not None:
        overlay = _overlay(model, signature, signature.kind) if model is not None else None
        with _output(manifest.plot, "wb") as fh:
            SVGOutput().format_signature(signature, fh, overlay)
    return 0


def cmd_sig2d_euclid(args):
    return _cmd_signature(args)


def cmd_sig2d_affine(args):
    return _cmd_signature(args)


def cmd_sig3d(args):
    return _cmd_signature(args)


def _study_configs(options, variants):
    model = _model(options)
    quantity = parse_enum(SignatureFactory.Quantity, options[OptionKeys.QUANTITY], "quantity")
    signature_type = SignatureFactory.signature_type_for(quantity, model.dimension)
    base = dict(curve=model.name, quantity=quantity, curve_params=curve_params(options),
                partition=parse_enum(PartitionKind, options[OptionKeys.PARTITION], "partition"),
                weights=parse_floats(options, OptionKeys.WEIGHTS), scales=parse_floats(options, OptionKeys.DT),
                t_range=_t_range(options, model),
                score_range=_score_range(options),
                tau_variant=parse_enum(TorsionVariant, options[OptionKeys.TAU], "torsion variant"),
                segment_rule=parse_enum(SegmentRule, options[OptionKeys.SEGMENT_RULE], "segment rule"),
                seed=int(parse_float(options, OptionKeys.SEED)), amplitude=parse_float(options, OptionKeys.AMPLITUDE))
    if not variants:
        return [StudyConfig(**base)]
    return [StudyConfig(variant=_variant(signature_type, v), **base) for v in variants]


def cmd_convergence(args):
    manifest = _manifest(args)
    options = manifest.options
    if manifest.input_path is not None:
        raise InvalidOption("convergence studies need a builtin --curve")
    variants = [v for v in (options.get(OptionKeys.VARIANT) or "").split(",") if v]
    session = StudySession()
    residual = options.get(OptionKeys.RESIDUAL)
    for cfg in _study_configs(options, variants):
        if residual is None:
            session.prepare_study(cfg)
        elif residual.lower() == TORSION_GAP:
            session.prepare_study(cfg, torsion_gap=True)
        else:
            session.prepare_study(cfg, parse_enum(ExpansionId, residual, "expansion"))
    reports = session.evaluate_studies()

    with _output(manifest.out) as out:
        for report in reports:
            if len(reports) > 1:
                out.write("# %s\n" % report.label)
            CSVOutput().format_report(report, out)
    for report in reports:
        TextOutput().format_report(report, sys.stderr)
    if manifest.plot is not None:
        with _output(manifest.plot, "wb") as fh:
            SVGOutput().format_report(reports[-1], fh)
    return 0


def cmd_oracle(args):
    manifest = _manifest(args)
    options = manifest.options
    if manifest.input_path is not None:
        raise InvalidOption("the oracle needs a builtin --curve")
    model = _model(options)
    spec = _partition_spec(options, model, parse_float(options, OptionKeys.DT))
    ts = generate_partition(spec, model.is_full_period(spec.t_lo, spec.t_hi))
    affine = args.group == "affine"
    if affine and model.dimension != 2:
        raise InvalidOption("affine invariants need a planar curve")
    samples = [oracle_sample(model, t, affine) for t in ts]
    if model.dimension == 3:
        kind = "euclid3"
        columns = SIGNATURE_COLUMNS[kind]
    elif affine:
        kind = "affine2"
        columns = ("affine_kappa", "affine_kappa_s")
    else:
        kind = "euclid2"
        columns = SIGNATURE_COLUMNS[kind]

    with _output(manifest.out) as out:
        CSVOutput().format_oracle(samples, columns, out)
    if manifest.plot is not None:
        with _output(manifest.plot, "wb") as fh:
            SVGOutput().format_loci(kind, ColumnSource(samples), fh)
    return 0


def _add_source_arguments(parser, with_input=True):
    if with_input:
        parser.add_argument("--input", help="CSV of points, one per line")
        parser.add_argument("--closed", action="store_true", help="the input points form a closed curve")
    parser.add_argument("--curve", help="builtin curve: circle, ellipse, polar_cos, helix, sqrt_helix")
    parser.add_argument("--eps", help="polar_cos amplitude")
    parser.add_argument("--k", help="polar_cos frequency")
    parser.add_argument("--R", dest="R", help="circle radius")
    parser.add_argument("--a", help="ellipse / helix first parameter")
    parser.add_argument("--b", help="ellipse / helix second parameter")
    parser.add_argument("--partition", help="regular, pattern or jitter")
    parser.add_argument("--weights", help="pattern weights, comma separated")
    parser.add_argument("--range", help="parameter range lo,hi")
    parser.add_argument("--seed", help="jitter seed")
    parser.add_argument("--amplitude", help="jitter relative amplitude")
    parser.add_argument("--config", help="key=value options file")
    parser.add_argument("--out", help="output CSV (default stdout)")
    parser.add_argument("--plot", help="also write an SVG plot to this path")


def build_parser():
    parser = argparse.ArgumentParser(prog="numsig", description="Numerically invariant signature curves")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    parser.add_argument("--log-level", default="warning", choices=("debug", "info", "warning", "error"))
    sub = parser.add_subparsers(dest="command", required=True)

    for name, handler in (("sig2d-euclid", cmd_sig2d_euclid), ("sig2d-affine", cmd_sig2d_affine),
                          ("sig3d", cmd_sig3d)):
        p = sub.add_parser(name)
        _add_source_arguments(p)
        p.add_argument("--dt", help="partition step for builtin curves")
        p.add_argument("--variant", help="s1..s5, or old/new for sig2d-affine")
        p.add_argument("--tau", help="t1 or t2")
        p.add_argument("--segment-rule", dest="segment_rule", help="forward, backward or area_ratio")
        p.add_argument("--strict", action="store_true", help="fail on the first degenerate sample")
        p.set_defaults(handler=handler)

    p = sub.add_parser("convergence")
    _add_source_arguments(p, with_input=False)
    p.add_argument("--dt", nargs="+", required=True, help="decreasing scale ladder")
    p.add_argument("--quantity", help="kappa, kappa_s, tau, tau_s, affine_kappa, affine_kappa_s")
    p.add_argument("--variant", nargs="+", help="one study per variant")
    p.add_argument("--tau", help="t1 or t2")
    p.add_argument("--segment-rule", dest="segment_rule", help="forward, backward or area_ratio")
    p.add_argument("--score-range", dest="score_range",
                   help="lo,hi: t-window scored at every scale (default: the span scored at the coarsest)")
    p.add_argument("--residual", help="expansion remainder study: %s or %s"
                   % (", ".join(e.name.lower() for e in ExpansionId), TORSION_GAP))
    p.set_defaults(handler=cmd_convergence)

    p = sub.add_parser("oracle")
    _add_source_arguments(p, with_input=False)
    p.add_argument("--dt", help="partition step")
    p.add_argument("--group", choices=("euclid", "affine"), default="euclid")
    p.set_defaults(handler=cmd_oracle)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, args.log_level.upper()),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except SignatureError as err:
        logger.error("%s: %s", type(err).__name__, err)
        return err.exit_code
    except Exception as err:
        logger.error("An error occured: %s\nTraceback:\n %s", err, traceback.format_exc())
        return 1


if __name__ == "__main__":
    sys.exit(main())
