"""
Run options: defaults, overridden by a key=value config file, overridden by flags.
"""
import logging
from dataclasses import dataclass
from typing import Optional

from numsig.errors import InvalidOption, InputParseError

logger = logging.getLogger(__name__)


class OptionKeys:
    CURVE = "curve"
    EPS = "eps"
    K = "k"
    R = "R"
    A = "a"
    B = "b"
    PARTITION = "partition"
    WEIGHTS = "weights"
    DT = "dt"
    RANGE = "range"
    SCORE_RANGE = "score_range"
    VARIANT = "variant"
    TAU = "tau"
    SEGMENT_RULE = "segment_rule"
    QUANTITY = "quantity"
    RESIDUAL = "residual"
    SEED = "seed"
    AMPLITUDE = "amplitude"
    CLOSED = "closed"
    STRICT = "strict"


default_options = {
    OptionKeys.PARTITION: "regular",
    OptionKeys.WEIGHTS: "1,0.5,0.3333333333333333",
    OptionKeys.DT: "0.05",
    OptionKeys.TAU: "t1",
    OptionKeys.SEGMENT_RULE: "area_ratio",
    OptionKeys.QUANTITY: "kappa_s",
    OptionKeys.SEED: "0",
    OptionKeys.AMPLITUDE: "0.25",
}

# curve name -> option keys that are curve parameters
CURVE_PARAMS = {
    "circle": (OptionKeys.R,),
    "ellipse": (OptionKeys.A, OptionKeys.B),
    "helix": (OptionKeys.A, OptionKeys.B),
    "polar_cos": (OptionKeys.EPS, OptionKeys.K),
    "sqrt_helix": (),
}


def read_config(path):
    """ key=value per line; blank lines and # comments ignored """
    options = {}
    try:
        fh = open(path)
    except OSError as err:
        raise InputParseError("cannot read config %s: %s" % (path, err.strerror))
    with fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputParseError("expected key=value, got '%s'" % line, line=lineno)
            key, value = (part.strip() for part in line.split("=", 1))
            try:
                _update_options(key, value, options)
            except InvalidOption as err:
                raise err.with_context("%s, line %d" % (path, lineno)) from err
    logger.debug("read %d options from %s", len(options), path)
    return options


def _update_options(key, value, which_options):
    key = key.replace("-", "_")
    if key not in vars(OptionKeys).values():
        raise InvalidOption("unknown option '%s'" % key)
    which_options[key] = value


def merge_options(config_path=None, flags=None):
    options = dict(default_options)
    if config_path is not None:
        options.update(read_config(config_path))
    for key, value in (flags or {}).items():
        if value is not None:
            _update_options(key, value, options)
    return options


def parse_float(options, key):
    try:
        return float(options[key])
    except ValueError:
        raise InvalidOption("option %s expects a number, got '%s'" % (key, options[key]))


def parse_floats(options, key):
    try:
        return tuple(float(x) for x in str(options[key]).replace(" ", ",").split(",") if x)
    except ValueError:
        raise InvalidOption("option %s expects numbers, got '%s'" % (key, options[key]))


def parse_enum(enum_cls, text, what):
    try:
        return enum_cls[str(text).upper()]
    except KeyError:
        raise InvalidOption("unknown %s '%s', expected one of %s"
                            % (what, text, ", ".join(m.name.lower() for m in enum_cls)))


def parse_bool(options, key):
    value = options.get(key, False)
    if isinstance(value, bool):
        return value
    return str(value).lower() in ("1", "true", "yes", "on")


def curve_params(options):
    name = options[OptionKeys.CURVE]
    params = {}
    for key in CURVE_PARAMS.get(name, ()):
        if options.get(key) is not None:
            params[key] = parse_float(options, key)
    return params


@dataclass
class RunManifest:
    """ What one invocation reads and writes. Exactly one of input_path / curve is set. """
    subcommand: str
    options: dict
    input_path: Optional[str] = None
    out: Optional[str] = None
    plot: Optional[str] = None

    def __post_init__(self):
        has_curve = self.options.get(OptionKeys.CURVE) is not None
        if (self.input_path is None) == (not has_curve):
            raise InvalidOption("give exactly one input source: --input FILE or --curve NAME")
