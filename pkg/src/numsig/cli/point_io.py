import csv
import io

import numpy as np

from numsig.errors import InputParseError

FLOAT_FORMAT = "%.17g"


def _is_number(text):
    try:
        float(text)
    except ValueError:
        return False
    return True


def _is_header(fields):
    # a leading row with any numeric field is data, and must parse as such
    return not any(_is_number(f) for f in fields)


def read_points(source, dimension):
    """
    Points from comma-separated text: one point per line, optional header
    line, '#' starts a comment. `source` is a path or an open text stream.
    """
    if isinstance(source, (str, bytes)) or hasattr(source, "__fspath__"):
        try:
            fh = open(source, newline="")
        except OSError as err:
            raise InputParseError("cannot read %s: %s" % (source, err.strerror))
        with fh:
            return read_points(fh, dimension)

    rows = []
    seen_data = False
    for lineno, raw in enumerate(source, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        fields = [f.strip() for f in next(csv.reader(io.StringIO(text)))]
        if not seen_data and _is_header(fields):
            seen_data = True
            continue
        seen_data = True
        if len(fields) != dimension:
            raise InputParseError("expected %d columns, got %d" % (dimension, len(fields)), line=lineno)
        try:
            point = [float(f) for f in fields]
        except ValueError:
            raise InputParseError("not a number in '%s'" % text, line=lineno)
        if not all(np.isfinite(point)):
            raise InputParseError("non-finite coordinate in '%s'" % text, line=lineno)
        rows.append(point)
    return np.array(rows, dtype=float).reshape(len(rows), dimension)


def write_points(points, stream, header=True):
    points = np.asarray(points, dtype=float)
    writer = csv.writer(stream, lineterminator="\n")
    if header:
        writer.writerow("xyz"[:points.shape[1]])
    for p in points:
        writer.writerow([FLOAT_FORMAT % v for v in p])
