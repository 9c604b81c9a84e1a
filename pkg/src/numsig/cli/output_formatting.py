import csv
import logging

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"

SIGNATURE_COLUMNS = {
    "euclid2": ("kappa", "kappa_s"),
    "affine2": ("kappa_affine", "kappa_affine_s"),
    "euclid3": ("kappa", "kappa_s", "tau", "tau_s"),
}

# labels of the (value, derivative) pairs plotted per signature kind
PLOT_PAIRS = {
    "euclid2": [("kappa", "kappa_s", "Derivative of the Curvature vs Curvature")],
    "affine2": [("kappa_affine", "kappa_affine_s", "Derivative of the Affine Curvature vs Affine Curvature")],
    "euclid3": [("kappa", "kappa_s", "Derivative of the Curvature vs Curvature"),
                ("tau", "tau_s", "Derivative of the Torsion vs Torsion")],
}


def _fmt(value):
    if value is None:
        return ""
    return FLOAT_FORMAT % value


class OutputFormat:
    def format_signature(self, signature, stream):
        raise NotImplementedError("OutputFormat is abstract")

    def format_report(self, report, stream):
        raise NotImplementedError("OutputFormat is abstract")


class CSVOutput(OutputFormat):

    def format_signature(self, signature, stream):
        names = SIGNATURE_COLUMNS[signature.kind]
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("index", "t") + tuple(names))
        for s in signature.samples:
            writer.writerow([s.index, _fmt(s.t)] + [_fmt(getattr(s, name)) for name in names])

    def format_report(self, report, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("scale", "n", "max_err", "l2_err", "worst_index", "worst_t"))
        for row in report.rows():
            writer.writerow([_fmt(row["scale"]), row["n"], _fmt(row["max_err"]), _fmt(row["l2_err"]),
                             row["worst_index"], _fmt(row["worst_t"])])

    def format_oracle(self, samples, columns, stream):
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(("t",) + tuple(columns))
        for o in samples:
            writer.writerow([_fmt(o.t)] + [_fmt(getattr(o, name)) for name in columns])


class TextOutput(OutputFormat):
    """ One summary line per convergence report """

    def format_report(self, report, stream):
        stream.write(report.summary() + "\n")


class SVGOutput(OutputFormat):
    """ Scatter plots of the signature loci, one panel per (value, derivative) pair. """

    def __init__(self, hashsalt="numsig"):
        self.hashsalt = hashsalt

    def format_signature(self, signature, stream, overlay=None):
        self.format_loci(signature.kind, signature, stream, overlay)

    def format_loci(self, kind, source, stream, overlay=None):
        """ `source` and `overlay` only need column(name) """
        pairs = PLOT_PAIRS[kind]
        with plt.rc_context({"svg.hashsalt": self.hashsalt, "svg.fonttype": "none"}):
            fig, axes = plt.subplots(1, len(pairs), figsize=(5.0 * len(pairs), 4.5), squeeze=False)
            for ax, (value, derivative, title) in zip(axes[0], pairs):
                ax.scatter(source.column(value), source.column(derivative), s=6, label="discrete")
                if overlay is not None:
                    ax.plot(overlay.column(value), overlay.column(derivative), color="black", lw=0.8, label="exact")
                    ax.legend()
                ax.set_xlabel(value)
                ax.set_ylabel(derivative)
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(stream, format="svg", metadata={"Date": None})
            plt.close(fig)
            logger.debug("wrote %s plot with %d panels", kind, len(pairs))

    def format_report(self, report, stream):
        with plt.rc_context({"svg.hashsalt": self.hashsalt, "svg.fonttype": "none"}):
            fig, ax = plt.subplots(figsize=(5.0, 4.5))
            ax.loglog(report.scales, report.max_errors, "o-", label="max")
            ax.loglog(report.scales, report.l2_errors, "s--", label="l2")
            ax.invert_xaxis()
            ax.set_xlabel("dt")
            ax.set_ylabel("error")
            ax.set_title(report.label)
            ax.legend()
            fig.tight_layout()
            fig.savefig(stream, format="svg", metadata={"Date": None})
            plt.close(fig)


class ColumnSource:
    """ Adapts oracle samples to the column() interface the plots use. """

    def __init__(self, samples):
        self.samples = samples

    def column(self, name):
        name = {"kappa_affine": "affine_kappa", "kappa_affine_s": "affine_kappa_s"}.get(name, name)
        return [getattr(o, name) for o in self.samples]