"""
Groups several studies so they are configured first and evaluated together,
e.g. the old and corrected formulas over the same scale ladder.
"""
import logging

from numsig.errors import InvalidOption
from .convergence import run_convergence, residual_order, torsion_gap_study

logger = logging.getLogger(__name__)


class StudySession:

    def __init__(self):
        self._evaluated = False
        self.studies = []

    """ Add a study: an estimator convergence study, or an expansion remainder study when expansion_id is given """
    def prepare_study(self, cfg, expansion_id=None, torsion_gap=False):
        if self._evaluated:
            raise InvalidOption("StudySession was evaluated. You cannot prepare_study anymore.")
        if torsion_gap:
            study = (torsion_gap_study, (cfg,))
        elif expansion_id is not None:
            study = (residual_order, (cfg, expansion_id))
        else:
            study = (run_convergence, (cfg,))
        self.studies.append(study)
        return len(self.studies) - 1

    """ Evaluates all studies added with prepare_study, in order """
    def evaluate_studies(self):
        self._evaluated = True
        results = []
        for fn, args in self.studies:
            results.append(fn(*args))
        logger.debug("evaluated %d studies", len(results))
        return results


def _run_tests():
    from numsig.curves.partition import PartitionKind
    from numsig.signatures.euclid2 import EuclidVariant
    from .convergence import StudyConfig, Quantity

    session = StudySession()
    for variant in (EuclidVariant.S1, EuclidVariant.S5):
        session.prepare_study(StudyConfig("polar_cos", Quantity.KAPPA_S, {"eps": 0.1, "k": 1},
                                          PartitionKind.PATTERN, variant=variant))
    for report in session.evaluate_studies():
        print(report.summary())


if __name__ == "__main__":
    _run_tests()
