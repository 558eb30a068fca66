from base import BaseExperiment
from evaluation.suites import run_suites

__all__ = ['Verify']


class Verify(BaseExperiment):
    """Runs the selected property suites and reports pass/fail with the largest residual per suite"""
    name = 'verify'

    def __init__(self, config):
        super().__init__(config)
        self._tracker = None

    def _tables(self):
        self._tracker = run_suites(self.config, self.config.theta_grid())
        result = self._tracker.result()
        self.logger.info("\n{}".format(result.to_string(index=False)))
        return {'verify': result}

    @property
    def succeeded(self):
        return self._tracker is not None and self._tracker.all_passed()
