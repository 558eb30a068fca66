from functools import partial

import numpy as np
import pandas as pd

from base import BaseExperiment
from bounds import chsh_bound, chsh_pair_sum, qm_correlation_sum, qubit_scenario, theorem_bound
from experiments.common import bell_gammas, bound_column
from mdr_catalog import MdrId
from utils import parallel_map

__all__ = ['Fig3a', 'Fig3b', 'FIGURE_ORDER', 'QM_QUADRATIC_MAX']

# column order of the bound curves, weakest constraint last
FIGURE_ORDER = (MdrId.HE, MdrId.B2, MdrId.B1, MdrId.WE, MdrId.HA, MdrId.OZ)
# largest <B23> + <B12> allowed by <B23>^2 + <B12>^2 <= 8
QM_QUADRATIC_MAX = 4.0


def _correlation_row(theta3, gammas):
    """Simulated correlation sum (checked against its closed form) and the bound of every MDR"""
    scenario = qubit_scenario(theta3)
    bounds = {mdr: theorem_bound(scenario, mdr, gamma=gamma).rhs for mdr, gamma in gammas.items()}
    return qm_correlation_sum(theta3), bounds


def _chsh_row(theta3):
    report = chsh_pair_sum(qubit_scenario(theta3))
    return report.total, report.b23, report.b12


class _SweepExperiment(BaseExperiment):
    def __init__(self, config):
        super().__init__(config)
        self.thetas = config.theta_grid()
        self.mdrs = [m for m in FIGURE_ORDER if m in config.mdrs]

    def _gammas(self):
        results = bell_gammas(self.mdrs, self.config['gamma_grid'], self.seed)
        for mdr, result in results.items():
            self.logger.info("gamma_{} = {:.9f}".format(mdr.value, result.value))
        return {mdr: result.value for mdr, result in results.items()}


class Fig3a(_SweepExperiment):
    """Quantum correlation sum over the meter angle against the bound of every selected MDR"""
    name = 'fig3a'

    def _tables(self):
        gammas = self._gammas()
        rows = parallel_map(partial(_correlation_row, gammas=gammas), self.thetas, desc='fig3a')
        simulated = np.array([row[0] for row in rows])
        df = pd.DataFrame({'theta3': self.thetas, 'qm_sum': simulated})
        for mdr in self.mdrs:
            df[bound_column(mdr)] = [row[1][mdr] for row in rows]
            violated = int(np.sum(simulated > df[bound_column(mdr)] + 1e-9))
            if violated:
                self.logger.info("{}: bound exceeded at {} of {} angles".format(mdr.value, violated, len(df)))
        return {'fig3a': df}


class Fig3b(_SweepExperiment):
    """Sum of the CHSH operators on pairs (2, 3) and (1, 2) against the MDR bounds"""
    name = 'fig3b'

    def _tables(self):
        gammas = self._gammas()
        rows = parallel_map(_chsh_row, self.thetas, desc='fig3b')
        df = pd.DataFrame({'theta3': self.thetas,
                           'chsh_sum': [row[0] for row in rows],
                           'chsh_23': [row[1] for row in rows],
                           'chsh_12': [row[2] for row in rows]})
        for mdr in self.mdrs:
            df[bound_column(mdr)] = chsh_bound(gammas[mdr])
        df['qm_quadratic_max'] = QM_QUADRATIC_MAX
        return {'fig3b': df}
