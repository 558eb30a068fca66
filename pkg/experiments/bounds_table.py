import numpy as np
import pandas as pd

from base import BaseExperiment
from bounds import chsh_bound, qubit_scenario, theorem_bound
from experiments.common import bell_gammas
from experiments.figures import FIGURE_ORDER
from mdr_catalog import MdrId, kappa

__all__ = ['BoundsTable', 'REFERENCE_BOUNDS']

# published bounds on E(Z2,Z3) + E(X1,X2) with their precision
REFERENCE_BOUNDS = {
    MdrId.HE: (1.0, 1e-6),
    MdrId.B2: (np.sqrt(2.0), 1e-6),
    MdrId.B1: (1.5, 1e-6),
    MdrId.WE: (1.71, 1e-2),
    MdrId.HA: (1.8, 1e-6),
    MdrId.OZ: (2.0 * np.sqrt(2.0) - 1.0, 1e-6),
}


class BoundsTable(BaseExperiment):
    """gamma_q, the correlation bound and the CHSH bound of every MDR for the qubit scenario"""
    name = 'bounds-table'

    def _tables(self):
        mdrs = [m for m in FIGURE_ORDER if m in self.config.mdrs]
        results = bell_gammas(mdrs, self.config['gamma_grid'], self.seed)
        scenario = qubit_scenario(np.pi / 8)
        rows = []
        for mdr in mdrs:
            result = results[mdr]
            bound = theorem_bound(scenario, mdr, gamma=result.value).rhs
            reference, tolerance = REFERENCE_BOUNDS[mdr]
            if abs(bound - reference) > tolerance:
                self.logger.warning("{}: bound {:.9f} differs from {:.9f} by more than {:g}"
                                    .format(mdr.value, bound, reference, tolerance))
            rows.append({'mdr': mdr.value,
                         'kappa': kappa(mdr),
                         'gamma': result.value,
                         'bound': bound,
                         'chsh_bound': chsh_bound(result.value),
                         'reference_bound': reference,
                         'reference_tolerance': tolerance,
                         'argmax_theta': result.angles[0],
                         'argmax_phi': result.angles[1]})
            self.logger.info("{:>2}: gamma {:.9f} bound {:.9f} chsh {:.9f}".format(
                mdr.value, result.value, bound, chsh_bound(result.value)))
        return {'bounds_table': pd.DataFrame(rows)}
