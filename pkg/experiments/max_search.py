import numpy as np
import pandas as pd

from base import BaseExperiment
from bounds import ascend_restarts, correlation_split, reduced_form_grid_max

__all__ = ['MaxSearch']

_LABELS = ['{}{}{}'.format(*('+' if bit == '0' else '-' for bit in format(i, '03b'))) for i in range(8)]


class MaxSearch(BaseExperiment):
    """Random-restart ascent of E(Z2,Z3) + E(X1,X2) over three-qubit states, next to the reduced-form grid"""
    name = 'max-search'

    def _tables(self):
        values, amplitudes = ascend_restarts(self.config['restarts'], self.seed)
        oracle = reduced_form_grid_max()
        best = int(np.argmax(values))
        r1, r2, value = correlation_split(amplitudes[best])
        self.logger.info("best {:.12f} (restart {}), reduced-form grid {:.12f}, |r1| = {:.6f}, |r2| = {:.6f}"
                         .format(value, best, oracle, np.linalg.norm(r1), np.linalg.norm(r2)))
        restarts = pd.DataFrame({'restart': np.arange(len(values)), 'value': values,
                                 'reduced_form_max': oracle})
        state = pd.DataFrame({'basis': _LABELS, 're': amplitudes[best].real, 'im': amplitudes[best].imag})
        return {'max_search': restarts, 'max_search_state': state}
