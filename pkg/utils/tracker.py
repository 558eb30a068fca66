import numpy as np
import pandas as pd


class SuiteTracker:
    """
    Internally keeps track of the property suites by means of a dataframe:
    one row per suite with the number of trials, failures and the largest residual seen
    """

    def __init__(self, keys: list, tolerances: dict):
        self._tolerances = dict(tolerances)
        self._data = pd.DataFrame(index=keys, columns=['trials', 'failures', 'max_residual', 'tolerance'],
                                  dtype=np.float64)
        self.reset()

    def reset(self):
        self._data['trials'] = 0.0
        self._data['failures'] = 0.0
        self._data['max_residual'] = 0.0
        self._data['tolerance'] = [self._tolerances.get(key, np.nan) for key in self._data.index]

    @property
    def keys(self):
        return list(self._data.index)

    def update(self, key, residual, failed=None, n=1):
        """
        :param residual: size of the deviation of this trial, compared against the suite tolerance
        :param failed: explicit verdict for suites whose pass condition is not a residual bound
        """
        if failed is None:
            failed = not residual <= self._data.at[key, 'tolerance']
        self._data.at[key, 'trials'] += n
        self._data.at[key, 'failures'] += float(bool(failed)) * n
        if np.isfinite(residual):
            self._data.at[key, 'max_residual'] = max(self._data.at[key, 'max_residual'], float(residual))
        else:
            self._data.at[key, 'max_residual'] = np.inf

    def passed(self, key):
        return bool(self._data.at[key, 'failures'] == 0)

    def all_passed(self):
        return all(self.passed(key) for key in self.keys)

    def result(self):
        result = self._data.rename_axis('suite').reset_index()
        result['trials'] = result['trials'].astype(int)
        result['failures'] = result['failures'].astype(int)
        result['passed'] = [self.passed(key) for key in self.keys]
        return result
