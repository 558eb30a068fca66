import numpy as np
import pandas as pd

from base import BaseExperiment, ConfigError, ContextInvalid
from mdr_catalog import EnsembleContext, allowed_region_grid, check_context, region_boundary, shortest_distance_sq

__all__ = ['Regions']


class Regions(BaseExperiment):
    """Boundary traces of the allowed regions at a fixed ensemble context, one file per MDR"""
    name = 'regions'

    def __init__(self, config):
        super().__init__(config)
        try:
            self.ctx = EnsembleContext(config['delta_a'], config['delta_b'], config['abs_c'])
            for mdr in config.mdrs:
                check_context(mdr, self.ctx)
        except ContextInvalid as err:
            raise ConfigError(str(err)) from err

    def _tables(self):
        tables = {}
        n = self.config['boundary_points']
        grid = self.config['region_grid']
        for mdr in self.config.mdrs:
            points = region_boundary(mdr, self.ctx, n)
            trace = pd.DataFrame({'eps': [p.eps for p in points], 'eta': [p.eta for p in points]})
            tables['region_{}'.format(mdr.value)] = trace
            self.logger.info("{}: {} boundary points, f_q = {:.9f}".format(
                mdr.value, len(trace), shortest_distance_sq(mdr, self.ctx)))
            if grid > 0:
                extent = 2.0 * max(self.ctx.delta_a, self.ctx.delta_b, np.sqrt(self.ctx.abs_c))
                tables['region_grid_{}'.format(mdr.value)] = allowed_region_grid(mdr, self.ctx, extent, extent, grid)
        return tables
