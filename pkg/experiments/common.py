from functools import partial

from bounds import SearchBudget, bell_source, gamma_q
from utils import parallel_map

__all__ = ['bell_gammas', 'bound_column']


def _gamma_of(mdr, budget):
    source = bell_source()
    return gamma_q(mdr, source.psi12, source.pair, budget)


def bell_gammas(mdrs, grid, seed):
    """GammaResult per MDR for the Bell pair (A = Z, B = X), in the order of mdrs"""
    budget = SearchBudget(grid=grid, seed=seed)
    results = parallel_map(partial(_gamma_of, budget=budget), mdrs, desc='gamma_q')
    return dict(zip(mdrs, results))


def bound_column(mdr):
    return 'bound_{}'.format(mdr.value)
