"""
Correlation bound of a three-particle scenario from an MDR:

    E(A'_2, A_3) + E(B'_2, B_1) <= 1/2 (<A'_2^2> + <A_3^2> + <B'_2^2> + <B_1^2> - gamma_q)

and its generalization to states filtered on particle 2 by an invertible operator.
"""
import logging
from dataclasses import dataclass

import numpy as np

from base.errors import DimensionMismatch, Singular
from bounds.gamma import SearchBudget, gamma_q
from bounds.scenario import correlation, local_second_moment
from hilbert import StateVector, as_matrix, embed_operator
from mdr_catalog import MdrId

__all__ = ['BoundReport', 'LambdaBoundReport', 'correlation_lhs', 'second_moment_sum', 'theorem_bound',
           'lambda_generalized_check', 'MAX_CONDITION']

logger = logging.getLogger(__name__)

MAX_CONDITION = 1e6


@dataclass(frozen=True)
class BoundReport:
    mdr: str
    lhs: float
    rhs: float
    gamma: float

    @property
    def margin(self):
        return self.rhs - self.lhs

    def holds(self, tol=1e-9):
        return self.margin >= -tol


@dataclass(frozen=True)
class LambdaBoundReport(BoundReport):
    gamma_tilde: float = float('nan')
    norm: float = 1.0


def correlation_lhs(source, state):
    """E(A'_2, A_3) + E(B'_2, B_1); the meter (particle 3) reads out A"""
    pair = source.pair
    return (correlation(state, source.a_prime, 2, pair.a, 3)
            + correlation(state, source.b_prime, 2, pair.b, 1))


def second_moment_sum(source, state):
    pair = source.pair
    return (local_second_moment(state, source.a_prime, 2) + local_second_moment(state, pair.a, 3)
            + local_second_moment(state, source.b_prime, 2) + local_second_moment(state, pair.b, 1))


def theorem_bound(scenario, mdr, gamma=None, budget=None):
    """
    :param gamma: precomputed gamma_q of the scenario's source; it does not depend on the interaction,
        so sweeps over meter states compute it once
    """
    source = scenario.source
    if gamma is None:
        gamma = gamma_q(mdr, source.psi12, source.pair, budget).value
    state = scenario.psi123
    lhs = correlation_lhs(source, state)
    rhs = 0.5 * (second_moment_sum(source, state) - gamma)
    return BoundReport(MdrId.parse(mdr).value, lhs, rhs, float(gamma))


def lambda_generalized_check(scenario, lam, mdr, budget=None, gamma=None):
    """
    Bound on psi~123 = H_2 psi123 / sqrt(N) with H = Lambda^dagger Lambda and N = <psi123|H_2^2|psi123>:

        <A'_2 A_3> + <B'_2 B_1> <= 1/2 (second moments on psi~123 - gamma~^2 / (gamma N))

    gamma~ is the basis maximum of sum_i |<p_i|Lambda_2|psi12>|^2 f_q^(i). Both gammas use the same
    budget so that Lambda = lambda I reproduces theorem_bound.
    """
    source = scenario.source
    lam = as_matrix(lam)
    if lam.shape[0] != source.dim:
        raise DimensionMismatch("Lambda of dim {} on particle 2 of dim {}".format(lam.shape[0], source.dim))
    condition = np.linalg.cond(lam)
    if not np.isfinite(condition) or condition > MAX_CONDITION:
        raise Singular("Lambda has condition number {:.3e}".format(condition))
    budget = budget or SearchBudget()
    if gamma is None:
        gamma = gamma_q(mdr, source.psi12, source.pair, budget).value

    dims = scenario.dims
    filtered = embed_operator(lam.conj().T @ lam, (2,), dims) @ scenario.psi123.amplitudes
    norm = float(np.vdot(filtered, filtered).real)
    state = StateVector(dims, filtered / np.sqrt(norm))

    lambda_psi12 = embed_operator(lam, (2,), source.psi12.dims) @ source.psi12.amplitudes
    weight = float(np.vdot(lambda_psi12, lambda_psi12).real)
    normalized = StateVector(source.psi12.dims, lambda_psi12 / np.sqrt(weight))
    gamma_tilde = weight * gamma_q(mdr, normalized, source.pair, budget).value

    lhs = correlation_lhs(source, state)
    rhs = 0.5 * (second_moment_sum(source, state) - gamma_tilde ** 2 / (gamma * norm))
    logger.debug("%s: N=%.6f gamma~=%.6f margin=%.3e", mdr, norm, gamma_tilde, rhs - lhs)
    return LambdaBoundReport(MdrId.parse(mdr).value, lhs, rhs, float(gamma), gamma_tilde=float(gamma_tilde), norm=norm)
