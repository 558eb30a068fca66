"""
gamma_q = max over orthonormal bases {p_i} of particle 2 of sum_i |<p_i|psi12>|^2 f_q(branch i).

Qubits: the basis is fixed by a Bloch axis (theta, phi) of p_1; a grid over the upper hemisphere is
ranked with the vectorized coarse f_q, the best grid basis is evaluated exactly and optionally refined
with Nelder-Mead. Larger dimensions: bases U0 exp(iH) from seeded random starts U0, searched with
Nelder-Mead over H; the result is a best-effort lower bound.
"""
import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize

from base.errors import DimensionMismatch, DimensionTooLarge, NotQubit
from global_config import SEED
from hilbert import commutator_half, random_unitary
from mdr_catalog import EnsembleContext, MdrId, shortest_distance_sq, shortest_distance_sq_batch
from measurement import MIN_BRANCH_WEIGHT, ProjectionBasis, project_particle2

__all__ = ['SearchBudget', 'GammaResult', 'gamma_q', 'weighted_distance_sum', 'bloch_basis']

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchBudget:
    grid: int = 64
    refine: bool = True
    tolerance: float = 1e-8
    restarts: int = 4
    seed: int = SEED
    max_dim: int = 8


@dataclass(frozen=True, eq=False)
class GammaResult:
    mdr: MdrId
    value: float
    argmax_basis: ProjectionBasis
    per_branch: tuple
    best_effort: bool
    resolution: float = float('nan')
    angles: tuple = None


def bloch_basis(theta, phi):
    """Columns p_1 = (cos(theta/2), e^{i phi} sin(theta/2)) and its orthogonal complement"""
    c, s, e = np.cos(theta / 2), np.sin(theta / 2), np.exp(1j * phi)
    return np.array([[c, -np.conj(e) * s],
                     [e * s, c]])


def weighted_distance_sum(mdr, psi12, pair, basis):
    """
    sum_i w_i f_q^(i) for one basis, with the per-branch (weight, f_q) pairs
    """
    mdr = MdrId.parse(mdr)
    per_branch = []
    for entry in project_particle2(psi12, basis).entries:
        if not entry.valid:
            per_branch.append((entry.weight, 0.0))
            continue
        ctx = EnsembleContext.from_state(entry.state, pair.a, pair.b)
        per_branch.append((entry.weight, shortest_distance_sq(mdr, ctx)))
    return float(sum(w * f for w, f in per_branch)), tuple(per_branch)


def _branch_contexts(psi_matrix, bases, pair):
    """
    Ensemble data of every branch for a stack of bases.

    :param bases: (K, N, N) array, columns are basis vectors
    :return: weights, delta_a, delta_b, abs_c, each of shape (K, N)
    """
    branches = np.einsum('ab,kbi->kia', psi_matrix, bases.conj())
    weights = np.einsum('kia,kia->ki', branches.conj(), branches).real
    states = branches / np.sqrt(np.where(weights > MIN_BRANCH_WEIGHT, weights, 1.0))[..., None]

    def mean(op):
        return np.einsum('kia,ab,kib->ki', states.conj(), op, states).real

    a, b, c = pair.a, pair.b, commutator_half(pair.a, pair.b)
    delta_a = np.sqrt(np.clip(mean(a @ a) - mean(a) ** 2, 0.0, None))
    delta_b = np.sqrt(np.clip(mean(b @ b) - mean(b) ** 2, 0.0, None))
    return weights, delta_a, delta_b, np.abs(mean(c))


def _coarse_objective(mdr, psi_matrix, bases, pair):
    weights, delta_a, delta_b, abs_c = _branch_contexts(psi_matrix, bases, pair)
    f = shortest_distance_sq_batch(mdr, delta_a.ravel(), delta_b.ravel(), abs_c.ravel()).reshape(weights.shape)
    return np.sum(np.where(weights > MIN_BRANCH_WEIGHT, weights * f, 0.0), axis=1)


def _qubit_search(mdr, psi12, pair, budget):
    thetas = np.linspace(0.0, np.pi / 2, budget.grid)
    phis = np.linspace(0.0, 2 * np.pi, budget.grid, endpoint=False)
    theta_grid, phi_grid = np.meshgrid(thetas, phis, indexing='ij')
    bases = np.stack([bloch_basis(t, p) for t, p in zip(theta_grid.ravel(), phi_grid.ravel())])
    scores = _coarse_objective(mdr, psi12.as_matrix(), bases, pair)
    best = int(np.argmax(scores))
    start = np.array([theta_grid.ravel()[best], phi_grid.ravel()[best]])
    logger.debug("%s: best grid basis theta=%.4f phi=%.4f (coarse %.6f)", mdr.value, *start, scores[best])

    def exact(angles):
        return weighted_distance_sum(mdr, psi12, pair, ProjectionBasis.from_matrix(bloch_basis(*angles)))[0]

    candidates = [(exact(start), start)]
    if budget.refine:
        result = minimize(lambda x: -exact(x), start, method='Nelder-Mead',
                          options={'xatol': budget.tolerance, 'fatol': 1e-13, 'maxiter': 400})
        candidates.append((-float(result.fun), np.asarray(result.x)))
        logger.debug("%s: Nelder-Mead %d evaluations, value %.12f", mdr.value, result.nfev, -result.fun)
    _, angles = max(candidates, key=lambda item: item[0])
    basis = ProjectionBasis.from_matrix(bloch_basis(*angles))
    value, per_branch = weighted_distance_sum(mdr, psi12, pair, basis)
    resolution = max(thetas[1] - thetas[0], phis[1] - phis[0])
    return GammaResult(mdr, value, basis, per_branch, best_effort=False, resolution=float(resolution),
                       angles=(float(angles[0]), float(angles[1])))


def _hermitian_from_params(x, n):
    h = np.zeros((n, n), dtype=complex)
    h[np.diag_indices(n)] = x[:n]
    upper = np.triu_indices(n, 1)
    k = len(upper[0])
    h[upper] = x[n:n + k] + 1j * x[n + k:n + 2 * k]
    return h + np.triu(h, 1).conj().T


def _unitary_search(mdr, psi12, pair, budget):
    n = pair.dim
    psi_matrix = psi12.as_matrix()
    best_value, best_basis = -np.inf, None
    for restart in range(budget.restarts):
        start = random_unitary(n, budget.seed + restart)

        def basis_of(x):
            return start @ expm(1j * _hermitian_from_params(x, n))

        result = minimize(lambda x: -_coarse_objective(mdr, psi_matrix, basis_of(x)[None], pair)[0],
                          np.zeros(n * n), method='Nelder-Mead',
                          options={'xatol': 1e-6, 'fatol': 1e-10, 'maxiter': 200 * n * n})
        basis = ProjectionBasis.from_matrix(basis_of(result.x))
        value, _ = weighted_distance_sum(mdr, psi12, pair, basis)
        logger.debug("%s restart %d: %.8f", mdr.value, restart, value)
        if value > best_value:
            best_value, best_basis = value, basis
    logger.warning("gamma_%s for dimension %d is a best-effort lower bound", mdr.value, n)
    value, per_branch = weighted_distance_sum(mdr, psi12, pair, best_basis)
    return GammaResult(mdr, value, best_basis, per_branch, best_effort=True)


def gamma_q(mdr, psi12, pair, budget=None):
    """
    :param mdr: relation whose f_q is weighted
    :param psi12: two-particle state of dims (N, N)
    :param pair: observables (A, B) that define the branch ensembles
    :param budget: search settings, SearchBudget() by default
    """
    mdr = MdrId.parse(mdr)
    budget = budget or SearchBudget()
    if psi12.n_particles != 2 or psi12.dims[0] != pair.dim:
        raise DimensionMismatch("psi12 of dims {} does not match observables of dim {}".format(psi12.dims, pair.dim))
    n = psi12.dims[1]
    if n > budget.max_dim:
        raise DimensionTooLarge("Basis search is limited to dimension {}, got {}".format(budget.max_dim, n))
    if mdr is MdrId.B2 and n != 2:
        raise NotQubit("The qubit refinement only applies to qubits")
    if n == 2:
        return _qubit_search(mdr, psi12, pair, budget)
    return _unitary_search(mdr, psi12, pair, budget)
