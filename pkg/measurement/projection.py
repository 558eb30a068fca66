"""
Projection of particle 2 of a two-particle state onto an orthonormal basis, and the two equivalent
evaluations of the weighted error sums in the three-particle pipeline (system 1, partner 2, meter 3).
"""
from dataclasses import dataclass

import numpy as np

from base.errors import DimensionMismatch, IdentityViolation, IncompleteBasis
from hilbert import TOL_IDENTITY, StateVector, embed_operator, hermitian_eig
from measurement.meter import MeterModel, disturbance_sq, precision_sq

__all__ = ['ProjectionBasis', 'ProjectedBranch', 'ProjectedEnsemble', 'project_particle2', 'direct_error_sums',
           'weighted_error_sums', 'MIN_BRANCH_WEIGHT', 'TWO_ROUTE_TOLERANCE']

MIN_BRANCH_WEIGHT = 1e-14
TWO_ROUTE_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class ProjectionBasis:
    vectors: tuple

    def __post_init__(self):
        vectors = tuple(v if isinstance(v, StateVector) else StateVector((len(v),), v) for v in self.vectors)
        if not vectors:
            raise IncompleteBasis("Empty basis")
        dim = vectors[0].dim
        if any(v.dim != dim for v in vectors):
            raise DimensionMismatch("Basis vectors of different dimensions")
        if len(vectors) != dim:
            raise IncompleteBasis("{} vectors cannot span dimension {}".format(len(vectors), dim))
        matrix = np.column_stack([v.amplitudes for v in vectors])
        if np.max(np.abs(matrix.conj().T @ matrix - np.eye(dim))) > TOL_IDENTITY:
            raise IncompleteBasis("Basis vectors are not orthonormal within {}".format(TOL_IDENTITY))
        object.__setattr__(self, 'vectors', vectors)

    @classmethod
    def from_matrix(cls, columns):
        columns = np.asarray(columns, dtype=complex)
        return cls(tuple(columns[:, i] for i in range(columns.shape[1])))

    @classmethod
    def computational(cls, dim):
        return cls.from_matrix(np.eye(dim))

    @classmethod
    def eigenbasis(cls, op):
        return cls.from_matrix(hermitian_eig(op).eigenvectors)

    @property
    def dim(self):
        return len(self.vectors)

    @property
    def matrix(self):
        return np.column_stack([v.amplitudes for v in self.vectors])


@dataclass(frozen=True)
class ProjectedBranch:
    """Weight |<p_i|psi12>|^2 and the normalized particle-1 state; state is None below MIN_BRANCH_WEIGHT"""
    weight: float
    state: StateVector = None

    @property
    def valid(self):
        return self.state is not None


@dataclass(frozen=True)
class ProjectedEnsemble:
    entries: tuple

    @property
    def total_weight(self):
        return float(sum(e.weight for e in self.entries))

    @property
    def weights(self):
        return np.array([e.weight for e in self.entries])

    def valid_entries(self):
        return [e for e in self.entries if e.valid]


def project_particle2(psi12, basis):
    if psi12.n_particles != 2:
        raise DimensionMismatch("Expected a two-particle state, got dims {}".format(psi12.dims))
    n1, n2 = psi12.dims
    if basis.dim != n2:
        raise IncompleteBasis("A basis of dimension {} does not span particle 2 of dimension {}".format(basis.dim, n2))
    # column i holds <p_i|_2 |psi12>
    branches = psi12.as_matrix() @ basis.matrix.conj()
    entries = []
    for i in range(n2):
        weight = float(np.vdot(branches[:, i], branches[:, i]).real)
        if weight < MIN_BRANCH_WEIGHT:
            entries.append(ProjectedBranch(weight))
        else:
            entries.append(ProjectedBranch(weight, StateVector((n1,), branches[:, i] / np.sqrt(weight))))
    return ProjectedEnsemble(tuple(entries))


def direct_error_sums(scenario):
    """<(A_3 - A'_2)^2> and <(B_1 - B'_2)^2> on psi123"""
    source = scenario.source
    dims = scenario.psi123.dims
    psi = scenario.psi123.amplitudes
    a_gap = embed_operator(source.pair.a, (3,), dims) - embed_operator(source.a_prime, (2,), dims)
    b_gap = embed_operator(source.pair.b, (1,), dims) - embed_operator(source.b_prime, (2,), dims)
    return float(np.linalg.norm(a_gap @ psi) ** 2), float(np.linalg.norm(b_gap @ psi) ** 2)


def weighted_error_sums(scenario, basis):
    """
    (sum_i w_i eps_i^2, sum_i w_i eta_i^2) over the branches of particle 2 projected onto basis.

    The sums are computed per branch with particle 3 as the meter (readout M = A) and again directly
    on psi123; IdentityViolation is raised when the two disagree by more than 1e-9.
    """
    source = scenario.source
    pair = source.pair
    meter = MeterModel(scenario.meter_state, scenario.interaction, pair.a)
    ensemble = project_particle2(source.psi12, basis)

    eps_sum, eta_sum = 0.0, 0.0
    for entry in ensemble.valid_entries():
        eps_sum += entry.weight * precision_sq(entry.state, pair.a, meter)
        eta_sum += entry.weight * disturbance_sq(entry.state, pair.b, meter)

    direct_eps, direct_eta = direct_error_sums(scenario)
    gap = max(abs(eps_sum - direct_eps), abs(eta_sum - direct_eta))
    if gap > TWO_ROUTE_TOLERANCE:
        raise IdentityViolation("Per-branch and direct error sums differ by {:.3e}".format(gap))
    return eps_sum, eta_sum
