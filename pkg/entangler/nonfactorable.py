"""
Maximally entangled two-particle states that transfer the action of an observable pair (A, B) on
particle 1 to a primed pair (A', B') on particle 2:

    (A x I)|psi12> = (I x A')|psi12>,    (B x I)|psi12> = (I x B')|psi12>

Construction in the A-eigenbasis: W_{mu i} = <alpha_mu|beta_i>, U = W V W^T, and
|psi12> = N^-1/2 sum_i |alpha_i>|alpha'_i> with |alpha'_i> = U|alpha_i>. Here U is given by its matrix
in the A-eigenbasis and V by its matrix in the B-eigenbasis; both are mapped to computational-basis
operators before they act on states.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from hilbert import (StateVector, basis_change, commutator_half, hermitian_eig, require_hermitian,
                     require_unitary)

__all__ = ['ObservablePair', 'NonfactorableState', 'build_nonfactorable', 'assemble_from_unitaries',
           'verify_transfer', 'dual_basis_form', 'schmidt_coefficients', 'congruence_residual']


@dataclass(frozen=True, eq=False)
class ObservablePair:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        a = np.array(require_hermitian(self.a, 'A'))
        b = np.array(require_hermitian(self.b, 'B'))
        assert a.shape == b.shape, "A and B must act on the same space"
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, 'a', a)
        object.__setattr__(self, 'b', b)

    @property
    def dim(self):
        return self.a.shape[0]

    @cached_property
    def c(self):
        return commutator_half(self.a, self.b)

    @cached_property
    def spectrum_a(self):
        return hermitian_eig(self.a)

    @cached_property
    def spectrum_b(self):
        return hermitian_eig(self.b)


@dataclass(frozen=True, eq=False)
class NonfactorableState:
    """
    psi12 together with the primed observables.

    u, v and w are coefficient matrices (u in the A-eigenbasis, v in the B-eigenbasis, w the change
    between them); u_operator and v_operator are the same maps in the computational basis.
    """
    pair: ObservablePair
    psi12: StateVector
    a_prime: np.ndarray
    b_prime: np.ndarray
    u: np.ndarray
    v: np.ndarray
    w: np.ndarray

    @property
    def dim(self):
        return self.pair.dim

    @property
    def u_operator(self):
        basis = self.pair.spectrum_a.eigenvectors
        return basis @ self.u @ basis.conj().T

    @property
    def v_operator(self):
        basis = self.pair.spectrum_b.eigenvectors
        return basis @ self.v @ basis.conj().T


def assemble_from_unitaries(pair, u, v):
    """
    Builds the state and primed observables for arbitrary u and v, without enforcing congruence.
    The transfer identity for B only holds when u = W v W^T.
    """
    u = require_unitary(u, 'U')
    v = require_unitary(v, 'V')
    w = basis_change(pair.spectrum_a, pair.spectrum_b)
    n = pair.dim
    alpha = pair.spectrum_a.eigenvectors
    beta = pair.spectrum_b.eigenvectors
    u_op = alpha @ u @ alpha.conj().T
    v_op = beta @ v @ beta.conj().T

    # sum_i |alpha_i> (x) U|alpha_i>
    amplitudes = sum(np.kron(alpha[:, i], u_op @ alpha[:, i]) for i in range(n)) / np.sqrt(n)
    a_prime = u_op @ pair.a @ u_op.conj().T
    b_prime = v_op @ pair.b @ v_op.conj().T
    return NonfactorableState(pair=pair,
                              psi12=StateVector((n, n), amplitudes),
                              a_prime=(a_prime + a_prime.conj().T) / 2,
                              b_prime=(b_prime + b_prime.conj().T) / 2,
                              u=u, v=v, w=w)


def build_nonfactorable(pair, v=None, congruence='transpose'):
    """
    :param pair: observables with simple spectra
    :param v: unitary in the B-eigenbasis, identity by default
    :param congruence: 'transpose' gives U = W V W^T; 'adjoint' gives U = W V W^dagger, which breaks the
        B-transfer identity and only serves as a negative control
    """
    n = pair.dim
    v = np.eye(n, dtype=complex) if v is None else require_unitary(v, 'V')
    w = basis_change(pair.spectrum_a, pair.spectrum_b)
    if congruence == 'transpose':
        u = w @ v @ w.T
    elif congruence == 'adjoint':
        u = w @ v @ w.conj().T
    else:
        raise ValueError("Unknown congruence '{}'".format(congruence))
    return assemble_from_unitaries(pair, u, v)


def verify_transfer(state):
    """Residual norms of (A x I - I x A')|psi12> and (B x I - I x B')|psi12>"""
    n = state.dim
    identity = np.eye(n)
    psi = state.psi12.amplitudes
    residual_a = (np.kron(state.pair.a, identity) - np.kron(identity, state.a_prime)) @ psi
    residual_b = (np.kron(state.pair.b, identity) - np.kron(identity, state.b_prime)) @ psi
    return float(np.linalg.norm(residual_a)), float(np.linalg.norm(residual_b))


def dual_basis_form(state):
    """Distance between psi12 and N^-1/2 sum_i |beta_i> (x) V|beta_i>"""
    n = state.dim
    beta = state.pair.spectrum_b.eigenvectors
    v_op = state.v_operator
    dual = sum(np.kron(beta[:, i], v_op @ beta[:, i]) for i in range(n)) / np.sqrt(n)
    return float(np.linalg.norm(state.psi12.amplitudes - dual))


def schmidt_coefficients(state):
    psi12 = state.psi12 if isinstance(state, NonfactorableState) else state
    return np.linalg.svd(psi12.as_matrix(), compute_uv=False)


def congruence_residual(state):
    """max |U - W V W^T|, zero for states from build_nonfactorable with the default congruence"""
    return float(np.max(np.abs(state.u - state.w @ state.v @ state.w.T)))

