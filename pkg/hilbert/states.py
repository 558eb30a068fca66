from dataclasses import dataclass
from functools import reduce
from math import prod

import numpy as np

from base.errors import DimensionMismatch, NonHermitianObservable

__all__ = ['TOL_CONSTRUCTION', 'TOL_IDENTITY', 'TOL_DEGENERACY', 'StateVector', 'basis_state', 'tensor',
           'expectation', 'std_dev', 'as_matrix']

# Tolerances shared by all layers: construction checks, algebraic identities and the degeneracy gap
TOL_CONSTRUCTION = 1e-12
TOL_IDENTITY = 1e-10
TOL_DEGENERACY = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    """
    Normalized pure state on a tensor-factored Hilbert space.

    The amplitudes are stored flat with particle 1 as the most significant index, i.e. for dims (2, 2)
    the basis order is |++>, |+->, |-+>, |-->, where |+> and |-> are the +1 and -1 eigenstates of Z.
    """
    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in np.atleast_1d(self.dims))
        amplitudes = np.array(self.amplitudes, dtype=complex).reshape(-1)
        if len(dims) == 0 or min(dims) < 1:
            raise DimensionMismatch("Tensor factor dimensions must be positive, got {}".format(dims))
        if amplitudes.size != prod(dims):
            raise DimensionMismatch("{} amplitudes do not fit dims {}".format(amplitudes.size, dims))
        norm_sq = np.vdot(amplitudes, amplitudes).real
        if abs(norm_sq - 1.0) > TOL_CONSTRUCTION:
            raise ValueError("State is not normalized: <psi|psi> = {:.3e}".format(norm_sq))
        amplitudes.setflags(write=False)
        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'amplitudes', amplitudes)

    @classmethod
    def from_amplitudes(cls, amplitudes, dims=None):
        """
        Normalizes the given amplitudes; dims defaults to a single factor
        """
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amplitudes)
        if norm == 0:
            raise ValueError("The zero vector is not a state")
        return cls(dims if dims is not None else (amplitudes.size,), amplitudes / norm)

    @property
    def dim(self):
        return self.amplitudes.size

    @property
    def n_particles(self):
        return len(self.dims)

    def as_matrix(self):
        """Coefficient matrix psi[a, b] of particle 1 (rows) against the remaining particles (columns)"""
        return self.amplitudes.reshape(self.dims[0], -1)

    def __repr__(self):
        return "StateVector(dims={}, amplitudes={})".format(self.dims, np.array2string(self.amplitudes, precision=4))


def basis_state(index, dims):
    dims = tuple(np.atleast_1d(dims))
    amplitudes = np.zeros(prod(dims), dtype=complex)
    amplitudes[index] = 1.0
    return StateVector(dims, amplitudes)


def as_matrix(op):
    matrix = np.asarray(op, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch("Expected a square matrix, got shape {}".format(matrix.shape))
    return matrix


def tensor(*operands):
    """
    Kronecker product of states (dims are concatenated in operand order) or of matrices
    """
    assert len(operands) >= 1, "tensor needs at least one operand"
    if all(isinstance(op, StateVector) for op in operands):
        dims = sum((op.dims for op in operands), ())
        return StateVector(dims, reduce(np.kron, [op.amplitudes for op in operands]))
    if any(isinstance(op, StateVector) for op in operands):
        raise TypeError("tensor expects operands of the same kind")
    return reduce(np.kron, [as_matrix(op) for op in operands])


def expectation(state, op):
    matrix = as_matrix(op)
    if matrix.shape[0] != state.dim:
        raise DimensionMismatch("Operator of dim {} on a state of dim {}".format(matrix.shape[0], state.dim))
    value = np.vdot(state.amplitudes, matrix @ state.amplitudes)
    if abs(value.imag) > TOL_IDENTITY:
        raise NonHermitianObservable("Expectation value has imaginary part {:.3e}".format(value.imag))
    return float(value.real)


def std_dev(state, op):
    matrix = as_matrix(op)
    variance = expectation(state, matrix @ matrix) - expectation(state, matrix) ** 2
    if variance < -TOL_CONSTRUCTION:
        raise NonHermitianObservable("Negative variance {:.3e}".format(variance))
    return float(np.sqrt(max(variance, 0.0)))
