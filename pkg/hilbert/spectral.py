from dataclasses import dataclass
from functools import cached_property

import numpy as np

from base.errors import Degenerate, DimensionMismatch
from hilbert.operators import require_hermitian
from hilbert.states import TOL_DEGENERACY, StateVector

__all__ = ['SpectralDecomposition', 'Observable', 'hermitian_eig', 'basis_change']

# components below this modulus are skipped when fixing the eigenvector phase
_PHASE_CUTOFF = 1e-9


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """
    Ascending eigenvalues and the matching unitary of column eigenvectors.
    Each eigenvector has its first component with modulus > 1e-9 real and positive.
    """
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def dim(self):
        return self.eigenvalues.size

    @property
    def degenerate(self):
        return bool(np.any(np.diff(self.eigenvalues) < TOL_DEGENERACY))

    def vector(self, i):
        return StateVector((self.dim,), self.eigenvectors[:, i])

    def reconstruct(self):
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def _fix_phases(vectors):
    vectors = vectors.copy()
    for col in range(vectors.shape[1]):
        column = vectors[:, col]
        lead = np.flatnonzero(np.abs(column) > _PHASE_CUTOFF)[0]
        vectors[:, col] = column * (np.conj(column[lead]) / np.abs(column[lead]))
    return vectors


def hermitian_eig(matrix):
    """
    Spectral decomposition with a deterministic ordering and phase convention.
    Raises NotHermitian if the input fails the Hermiticity check.
    """
    matrix = require_hermitian(matrix)
    matrix = (matrix + matrix.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(matrix)
    eigenvectors = _fix_phases(eigenvectors)
    eigenvalues.setflags(write=False)
    eigenvectors.setflags(write=False)
    return SpectralDecomposition(eigenvalues, eigenvectors)


def basis_change(source, target):
    """
    Unitary W with |beta_i> = sum_mu |alpha_mu> w_{mu i}, i.e. W = <alpha_mu|beta_i>

    :param source: decomposition providing the |alpha_mu>
    :param target: decomposition providing the |beta_i>
    """
    if source.dim != target.dim:
        raise DimensionMismatch("Cannot change basis between dims {} and {}".format(source.dim, target.dim))
    if source.degenerate or target.degenerate:
        raise Degenerate("Eigenbasis change is not unique for degenerate spectra")
    return source.eigenvectors.conj().T @ target.eigenvectors


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian matrix with a lazily computed spectral decomposition"""
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(require_hermitian(self.matrix, 'observable'))
        matrix.setflags(write=False)
        object.__setattr__(self, 'matrix', matrix)

    @cached_property
    def spectrum(self):
        return hermitian_eig(self.matrix)

    @property
    def dim(self):
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)
