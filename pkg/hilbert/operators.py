import numpy as np

from base.errors import DimensionMismatch, NotHermitian, NotUnitary
from hilbert.states import TOL_CONSTRUCTION, TOL_IDENTITY, as_matrix

__all__ = ['PAULI_I', 'PAULI_X', 'PAULI_Y', 'PAULI_Z', 'is_hermitian', 'is_unitary', 'require_hermitian',
           'require_unitary', 'commutator_half', 'embed_operator', 'pauli_along']


def _frozen(matrix):
    matrix = np.array(matrix, dtype=complex)
    matrix.setflags(write=False)
    return matrix


PAULI_I = _frozen([[1, 0], [0, 1]])
PAULI_X = _frozen([[0, 1], [1, 0]])
PAULI_Y = _frozen([[0, -1j], [1j, 0]])
PAULI_Z = _frozen([[1, 0], [0, -1]])


def is_hermitian(matrix, tol=TOL_CONSTRUCTION):
    matrix = as_matrix(matrix)
    return bool(np.max(np.abs(matrix - matrix.conj().T), initial=0.0) <= tol)


def is_unitary(matrix, tol=TOL_IDENTITY):
    matrix = as_matrix(matrix)
    residual = matrix.conj().T @ matrix - np.eye(matrix.shape[0])
    return bool(np.max(np.abs(residual), initial=0.0) <= tol)


def require_hermitian(matrix, name='matrix'):
    matrix = as_matrix(matrix)
    if not is_hermitian(matrix):
        raise NotHermitian("{} is not Hermitian within {}".format(name, TOL_CONSTRUCTION))
    return matrix


def require_unitary(matrix, name='matrix'):
    matrix = as_matrix(matrix)
    if not is_unitary(matrix):
        raise NotUnitary("{} is not unitary within {}".format(name, TOL_IDENTITY))
    return matrix


def commutator_half(a, b):
    """C = [A, B] / 2i, Hermitian whenever A and B are"""
    a, b = as_matrix(a), as_matrix(b)
    return (a @ b - b @ a) / 2j


def embed_operator(op, particles, dims):
    """
    Place an operator acting on the listed particles into the full tensor space.

    :param op: matrix on the particles in the order they are listed
    :param particles: 1-based particle numbers, e.g. (1, 3)
    :param dims: dimensions of all particles, particle 1 first
    :return: matrix of size prod(dims)
    """
    dims = tuple(int(d) for d in dims)
    targets = [p - 1 for p in particles]
    n = len(dims)
    if len(set(targets)) != len(targets) or min(targets) < 0 or max(targets) >= n:
        raise DimensionMismatch("Invalid particles {} for {} particles".format(particles, n))
    op = as_matrix(op)
    if op.shape[0] != int(np.prod([dims[t] for t in targets])):
        raise DimensionMismatch("Operator of dim {} does not act on particles {} with dims {}"
                                .format(op.shape[0], particles, dims))

    rest = [k for k in range(n) if k not in targets]
    order = targets + rest
    full = np.kron(op, np.eye(int(np.prod([dims[k] for k in rest])), dtype=complex))
    shape = [dims[k] for k in order]
    # axes of full follow `order`; move them back to natural particle order
    axes = [order.index(k) for k in range(n)]
    full = full.reshape(shape + shape).transpose(axes + [n + a for a in axes])
    total = int(np.prod(dims))
    return full.reshape(total, total)


def pauli_along(direction):
    """sigma . n for a unit direction n = (x, y, z)"""
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > TOL_CONSTRUCTION:
        raise ValueError("Direction {} is not a unit vector".format(direction))
    return n[0] * PAULI_X + n[1] * PAULI_Y + n[2] * PAULI_Z
