"""
Operator-formalism precision and disturbance of a meter coupled to a system:

    eps(A)^2 = <(calA - A x I)^2>,  calA = U^dagger (I x M) U
    eta(B)^2 = <(calB - B x I)^2>,  calB = U^dagger (B x I) U

evaluated on |psi>|phi>, system first.
"""
from dataclasses import dataclass

import numpy as np

from base.errors import DimensionMismatch, NotQubit
from hilbert import (TOL_CONSTRUCTION, StateVector, as_matrix, embed_operator, require_hermitian, require_unitary,
                     std_dev, tensor)
from mdr_catalog import MeasurementContext

__all__ = ['MeterModel', 'precision_sq', 'disturbance_sq', 'measurement_context', 'cnot', 'CNOT']

CNOT = np.array([[1, 0, 0, 0],
                 [0, 1, 0, 0],
                 [0, 0, 0, 1],
                 [0, 0, 1, 0]], dtype=complex)
CNOT.setflags(write=False)


@dataclass(frozen=True, eq=False)
class MeterModel:
    meter_state: StateVector
    coupling: np.ndarray
    readout: np.ndarray

    def __post_init__(self):
        coupling = np.array(require_unitary(self.coupling, 'coupling'))
        readout = np.array(require_hermitian(self.readout, 'readout'))
        if readout.shape[0] != self.meter_state.dim:
            raise DimensionMismatch("Readout of dim {} for a meter of dim {}"
                                    .format(readout.shape[0], self.meter_state.dim))
        if coupling.shape[0] % self.meter_state.dim:
            raise DimensionMismatch("Coupling of dim {} cannot act on a meter of dim {}"
                                    .format(coupling.shape[0], self.meter_state.dim))
        coupling.setflags(write=False)
        readout.setflags(write=False)
        object.__setattr__(self, 'coupling', coupling)
        object.__setattr__(self, 'readout', readout)

    @property
    def system_dim(self):
        return self.coupling.shape[0] // self.meter_state.dim

    def joint_state(self, system):
        if system.dim != self.system_dim:
            raise DimensionMismatch("System of dim {} for a coupling expecting {}".format(system.dim, self.system_dim))
        return tensor(StateVector((system.dim,), system.amplitudes), self.meter_state)

    def readout_heisenberg(self):
        """calA = U^dagger (I x M) U"""
        lifted = np.kron(np.eye(self.system_dim), self.readout)
        return self.coupling.conj().T @ lifted @ self.coupling

    def disturbed(self, b):
        """calB = U^dagger (B x I) U"""
        lifted = np.kron(as_matrix(b), np.eye(self.meter_state.dim))
        return self.coupling.conj().T @ lifted @ self.coupling


def _mean_square_difference(joint, evolved, ideal):
    # <(X - Y)^2> = ||(X - Y)|psi>||^2 for Hermitian X - Y
    value = float(np.linalg.norm((evolved - ideal) @ joint.amplitudes) ** 2)
    assert value >= -TOL_CONSTRUCTION
    return max(value, 0.0)


def _lifted(op, meter, name):
    op = as_matrix(op)
    if op.shape[0] != meter.system_dim:
        raise DimensionMismatch("{} of dim {} for a system of dim {}".format(name, op.shape[0], meter.system_dim))
    return np.kron(op, np.eye(meter.meter_state.dim))


def precision_sq(system, a, meter):
    joint = meter.joint_state(system)
    return _mean_square_difference(joint, meter.readout_heisenberg(), _lifted(a, meter, 'A'))


def disturbance_sq(system, b, meter):
    joint = meter.joint_state(system)
    ideal = _lifted(b, meter, 'B')
    return _mean_square_difference(joint, meter.disturbed(b), ideal)


def measurement_context(system, b, meter):
    """(Delta calA, Delta calB) on |psi>|phi>, the meter-side inputs of the Ha and We relations"""
    joint = meter.joint_state(system)
    _lifted(b, meter, 'B')
    return MeasurementContext(std_dev(joint, meter.readout_heisenberg()), std_dev(joint, meter.disturbed(b)))


def cnot(control, target, dims):
    """
    CNOT with 1-based particle numbers embedded into the tensor space of dims
    """
    dims = tuple(dims)
    if control == target:
        raise DimensionMismatch("Control and target must differ")
    for particle in (control, target):
        if not 1 <= particle <= len(dims):
            raise DimensionMismatch("Particle {} out of range for dims {}".format(particle, dims))
        if dims[particle - 1] != 2:
            raise NotQubit("Particle {} has dimension {}".format(particle, dims[particle - 1]))
    return embed_operator(CNOT, (control, target), dims)
