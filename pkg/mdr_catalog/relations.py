"""
The six measurement-disturbance relations as inequalities in the (eps, eta) plane.

Every relation is evaluated through mdr_residual, i.e. left side minus right side, so that
membership, boundary tracing and distance minimization share one definition.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from base.errors import ContextInvalid, MissingMeasurementContext
from hilbert import TOL_CONSTRUCTION, commutator_half, expectation, std_dev

__all__ = ['MdrId', 'SURVIVING', 'EnsembleContext', 'MeasurementContext', 'ErrorPoint', 'mdr_residual',
           'satisfies', 'kappa', 'check_context', 'B2_ERROR_LIMIT']

# eps, eta <= 2 inside the qubit refinement (sqrt(1 - eps^2 / 4))
B2_ERROR_LIMIT = 2.0


class MdrId(str, Enum):
    HE = 'He'
    OZ = 'Oz'
    HA = 'Ha'
    WE = 'We'
    B1 = 'B1'
    B2 = 'B2'

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        for member in cls:
            if member.value.lower() == str(name).strip().lower():
                return member
        raise ValueError("Unknown MDR '{}', expected one of {}".format(name, [m.value for m in cls]))

    def __str__(self):
        return self.value

    @property
    def needs_measurement_context(self):
        return self in (MdrId.HA, MdrId.WE)


# relations that hold for every measurement (the Heisenberg-type one does not)
SURVIVING = (MdrId.OZ, MdrId.HA, MdrId.WE, MdrId.B1, MdrId.B2)

_KAPPA = {
    MdrId.HE: 2.0,
    MdrId.B2: 4.0 - 2.0 * np.sqrt(2.0),
    MdrId.B1: 1.0,
    MdrId.WE: 0.59,
    MdrId.HA: 2.0 / 5.0,
    MdrId.OZ: (2.0 - np.sqrt(2.0)) ** 2,
}


@dataclass(frozen=True)
class EnsembleContext:
    """(Delta A, Delta B, |<C>|) of the measured ensemble"""
    delta_a: float
    delta_b: float
    abs_c: float

    @property
    def robertson_valid(self):
        return self.delta_a * self.delta_b >= self.abs_c - TOL_CONSTRUCTION

    @classmethod
    def from_state(cls, state, a, b):
        c = commutator_half(a, b)
        return cls(std_dev(state, a), std_dev(state, b), abs(expectation(state, c)))


@dataclass(frozen=True)
class MeasurementContext:
    """Standard deviations of the meter readout and of the disturbed observable"""
    delta_cal_a: float
    delta_cal_b: float

    def __post_init__(self):
        if not (np.isfinite(self.delta_cal_a) and np.isfinite(self.delta_cal_b)) \
                or self.delta_cal_a < 0 or self.delta_cal_b < 0:
            raise ValueError("Measurement context needs finite nonnegative deviations")


@dataclass(frozen=True)
class ErrorPoint:
    eps: float
    eta: float

    def __post_init__(self):
        if self.eps < 0 or self.eta < 0:
            raise ValueError("Precision and disturbance are nonnegative, got ({}, {})".format(self.eps, self.eta))

    @property
    def distance_sq(self):
        return self.eps ** 2 + self.eta ** 2


def check_context(mdr, ctx):
    if not ctx.robertson_valid:
        raise ContextInvalid("Robertson relation violated: {} * {} < {}".format(ctx.delta_a, ctx.delta_b, ctx.abs_c))
    if mdr is MdrId.B2 and max(ctx.delta_a, ctx.delta_b) > 1.0 + TOL_CONSTRUCTION:
        raise ContextInvalid("The qubit refinement needs Delta A, Delta B <= 1")


def _sqrt_domain(x):
    """sqrt that maps arguments below -1e-12 to nan (outside the relation's domain)"""
    x = np.asarray(x, dtype=float)
    return np.where(x < -TOL_CONSTRUCTION, np.nan, np.sqrt(np.clip(x, 0.0, None)))


def mdr_residual(mdr, eps, eta, delta_a, delta_b, abs_c, mctx=None):
    """
    Left side minus right side of the relation; the point is allowed iff the residual is >= 0.

    Arguments broadcast. For Ha and We without mctx the optimal-measurement substitution
    (Delta calA)^2 = (Delta A)^2 - eps^2, (Delta calB)^2 = (Delta B)^2 - eta^2 is used, which
    yields nan outside eps <= Delta A, eta <= Delta B. B2 yields nan for eps or eta above 2.
    """
    mdr = MdrId.parse(mdr)
    eps, eta = np.asarray(eps, dtype=float), np.asarray(eta, dtype=float)
    c = np.asarray(abs_c, dtype=float)
    if mdr is MdrId.HE:
        return eps * eta - c
    if mdr is MdrId.OZ:
        return eps * eta + eps * delta_b + eta * delta_a - c
    if mdr is MdrId.B1:
        radical = _sqrt_domain(np.asarray(delta_a) ** 2 * np.asarray(delta_b) ** 2 - c ** 2)
        return (np.asarray(delta_b) ** 2 * eps ** 2 + np.asarray(delta_a) ** 2 * eta ** 2
                + 2 * eps * eta * radical - c ** 2)
    if mdr is MdrId.B2:
        shrink_eps = _sqrt_domain(1 - eps ** 2 / 4)
        shrink_eta = _sqrt_domain(1 - eta ** 2 / 4)
        return (eps ** 2 * shrink_eps ** 2 + eta ** 2 * shrink_eta ** 2
                + 2 * eps * eta * _sqrt_domain(1 - c ** 2) * shrink_eps * shrink_eta - c ** 2)

    if mctx is None:
        cal_a = _sqrt_domain(np.asarray(delta_a) ** 2 - eps ** 2)
        cal_b = _sqrt_domain(np.asarray(delta_b) ** 2 - eta ** 2)
    else:
        cal_a, cal_b = mctx.delta_cal_a, mctx.delta_cal_b
    if mdr is MdrId.HA:
        return eps * eta + eps * cal_b + eta * cal_a - c
    if mdr is MdrId.WE:
        return eps * (cal_b + delta_b) + eta * (cal_a + delta_a) - 2 * c
    raise ValueError("Unhandled MDR {}".format(mdr))


def satisfies(mdr, point, ctx, mctx=None):
    """
    True iff the error point lies in the allowed region (1e-12 slack).

    Ha and We are evaluated with the deviations of the actual meter, hence mctx is required for them.
    """
    mdr = MdrId.parse(mdr)
    check_context(mdr, ctx)
    if mdr.needs_measurement_context and mctx is None:
        raise MissingMeasurementContext("{} needs the meter deviations".format(mdr.value))
    if mdr is MdrId.B2 and max(point.eps, point.eta) > B2_ERROR_LIMIT + TOL_CONSTRUCTION:
        raise ContextInvalid("The qubit refinement needs eps, eta <= 2")
    residual = mdr_residual(mdr, point.eps, point.eta, ctx.delta_a, ctx.delta_b, ctx.abs_c,
                            mctx if mdr.needs_measurement_context else None)
    return bool(residual >= -TOL_CONSTRUCTION)


def kappa(mdr):
    """Qubit constant with gamma_q = kappa_q |<C>| for sigma_y-type branches (We is a two-digit value)"""
    return float(_KAPPA[MdrId.parse(mdr)])
