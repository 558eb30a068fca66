"""
Shortest squared distance f_q from the allowed region to the origin, and boundary traces.

The (eps, eta) quadrant is scanned along rays eps = r cos(t), eta = r sin(t). For each direction the
entry radius is the smallest r at which the ray enters the allowed region; f_q is the minimum of its
square over t in [0, pi/2]. Working with first entry rather than with a level-set parametrization keeps
this valid for the relations whose residual is not monotone along a ray (Ha, We, B2).
"""
import logging
import math

import numpy as np
import pandas as pd
from scipy.optimize import brentq, minimize_scalar

from hilbert import TOL_CONSTRUCTION
from mdr_catalog.relations import B2_ERROR_LIMIT, ErrorPoint, MdrId, check_context, mdr_residual

__all__ = ['shortest_distance_sq', 'shortest_distance_sq_batch', 'entry_radius', 'region_boundary',
           'allowed_region_grid', 'b1_quadratic_form']

logger = logging.getLogger(__name__)

_COARSE_ANGLES = 129
_DENSE_ANGLES = 10_000
_SCAN_RADII = 256
_MAX_BATCH_ELEMENTS = 2_000_000
_HALF_PI = np.pi / 2


def b1_quadratic_form(delta_a, delta_b, abs_c):
    """Matrix of the B1 ellipse: (eps, eta) M (eps, eta)^T >= |<C>|^2"""
    s = np.sqrt(max(delta_a ** 2 * delta_b ** 2 - abs_c ** 2, 0.0))
    return np.array([[delta_b ** 2, s], [s, delta_a ** 2]])


def _divide_or_inf(num, den):
    den = np.asarray(den, dtype=float)
    safe = np.where(den > 0, den, 1.0)
    return np.where(den > 0, np.asarray(num, dtype=float) / safe, np.inf)


def _closed_form_radii(mdr, delta_a, delta_b, abs_c, cos_t, sin_t):
    cs = cos_t * sin_t
    if mdr is MdrId.HE:
        return np.sqrt(_divide_or_inf(abs_c, cs))
    if mdr is MdrId.OZ:
        # positive root of cs r^2 + p r - |C| = 0, written without cancellation
        p = delta_b * cos_t + delta_a * sin_t
        return _divide_or_inf(2 * abs_c, p + np.sqrt(p ** 2 + 4 * cs * abs_c))
    if mdr is MdrId.B1:
        s = np.sqrt(np.clip(delta_a ** 2 * delta_b ** 2 - abs_c ** 2, 0.0, None))
        q = delta_b ** 2 * cos_t ** 2 + delta_a ** 2 * sin_t ** 2 + 2 * cs * s
        return _divide_or_inf(abs_c, np.sqrt(q))
    raise ValueError("{} has no closed-form entry radius".format(mdr))


def _ray_limit(mdr, delta_a, delta_b, cos_t, sin_t):
    """Largest radius along the ray that stays inside the relation's domain"""
    if mdr is MdrId.B2:
        return np.minimum(_divide_or_inf(B2_ERROR_LIMIT, cos_t), _divide_or_inf(B2_ERROR_LIMIT, sin_t))
    return np.minimum(_divide_or_inf(delta_a, cos_t), _divide_or_inf(delta_b, sin_t))


def _scanned_radii(mdr, delta_a, delta_b, abs_c, cos_t, sin_t, n_radii):
    """
    Entry radii by scanning n_radii points per ray and interpolating linearly between the last
    forbidden and the first allowed sample. All array arguments broadcast to a common shape S;
    the result has shape S.
    """
    limit = _ray_limit(mdr, delta_a, delta_b, cos_t, sin_t)
    fractions = np.linspace(0.0, 1.0, n_radii)
    radii = limit[..., None] * fractions
    with np.errstate(invalid='ignore'):
        g = mdr_residual(mdr, radii * cos_t[..., None], radii * sin_t[..., None],
                         delta_a[..., None], delta_b[..., None], abs_c[..., None])
        allowed = g >= 0
    found = allowed.any(axis=-1)
    first = np.argmax(allowed, axis=-1)[..., None]
    before = np.clip(first - 1, 0, None)
    r_hi = np.take_along_axis(radii, first, -1)[..., 0]
    r_lo = np.take_along_axis(radii, before, -1)[..., 0]
    g_hi = np.take_along_axis(g, first, -1)[..., 0]
    g_lo = np.take_along_axis(g, before, -1)[..., 0]
    with np.errstate(invalid='ignore', divide='ignore'):
        weight = np.where(np.isfinite(g_lo) & (g_hi > g_lo), -g_lo / (g_hi - g_lo), 1.0)
    radius = np.where(first[..., 0] == 0, 0.0, r_lo + (r_hi - r_lo) * weight)
    return np.where(found, radius, np.inf)


def _coarse_radii(mdr, delta_a, delta_b, abs_c, angles, n_radii=_SCAN_RADII):
    cos_t, sin_t = np.cos(angles), np.sin(angles)
    delta_a, delta_b, abs_c, cos_t, sin_t = np.broadcast_arrays(np.asarray(delta_a, dtype=float),
                                                                np.asarray(delta_b, dtype=float),
                                                                np.asarray(abs_c, dtype=float), cos_t, sin_t)
    if mdr in (MdrId.HE, MdrId.OZ, MdrId.B1):
        return _closed_form_radii(mdr, delta_a, delta_b, abs_c, cos_t, sin_t)
    return _scanned_radii(mdr, delta_a, delta_b, abs_c, cos_t, sin_t, n_radii)


def entry_radius(mdr, ctx, angle):
    """
    Exact entry radius along one direction (inf if the ray never enters the allowed region)
    """
    mdr = MdrId.parse(mdr)
    if mdr in (MdrId.HE, MdrId.OZ, MdrId.B1):
        return float(_coarse_radii(mdr, ctx.delta_a, ctx.delta_b, ctx.abs_c, np.asarray(angle)))
    cos_t, sin_t = np.cos(angle), np.sin(angle)
    limit = float(_ray_limit(mdr, ctx.delta_a, ctx.delta_b, np.asarray(cos_t), np.asarray(sin_t)))
    radii = limit * np.linspace(0.0, 1.0, _SCAN_RADII)
    with np.errstate(invalid='ignore'):
        g = mdr_residual(mdr, radii * cos_t, radii * sin_t, ctx.delta_a, ctx.delta_b, ctx.abs_c)
        allowed = g >= 0
    if not allowed.any():
        return np.inf
    k = int(np.argmax(allowed))
    if k == 0:
        return 0.0
    if g[k] == 0.0:
        return float(radii[k])
    return brentq(lambda r: _scalar_residual(mdr, r * cos_t, r * sin_t, ctx), radii[k - 1], radii[k],
                  xtol=1e-15, rtol=1e-14)


def _scalar_residual(mdr, eps, eta, ctx):
    """Float-only twin of mdr_residual for Ha/We/B2 inside root finding"""
    c = ctx.abs_c
    if mdr is MdrId.B2:
        shrink_eps = math.sqrt(max(1 - eps * eps / 4, 0.0))
        shrink_eta = math.sqrt(max(1 - eta * eta / 4, 0.0))
        return (eps * eps * shrink_eps ** 2 + eta * eta * shrink_eta ** 2
                + 2 * eps * eta * math.sqrt(max(1 - c * c, 0.0)) * shrink_eps * shrink_eta - c * c)
    cal_a = math.sqrt(max(ctx.delta_a ** 2 - eps * eps, 0.0))
    cal_b = math.sqrt(max(ctx.delta_b ** 2 - eta * eta, 0.0))
    if mdr is MdrId.HA:
        return eps * eta + eps * cal_b + eta * cal_a - c
    return eps * (cal_b + ctx.delta_b) + eta * (cal_a + ctx.delta_a) - 2 * c


def _refine(mdr, ctx, angles, radii):
    k = int(np.argmin(radii))
    lo, hi = angles[max(k - 1, 0)], angles[min(k + 1, len(angles) - 1)]
    result = minimize_scalar(lambda t: entry_radius(mdr, ctx, t) ** 2, bounds=(lo, hi), method='bounded',
                             options={'xatol': 1e-9})
    value = min(float(result.fun), entry_radius(mdr, ctx, angles[k]) ** 2)
    at_inner_edge = (np.isclose(result.x, lo, atol=1e-9) and lo > 0) or \
                    (np.isclose(result.x, hi, atol=1e-9) and hi < _HALF_PI)
    return value, at_inner_edge


def shortest_distance_sq(mdr, ctx):
    """
    f_q(Delta A, Delta B, |<C>|) = min eps^2 + eta^2 over the allowed region.

    Closed forms for He (2|<C>|) and B1 (|<C>|^2 / lambda_max of the ellipse matrix); the other relations
    are minimized over the ray direction with a bounded golden-section/Brent search around the best
    coarse direction, repeated on a dense grid when the optimum sits on the edge of the search bracket.
    """
    mdr = MdrId.parse(mdr)
    check_context(mdr, ctx)
    if ctx.abs_c <= 0.0:
        return 0.0
    if mdr is MdrId.HE:
        return 2.0 * ctx.abs_c
    if mdr is MdrId.B1:
        lambda_max = np.linalg.eigvalsh(b1_quadratic_form(ctx.delta_a, ctx.delta_b, ctx.abs_c))[-1]
        return float(ctx.abs_c ** 2 / lambda_max)

    angles = np.linspace(0.0, _HALF_PI, _COARSE_ANGLES)
    value, at_edge = _refine(mdr, ctx, angles, _coarse_radii(mdr, ctx.delta_a, ctx.delta_b, ctx.abs_c, angles))
    if at_edge:
        logger.debug("%s: optimum on the bracket edge, repeating on %d directions", mdr.value, _DENSE_ANGLES)
        angles = np.linspace(0.0, _HALF_PI, _DENSE_ANGLES)
        dense_value, _ = _refine(mdr, ctx, angles,
                                 _coarse_radii(mdr, ctx.delta_a, ctx.delta_b, ctx.abs_c, angles))
        value = min(value, dense_value)
    if not np.isfinite(value):
        raise ArithmeticError("{} allowed region not reached for {}".format(mdr.value, ctx))
    return value


def shortest_distance_sq_batch(mdr, delta_a, delta_b, abs_c, n_angles=24, n_radii=64):
    """
    Approximate f_q for many contexts at once (used to rank candidates before exact evaluation).
    He and B1 are exact; the others are minimized over a fixed direction grid.
    """
    mdr = MdrId.parse(mdr)
    delta_a, delta_b, abs_c = np.broadcast_arrays(np.atleast_1d(np.asarray(delta_a, dtype=float)),
                                                  np.atleast_1d(np.asarray(delta_b, dtype=float)),
                                                  np.atleast_1d(np.asarray(abs_c, dtype=float)))
    # round-off may push |<C>| marginally above Delta A Delta B
    abs_c = np.minimum(abs_c, delta_a * delta_b)
    if mdr is MdrId.HE:
        return 2.0 * abs_c
    if mdr is MdrId.B1:
        total = delta_a ** 2 + delta_b ** 2
        lambda_max = (total + np.sqrt(np.clip(total ** 2 - 4 * abs_c ** 2, 0.0, None))) / 2
        return np.where(abs_c > 0, abs_c ** 2 / np.where(lambda_max > 0, lambda_max, 1.0), 0.0)

    angles = np.linspace(0.0, _HALF_PI, n_angles)
    chunk = max(1, _MAX_BATCH_ELEMENTS // (n_angles * n_radii))
    values = np.empty(abs_c.size)
    for start in range(0, abs_c.size, chunk):
        part = slice(start, start + chunk)
        radii = _coarse_radii(mdr, delta_a[part, None], delta_b[part, None], abs_c[part, None],
                              angles[None, :], n_radii)
        values[part] = np.min(radii, axis=1) ** 2
    return np.where(abs_c > 0, values, 0.0)


def region_boundary(mdr, ctx, n):
    """
    n points on the boundary of the allowed region, ordered by direction from the eps axis to the
    eta axis. Directions whose rays never reach the region are dropped (logged).
    """
    mdr = MdrId.parse(mdr)
    check_context(mdr, ctx)
    if n < 2:
        raise ValueError("A boundary trace needs at least 2 points")
    if mdr is MdrId.HE:
        # the hyperbola only reaches the axes at infinity
        angles = np.linspace(0.0, _HALF_PI, n + 2)[1:-1]
    else:
        angles = np.linspace(0.0, _HALF_PI, n)
    radii = np.array([entry_radius(mdr, ctx, t) for t in angles])
    finite = np.isfinite(radii)
    if not finite.all() and finite.sum() >= 2:
        angles = np.linspace(angles[finite][0], angles[finite][-1], n)
        radii = np.array([entry_radius(mdr, ctx, t) for t in angles])
        finite = np.isfinite(radii)
    if not finite.all():
        logger.warning("%s: dropped %d boundary directions outside the region", mdr.value, int((~finite).sum()))
    return [ErrorPoint(float(r * np.cos(t)), float(r * np.sin(t))) for t, r in zip(angles[finite], radii[finite])]


def allowed_region_grid(mdr, ctx, eps_max, eta_max, n):
    """
    Membership of an n x n grid over [0, eps_max] x [0, eta_max], the shaded areas of the region plots.
    Ha and We use the optimal-measurement substitution.
    """
    mdr = MdrId.parse(mdr)
    check_context(mdr, ctx)
    eps, eta = np.meshgrid(np.linspace(0.0, eps_max, n), np.linspace(0.0, eta_max, n), indexing='ij')
    with np.errstate(invalid='ignore'):
        residual = mdr_residual(mdr, eps, eta, ctx.delta_a, ctx.delta_b, ctx.abs_c)
        allowed = residual >= -TOL_CONSTRUCTION
    return pd.DataFrame({'eps': eps.ravel(), 'eta': eta.ravel(), 'allowed': allowed.ravel()})
