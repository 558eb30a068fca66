import numpy as np
import pytest

from base.errors import ContextInvalid, MissingMeasurementContext
from mdr_catalog import (EnsembleContext, ErrorPoint, MdrId, MeasurementContext, SURVIVING, allowed_region_grid,
                         entry_radius, kappa, mdr_residual, region_boundary, satisfies, shortest_distance_sq,
                         shortest_distance_sq_batch)

SYMMETRIC = EnsembleContext(1.0, 1.0, 1.0)
ASYMMETRIC = EnsembleContext(1.5, 0.9, 1.0)


def weston_symmetric_value():
    # 2 x^2 with x the real root of x^3 + x^2 + x - 1
    roots = np.roots([1.0, 1.0, 1.0, -1.0])
    x = roots[np.abs(roots.imag) < 1e-12].real[0]
    return 2 * x ** 2


@pytest.mark.parametrize("mdr, expected", [
    (MdrId.HE, 2.0),
    (MdrId.B1, 1.0),
    (MdrId.OZ, (2 - np.sqrt(2)) ** 2),
    (MdrId.HA, 0.4),
    (MdrId.B2, 4 - 2 * np.sqrt(2)),
    (MdrId.WE, weston_symmetric_value()),
])
def test_golden_values(mdr, expected):
    assert shortest_distance_sq(mdr, SYMMETRIC) == pytest.approx(expected, abs=1e-6)


def test_weston_matches_published_digits():
    assert shortest_distance_sq(MdrId.WE, SYMMETRIC) == pytest.approx(0.591, abs=5e-3)


def test_symmetric_ordering():
    f = {mdr: shortest_distance_sq(mdr, SYMMETRIC) for mdr in MdrId}
    assert f[MdrId.OZ] < f[MdrId.HA] < f[MdrId.WE] < f[MdrId.B1] < f[MdrId.B2] < f[MdrId.HE]


@pytest.mark.parametrize("mdr", list(MdrId))
def test_boundary_trace_agrees_with_minimum(mdr):
    # 2001 directions contain the diagonal, where the symmetric optimum lies
    points = region_boundary(mdr, SYMMETRIC, 2001)
    trace_min = min(p.distance_sq for p in points)
    assert trace_min == pytest.approx(shortest_distance_sq(mdr, SYMMETRIC), abs=1e-6)


def test_heisenberg_trace_lies_on_hyperbola():
    points = region_boundary(MdrId.HE, SYMMETRIC, 200)
    products = np.array([p.eps * p.eta for p in points])
    np.testing.assert_allclose(products, 1.0, atol=1e-8)
    assert all(p.eps > 0 and p.eta > 0 for p in points)


@pytest.mark.parametrize("mdr", [MdrId.OZ, MdrId.HA, MdrId.WE, MdrId.B1, MdrId.B2])
def test_boundary_points_have_zero_residual(mdr):
    for p in region_boundary(mdr, SYMMETRIC, 25)[1:-1]:
        residual = mdr_residual(mdr, p.eps, p.eta, 1.0, 1.0, 1.0)
        assert abs(residual) < 1e-9


@pytest.mark.parametrize("mdr", [MdrId.HE, MdrId.OZ, MdrId.HA, MdrId.WE, MdrId.B1])
def test_homogeneity(mdr):
    ctx = EnsembleContext(1.2, 0.8, 0.5)
    s = 1.7
    scaled = EnsembleContext(s * ctx.delta_a, s * ctx.delta_b, s ** 2 * ctx.abs_c)
    assert shortest_distance_sq(mdr, scaled) == pytest.approx(s ** 2 * shortest_distance_sq(mdr, ctx), rel=1e-6)


def test_vanishing_commutator_gives_zero():
    for mdr in MdrId:
        assert shortest_distance_sq(mdr, EnsembleContext(1.0, 1.0, 0.0)) == 0.0


@pytest.mark.parametrize("mdr", list(MdrId))
def test_batch_ranks_like_exact(mdr):
    contexts = [EnsembleContext(1.0, 1.0, 1.0), EnsembleContext(1.0, 0.9, 0.6), EnsembleContext(0.7, 0.95, 0.3)]
    coarse = shortest_distance_sq_batch(mdr, [c.delta_a for c in contexts], [c.delta_b for c in contexts],
                                        [c.abs_c for c in contexts])
    exact = np.array([shortest_distance_sq(mdr, c) for c in contexts])
    np.testing.assert_allclose(coarse, exact, rtol=5e-2)
    assert np.all(coarse >= exact - 1e-3)


def test_entry_radius_on_diagonal_for_b1():
    assert entry_radius(MdrId.B1, SYMMETRIC, np.pi / 4) == pytest.approx(1.0)


def bisected_entry_radii(mdr, ctx, angles, r_max=None, n_radii=400, steps=60):
    """
    First radius at which each ray enters the allowed region: scan n_radii points per ray, then bisect the
    bracket around the first allowed sample. Without r_max the rays stop at the box [0, dA] x [0, dB].
    """
    cos_t, sin_t = np.cos(angles), np.sin(angles)
    if r_max is None:
        with np.errstate(divide='ignore'):
            limit = np.minimum(ctx.delta_a / cos_t, ctx.delta_b / sin_t)
    else:
        limit = np.full_like(angles, r_max)

    def allowed(r, c, s):
        with np.errstate(invalid='ignore'):
            return mdr_residual(mdr, r * c, r * s, ctx.delta_a, ctx.delta_b, ctx.abs_c) >= 0

    radii = limit[:, None] * np.linspace(0.0, 1.0, n_radii)
    inside = allowed(radii, cos_t[:, None], sin_t[:, None])
    found = inside.any(axis=1)
    rows = np.arange(len(angles))
    first = np.argmax(inside, axis=1)
    hi = radii[rows, first]
    lo = radii[rows, np.clip(first - 1, 0, None)]
    for _ in range(steps):
        mid = (lo + hi) / 2
        ok = allowed(mid, cos_t, sin_t)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return np.where(found, hi, np.inf)


def bisected_distance_sq(mdr, ctx, r_max=None):
    angles = np.linspace(0.0, np.pi / 2, 4001)
    radii = bisected_entry_radii(mdr, ctx, angles, r_max)
    k = int(np.argmin(radii))
    step = angles[1] - angles[0]
    zoom = np.linspace(max(angles[k] - 2 * step, 0.0), min(angles[k] + 2 * step, np.pi / 2), 4001)
    return min(radii.min(), bisected_entry_radii(mdr, ctx, zoom, r_max).min()) ** 2


# B2 is left out: its allowed region is a band that does not reach the corner of the box
@pytest.mark.parametrize("ctx", [SYMMETRIC, ASYMMETRIC])
@pytest.mark.parametrize("mdr, r_max", [(MdrId.HE, 10.0), (MdrId.OZ, 10.0), (MdrId.B1, 10.0),
                                        (MdrId.HA, None), (MdrId.WE, None)])
def test_minimum_matches_bisection(mdr, r_max, ctx):
    assert shortest_distance_sq(mdr, ctx) == pytest.approx(bisected_distance_sq(mdr, ctx, r_max), abs=1e-6)


@pytest.mark.parametrize("ctx", [SYMMETRIC, ASYMMETRIC])
@pytest.mark.parametrize("mdr", [MdrId.OZ, MdrId.HA, MdrId.WE])
def test_minimum_is_bracketed_by_dense_grid(mdr, ctx):
    axis = np.linspace(0.0, 2.0, 2001)
    eps, eta = np.meshgrid(axis, axis)
    with np.errstate(invalid='ignore'):
        inside = mdr_residual(mdr, eps, eta, ctx.delta_a, ctx.delta_b, ctx.abs_c) >= 0
    grid_min = (eps[inside] ** 2 + eta[inside] ** 2).min()
    f = shortest_distance_sq(mdr, ctx)
    # no allowed point lies closer than f; the grid spacing is 1e-3
    assert f - 1e-8 <= grid_min <= f + 5e-3


def test_ozawa_minimum_on_boundary_curve():
    c, da, db = ASYMMETRIC.abs_c, ASYMMETRIC.delta_a, ASYMMETRIC.delta_b
    eps = np.linspace(0.0, c / db, 1_000_000)
    eta = (c - eps * db) / (eps + da)
    assert shortest_distance_sq(MdrId.OZ, ASYMMETRIC) == pytest.approx((eps ** 2 + eta ** 2).min(), abs=1e-9)


@pytest.mark.parametrize("ctx", [SYMMETRIC, ASYMMETRIC])
@pytest.mark.parametrize("mdr", [MdrId.HE, MdrId.OZ])
def test_larger_errors_stay_allowed(mdr, ctx):
    rng = np.random.default_rng(11)
    eps, eta = rng.uniform(0.0, 3.0, (2, 2000))
    shift_eps, shift_eta = rng.uniform(0.0, 1.0, (2, 2000))
    inside = mdr_residual(mdr, eps, eta, ctx.delta_a, ctx.delta_b, ctx.abs_c) >= 0
    assert inside.any() and not inside.all()
    for e, h, de, dh in zip(eps[inside], eta[inside], shift_eps[inside], shift_eta[inside]):
        assert satisfies(mdr, ErrorPoint(e + de, h + dh), ctx)


def b1_closed_form(ctx, radicand_sum):
    # smaller eigenvalue of the B1 ellipse matrix, (T - sqrt(radicand_sum - 4|C|^2)) / 2
    trace = ctx.delta_a ** 2 + ctx.delta_b ** 2
    return (trace - np.sqrt(radicand_sum - 4 * ctx.abs_c ** 2)) / 2


def test_b1_closed_forms_coincide_at_symmetric_point():
    derived = b1_closed_form(SYMMETRIC, (SYMMETRIC.delta_a ** 2 + SYMMETRIC.delta_b ** 2) ** 2)
    printed = b1_closed_form(SYMMETRIC, (SYMMETRIC.delta_a + SYMMETRIC.delta_b) ** 2)
    assert derived == pytest.approx(printed, abs=1e-12)
    assert shortest_distance_sq(MdrId.B1, SYMMETRIC) == pytest.approx(derived, abs=1e-12)


def test_b1_follows_derived_closed_form_off_symmetry():
    derived = b1_closed_form(ASYMMETRIC, (ASYMMETRIC.delta_a ** 2 + ASYMMETRIC.delta_b ** 2) ** 2)
    printed = b1_closed_form(ASYMMETRIC, (ASYMMETRIC.delta_a + ASYMMETRIC.delta_b) ** 2)
    assert shortest_distance_sq(MdrId.B1, ASYMMETRIC) == pytest.approx(derived, abs=1e-12)
    assert abs(derived - printed) > 1e-2


class TestSatisfies:

    def test_robertson_violation(self):
        with pytest.raises(ContextInvalid):
            satisfies(MdrId.OZ, ErrorPoint(1.0, 1.0), EnsembleContext(0.5, 0.5, 1.0))

    def test_hall_needs_meter_deviations(self):
        with pytest.raises(MissingMeasurementContext):
            satisfies(MdrId.HA, ErrorPoint(1.0, 1.0), SYMMETRIC)

    def test_b2_domain(self):
        with pytest.raises(ContextInvalid):
            satisfies(MdrId.B2, ErrorPoint(2.5, 0.1), SYMMETRIC)

    @pytest.mark.parametrize("mdr", list(MdrId))
    def test_origin_is_forbidden(self, mdr):
        assert not satisfies(mdr, ErrorPoint(0.0, 0.0), SYMMETRIC, MeasurementContext(1.0, 1.0))

    def test_large_errors_allowed(self):
        assert satisfies(MdrId.HE, ErrorPoint(2.0, 2.0), SYMMETRIC)
        assert satisfies(MdrId.OZ, ErrorPoint(1.0, 1.0), SYMMETRIC)
        assert satisfies(MdrId.WE, ErrorPoint(1.0, 1.0), SYMMETRIC, MeasurementContext(0.0, 0.0))

    def test_error_point_is_nonnegative(self):
        with pytest.raises(ValueError):
            ErrorPoint(-0.1, 0.0)


def test_allowed_region_grid():
    grid = allowed_region_grid(MdrId.B1, SYMMETRIC, 2.0, 2.0, 21)
    assert list(grid.columns) == ['eps', 'eta', 'allowed']
    assert len(grid) == 21 * 21
    inside = grid[grid['allowed']]
    assert (inside['eps'] ** 2 + inside['eta'] ** 2).min() >= 1.0 - 1e-12
    assert not grid.loc[(grid['eps'] == 0) & (grid['eta'] == 0), 'allowed'].any()


def test_parse_and_kappa():
    assert MdrId.parse('he') is MdrId.HE
    assert MdrId.parse(' B2 ') is MdrId.B2
    assert str(MdrId.OZ) == 'Oz'
    with pytest.raises(ValueError):
        MdrId.parse('xx')
    assert kappa('b1') == 1.0
    assert MdrId.HE not in SURVIVING
