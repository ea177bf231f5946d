import numpy as np
import pytest

from whlab import (Ball, SpaceSpec, ValidationError, WitnessParams,
                   ball_indicator, build_bump, constant_exponent,
                   constant_symbol, constant_weight, full_space,
                   gaussian_symbol, half_line, kuratowski_experiment,
                   luxemburg_norm, make_grid, make_witness,
                   mollification_residual, norm_lowerbound_experiment,
                   place_witness_center, power_weight, sector,
                   separated_sequence, step_exponent, symbol_from_function)


def l2(grid, domain=None):
    return SpaceSpec(grid, constant_exponent(grid, 2), constant_weight(grid),
                     domain if domain is not None else full_space(grid))


# -- bump -------------------------------------------------------------------

def test_bump_plateau_and_support():
    b = build_bump(2.0)
    assert b.profile(0.5) == 1.0
    assert b.profile(1.0) == 1.0
    assert b.profile(3.0) == 0.0
    assert b.profile(2.0) == 0.0
    mid = b.profile(1.5)
    assert 0.0 < mid < 1.0
    assert mid == pytest.approx(0.5, abs=1e-12)  # glue symmetry at t = 1/2


def test_bump_monotone_on_transition():
    b = build_bump(2.0)
    r = np.linspace(1.0, 2.0, 1000)
    vals = b.profile(r)
    assert np.all(np.diff(vals) <= 1e-15)
    assert np.all((vals >= 0) & (vals <= 1))


def test_bump_even_and_rejects_bad_rho():
    b = build_bump(1.5)
    r = np.linspace(-2, 2, 401)
    assert np.array_equal(b.profile(r), b.profile(-r))
    with pytest.raises(ValidationError):
        build_bump(1.0)


# -- witness ----------------------------------------------------------------

def test_witness_modulus_and_plateau():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    bump = build_bump(2.0)
    P = WitnessParams(0.25, (g.xi_axis[600],), (24.0,), 2.0, om)
    f = make_witness(P, bump, g)
    amp = bump.profile(0.25 * np.abs(g.x_axis - 24.0))
    assert np.max(np.abs(np.abs(f.values) - amp)) <= 1e-14
    plateau = ball_indicator(Ball((24.0,), 4.0), g).values.real == 1
    # amplitude factor is exactly 1 there; |e^{i theta}| costs one ulp
    assert np.max(np.abs(np.abs(f.values[plateau]) - 1.0)) <= 5e-16
    outside = np.abs(g.x_axis - 24.0) >= 8.0
    assert np.all(f.values[outside] == 0.0)


def test_witness_real_bump_when_eta_zero():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    f = make_witness(WitnessParams(0.25, (0.0,), (0.0,), 2.0, om),
                     build_bump(2.0), g)
    assert np.max(np.abs(f.values.imag)) == 0.0
    assert np.min(f.values.real) >= 0.0
    assert np.max(f.values.real) == 1.0


def test_witness_sandwich_norms():
    g = make_grid(1, 64, 2048)
    om = full_space(g)
    S = SpaceSpec(g, step_exponent(g, 2.0, 2.5), power_weight(g, 0.1), om)
    P = WitnessParams(0.25, (1.5,), (24.0,), 2.0, om)
    f = make_witness(P, build_bump(2.0), g)
    ns = luxemburg_norm(ball_indicator(Ball((24.0,), 4.0), g), S)
    nb = luxemburg_norm(ball_indicator(Ball((24.0,), 8.0), g), S)
    nf = luxemburg_norm(f, S)
    assert ns <= nf * (1 + 1e-9)
    assert nf <= nb * (1 + 1e-9)


def test_witness_phase_invariance():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    S = l2(g)
    f1 = make_witness(WitnessParams(0.25, (1.5,), (24.0,), 2.0, om),
                      build_bump(2.0), g)
    f2 = make_witness(WitnessParams(0.25, (-1.5,), (24.0,), 2.0, om),
                      build_bump(2.0), g)
    assert luxemburg_norm(f1, S) == pytest.approx(luxemburg_norm(f2, S), rel=1e-12)


def test_witness_params_validation():
    g = make_grid(1, 64, 1024)
    om = half_line(g)
    # support leaves the half-line
    with pytest.raises(ValidationError):
        WitnessParams(0.25, (0.0,), (4.0,), 2.0, om)
    # margin rule: support radius above L/4
    with pytest.raises(ValidationError):
        WitnessParams(0.1, (0.0,), (30.0,), 2.0, om)
    # too close to the box edge
    with pytest.raises(ValidationError):
        WitnessParams(0.25, (0.0,), (45.0,), 2.0, om)


def test_place_witness_center_halfline_largest_admissible():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    y = place_witness_center(om, 1.0 / 16.0, 2.0)
    assert y[0] == pytest.approx(0.75 * 256 - 32.0)
    with pytest.raises(ValidationError):
        place_witness_center(om, 0.01, 2.0)  # support radius 200 > L/4


def test_place_witness_center_sector():
    g = make_grid(2, 64, 256)
    cone = sector(g, 0.0, np.pi / 2)
    y = place_witness_center(cone, 0.5, 2.0)
    # on the bisector, with clearance at least the support radius
    assert y[0] == pytest.approx(y[1])
    assert cone.clearance(y) >= 4.0 - 1e-12


# -- residual ---------------------------------------------------------------

def test_residual_constant_symbol_vanishes():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    P = WitnessParams(0.25, (0.0,), (24.0,), 2.0, om)
    res = mollification_residual(constant_symbol(g, 0.7 + 0.2j), P, build_bump(2.0))
    assert res <= 1e-8


def test_residual_gaussian_monotone_in_delta():
    g = make_grid(1, 64, 4096)
    om = full_space(g)
    bump = build_bump(2.0)
    a = gaussian_symbol(g, 0.0, 2.0, 1.0)
    res = [mollification_residual(a, WitnessParams(d, (0.0,), (24.0,), 2.0, om), bump)
           for d in (0.5, 0.25, 0.125)]
    assert res[0] > res[1] > res[2]


def test_residual_lipschitz_symbol_scales_linearly():
    # linear ramp near eta: residual ~ delta, so halving delta halves it
    g = make_grid(1, 128, 8192)
    om = full_space(g)
    bump = build_bump(2.0)
    a = symbol_from_function(g, lambda xi: 0.5 + 0.02 * xi)
    prev = None
    for d in (0.5, 0.25, 0.125):
        r = mollification_residual(a, WitnessParams(d, (0.0,), (48.0,), 2.0, om), bump)
        if prev is not None:
            assert 0.375 <= r / prev <= 0.625
        prev = r


# -- norm lower-bound experiment --------------------------------------------

def test_norm_experiment_constant_symbol():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    S = l2(g)
    rep = norm_lowerbound_experiment(constant_symbol(g, 0.7), om, S, 2.0,
                                     [0.5, 0.25])
    assert rep.achieved_lower_bound == pytest.approx(0.7, abs=1e-6)
    assert rep.chains_passed
    assert rep.eps_obs <= 1e-8


def test_norm_experiment_gaussian_l2():
    g = make_grid(1, 64, 4096)
    om = full_space(g)
    S = l2(g)
    a = gaussian_symbol(g, 0.0, 2.0, 1.0)
    rep = norm_lowerbound_experiment(a, om, S, 2.0, [0.25, 0.125])
    assert rep.achieved_lower_bound >= 0.95
    assert rep.chains_passed
    ratios = [w.ratio for w in rep.witnesses if w.error is None]
    assert all(b >= a_ - 1e-3 for a_, b in zip(ratios, ratios[1:]))


def test_norm_experiment_weighted_variable_halfline():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    S = SpaceSpec(g, step_exponent(g, 2.0, 2.5), power_weight(g, 0.1), om)
    a = gaussian_symbol(g, 0.0, 2.0, 1.0)
    rep = norm_lowerbound_experiment(a, om, S, 2.0, [0.25, 0.125, 0.0625])
    assert rep.achieved_lower_bound >= 0.9
    assert rep.chains_passed
    # cross-check against |a(eta)| - eps (1 + doubling quotient) direction:
    # the certified chain implies ratio >= (|a| - eps) / quotient
    for w in rep.witnesses:
        assert w.ratio >= (rep.a_eta_abs - w.residual) / w.quotient - 1e-9


def test_norm_experiment_per_delta_placement_failure_nonfatal():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    S = l2(g)
    rep = norm_lowerbound_experiment(constant_symbol(g, 1.0), om, S, 2.0,
                                     [0.5, 0.05])
    errors = [w for w in rep.witnesses if w.error is not None]
    assert len(errors) == 1
    assert rep.achieved_lower_bound == pytest.approx(1.0, abs=1e-6)


def test_norm_experiment_all_deltas_inadmissible():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    S = l2(g)
    with pytest.raises(ValidationError):
        norm_lowerbound_experiment(constant_symbol(g, 1.0), om, S, 2.0, [0.01])


def test_norm_experiment_rejects_increasing_schedule():
    g = make_grid(1, 64, 1024)
    om = full_space(g)
    with pytest.raises(ValidationError):
        norm_lowerbound_experiment(constant_symbol(g, 1.0), om, l2(g), 2.0,
                                   [0.25, 0.5])


# -- pairwise (noncompactness) experiment -----------------------------------

def test_kappa_constant_symbol_disjoint_supports():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    S = l2(g, om)
    fam = separated_sequence(om, 2.0, 0.25, 4.0, 3, y0=1.0)
    rep = kuratowski_experiment(constant_symbol(g, 0.7), om, S, 2.0, fam)
    # disjoint supports + lattice property give d_jk >= |c|
    assert rep.kappa_lower_bound >= 0.7 * (1 - 1e-6)
    assert rep.kappa_half == pytest.approx(rep.kappa_lower_bound / 2)
    assert rep.chains_passed
    assert rep.family_size == 3


def test_kappa_zero_symbol():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    S = l2(g, om)
    fam = separated_sequence(om, 2.0, 0.25, 4.0, 3, y0=1.0)
    rep = kuratowski_experiment(constant_symbol(g, 0.0), om, S, 2.0, fam)
    assert all(p.distance <= 1e-8 for p in rep.pairs)
    assert rep.kappa_lower_bound <= 1e-8


def test_kappa_gaussian_weighted_variable():
    g = make_grid(1, 4096, 2 ** 17)
    om = half_line(g)
    S = SpaceSpec(g, constant_exponent(g, 2.5), power_weight(g, 0.1), om)
    a = gaussian_symbol(g, 0.0, 2.0, 1.0)
    fam = separated_sequence(om, 2.0, 0.25, 4.0, 4, y0=8.0)
    rep = kuratowski_experiment(a, om, S, 2.0, fam)
    assert rep.kappa_lower_bound >= 0.85 * rep.a_eta_abs
    assert rep.chains_passed
    # measured chain: every pair beats |a(eta)|/(S_est + slack) - residuals
    for p in rep.pairs:
        assert p.distance + 1e-8 >= p.bound


def test_kappa_sector_2d():
    g = make_grid(2, 32, 1024)
    cone = sector(g, 0.0, np.pi / 2)
    S = l2(g, cone)
    fam = separated_sequence(cone, 2.0, 0.25, 3.5, 2, y0=1.3)
    rep = kuratowski_experiment(constant_symbol(g, 0.7), cone, S, 2.0, fam)
    assert rep.kappa_lower_bound >= 0.7 * (1 - 1e-6)
    assert rep.chains_passed


def test_kappa_rejects_overlapping_family():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    S = l2(g, om)
    fam = [((8.0,), 2.0), ((12.0,), 2.0)]  # inflations overlap
    with pytest.raises(ValidationError):
        kuratowski_experiment(constant_symbol(g, 1.0), om, S, 2.0, fam)


def test_kappa_needs_two_balls():
    g = make_grid(1, 256, 8192)
    om = half_line(g)
    with pytest.raises(ValidationError):
        kuratowski_experiment(constant_symbol(g, 1.0), om, l2(g, om), 2.0,
                              [((8.0,), 2.0)])
