"""Potential construction, integrals, tails, and the splitting scale."""

import json
import math

import numpy as np
import pytest

import jost1d as j
from jost1d.errors import SpecError

import oracles


# ---------------------------------------------------------------------------
# construction and evaluation


def test_square_evaluation_and_support(barrier):
    x = np.array([-2.0, -1.0, 0.0, 0.5, 1.0, 3.0])
    v = barrier(x)
    assert v.tolist() == [0.0, 1.0, 1.0, 1.0, 1.0, 0.0]
    assert barrier.support() == (-1.0, 1.0)
    assert barrier.is_compact()
    assert barrier(0.25) == 1.0


def test_square_rejects_bad_interval():
    with pytest.raises(SpecError):
        j.square(1.0, -1.0, 2.0)


def test_piecewise_evaluation(two_step):
    assert two_step(-0.5) == -2.0
    assert two_step(0.5) == 3.0
    assert two_step(2.0) == 0.0
    assert two_step.support() == (-1.0, 1.0)


def test_piecewise_rejects_overlap():
    with pytest.raises(SpecError):
        j.piecewise_constant([(-1.0, 0.5, 1.0), (0.0, 1.0, 2.0)])


def test_piecewise_allows_gaps():
    p = j.piecewise_constant([(-2.0, -1.0, 1.0), (1.0, 2.0, -1.0)])
    assert p(0.0) == 0.0
    assert p(-1.5) == 1.0
    segs = j.piecewise_segments(p)
    # the tiling must be contiguous and cover the gap with a zero layer
    assert segs is not None
    lefts = [s[0] for s in segs]
    rights = [s[1] for s in segs]
    assert rights[:-1] == lefts[1:]
    total = sum((r - l) * h for l, r, h in segs)
    m0, _ = j.moments(p)
    assert abs(total - m0) < 1e-12


def test_tabulated_matches_interpolation():
    x = np.array([-1.0, 0.0, 2.0])
    v = np.array([0.0, 3.0, 1.0])
    p = j.tabulated(x, v)
    assert p(-0.5) == pytest.approx(1.5)
    assert p(1.0) == pytest.approx(2.0)
    assert p(5.0) == 0.0
    assert p.support() == (-1.0, 2.0)


def test_tabulated_rejects_unsorted():
    with pytest.raises(SpecError):
        j.tabulated([0.0, 0.0, 1.0], [1.0, 2.0, 3.0])
    with pytest.raises(SpecError):
        j.tabulated([1.0, 0.0], [1.0, 2.0])


def test_exp_decay_evaluation(exp_tail):
    assert exp_tail(0.0) == 1.0
    assert exp_tail(2.0) == pytest.approx(math.exp(-2.0))
    assert exp_tail(-2.0) == pytest.approx(math.exp(-2.0))
    assert exp_tail.support() is None
    assert not exp_tail.is_compact()


def test_coupling_scales_values(barrier):
    p = barrier.with_coupling(-3.5)
    assert p(0.0) == -3.5
    assert p(2.0) == 0.0


def test_zero_potential():
    p = j.zero()
    assert p(0.0) == 0.0
    m0, m1 = j.moments(p)
    assert m0 == 0.0 and m1 == 0.0
    assert j.fm_norm(p) == 0.0


# ---------------------------------------------------------------------------
# scaling and truncation


def test_scale_values(barrier):
    eps = 0.1
    p = j.scale(barrier, eps)
    x = np.array([-0.05, 0.0, 0.09, 0.11])
    expected = np.where(np.abs(x / eps) <= 1.0, 1.0 / eps**2, 0.0)
    assert np.allclose(p(x), expected)
    assert p.support() == (-0.1, 0.1)


def test_scale_composes(barrier):
    once = j.scale(j.scale(barrier, 0.5), 0.2)
    direct = j.scale(barrier, 0.1)
    x = np.linspace(-0.2, 0.2, 41)
    assert np.allclose(once(x), direct(x))


def test_scale_moment_identities(rng):
    # int V_eps = eps^-1 int V and the weighted norm contracts accordingly
    for _ in range(5):
        l = rng.uniform(-3, -0.5)
        r = rng.uniform(0.5, 3)
        h = rng.uniform(-2, 2)
        eps = rng.uniform(0.05, 0.8)
        p = j.square(l, r, h)
        m0, _ = j.moments(p)
        m0s, _ = j.moments(j.scale(p, eps))
        assert m0s == pytest.approx(m0 / eps, rel=1e-9)


def test_truncate_window(barrier):
    p = j.truncate(barrier, 0.5)
    assert p(0.4) == 1.0
    assert p(0.6) == 0.0
    assert p.support() == (-0.5, 0.5)


def test_truncate_wider_than_support_is_identity(barrier):
    p = j.truncate(barrier, 5.0)
    x = np.linspace(-6, 6, 101)
    assert np.array_equal(p(x), barrier(x))


# ---------------------------------------------------------------------------
# integrals and tails


def test_moments_square(barrier):
    m0, m1 = j.moments(barrier)
    assert m0 == pytest.approx(2.0, abs=1e-12)
    assert m1 == pytest.approx(0.0, abs=1e-12)


def test_moments_two_step(two_step):
    m0, m1 = j.moments(two_step)
    assert m0 == pytest.approx(1.0, abs=1e-12)
    # int x V = int_{-1}^{0} -2x dx + int_0^1 3x dx = 1 + 1.5
    assert m1 == pytest.approx(2.5, abs=1e-12)


def test_fm_norm_exponential(exp_tail):
    assert j.fm_norm(exp_tail) == pytest.approx(oracles.EXP_TAIL_FM_NORM, rel=1e-10)


def test_fm_norm_compact(two_step):
    # int (1+|x|)|V| = 2*(1+1/2)/... computed directly: left 2*(1+0.5), right 3*(1+0.5)
    assert j.fm_norm(two_step) == pytest.approx(3.0 + 4.5, rel=1e-10)


def test_tails_exponential(exp_tail):
    for x in [0.0, 0.5, 2.0, 5.0]:
        td = j.tails(exp_tail, x)
        assert td.sigma_plus == pytest.approx(oracles.exp_tail_sigma_plus(x), rel=1e-9)
        assert td.tau_plus == pytest.approx(oracles.exp_tail_tau_plus(x), rel=1e-9)
        # mirror symmetry of e^{-|x|}
        td_m = j.tails(exp_tail, -x)
        assert td_m.tau_minus == pytest.approx(td.tau_plus, rel=1e-9)


def test_tails_compact(barrier):
    td = j.tails(barrier, 2.0)
    assert td.sigma_plus == 0.0 or td.sigma_plus < 1e-15
    assert td.sigma_minus == pytest.approx(2.0, rel=1e-10)
    assert td.tau_minus == pytest.approx(j.fm_norm(barrier), rel=1e-10)


def test_tails_monotone(exp_tail):
    xs = [0.0, 1.0, 2.0, 4.0]
    taus = [j.tails(exp_tail, x).tau_plus for x in xs]
    assert all(a > b for a, b in zip(taus, taus[1:]))


# ---------------------------------------------------------------------------
# splitting scale


def test_splitting_scale_compact_closed_form(barrier):
    # compact weight is 1 + x^2, so xi solves 1 + xi^2 = 1/eps
    for eps in [0.5, 0.1, 0.01]:
        ss = j.splitting_scale(barrier, eps)
        assert ss.xi_eps == pytest.approx(math.sqrt(1.0 / eps - 1.0), rel=1e-10)
        assert ss.x_eps == pytest.approx(eps * ss.xi_eps, rel=1e-12)


def test_splitting_scale_rejects_large_eps(barrier):
    with pytest.raises(SpecError):
        j.splitting_scale(barrier, 1.0)
    with pytest.raises(SpecError):
        j.splitting_scale(barrier, -0.1)


def test_splitting_scale_exponential_solves_weight_equation(exp_tail):
    alpha = 0.5
    for eps in [0.1, 0.01]:
        ss = j.splitting_scale(exp_tail, eps, alpha_weight=alpha)
        # two-sided weighted tail mass beyond the matching radius
        tau = j.tails(exp_tail, ss.xi_eps).tau_plus + j.tails(exp_tail, -ss.xi_eps).tau_minus
        rho = (1.0 + abs(ss.xi_eps)) / tau**alpha
        assert rho == pytest.approx(1.0 / eps, rel=1e-9)


def test_splitting_scale_window_shrinks_while_growing_unscaled(exp_tail):
    eps_values = [0.1, 0.03, 0.01, 0.003]
    scales = [j.splitting_scale(exp_tail, e) for e in eps_values]
    xis = [s.xi_eps for s in scales]
    xs = [s.x_eps for s in scales]
    assert all(a < b for a, b in zip(xis, xis[1:]))
    assert all(a > b for a, b in zip(xs, xs[1:]))


def test_tail_weight_norm_vanishes(exp_tail):
    # decays like eps*log(1/eps) for exponential tails: slow but strict
    vals = [j.tail_weight_norm(exp_tail, e) for e in [0.1, 0.01, 0.001]]
    assert all(a > b for a, b in zip(vals, vals[1:]))
    assert vals[-1] < 0.02


def test_tail_weight_norm_zero_for_compact(barrier):
    # once the window passes the support edge nothing is cut off
    assert j.tail_weight_norm(barrier, 0.01) == 0.0


def test_alpha_weight_validation(exp_tail):
    with pytest.raises(SpecError):
        j.splitting_scale(exp_tail, 0.1, alpha_weight=0.0)
    with pytest.raises(SpecError):
        j.splitting_scale(exp_tail, 0.1, alpha_weight=1.0)


# ---------------------------------------------------------------------------
# serialization


def test_load_square_round_trip(tmp_path, barrier):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": -1.0, "right": 1.0, "height": 1.0}}
    ))
    p = j.load_potential(path)
    x = np.linspace(-2, 2, 51)
    assert np.array_equal(p(x), barrier(x))


def test_load_piecewise(tmp_path, two_step):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(
        {"kind": "piecewise", "params": [
            {"left": -1.0, "right": 0.0, "height": -2.0},
            {"left": 0.0, "right": 1.0, "height": 3.0},
        ]}
    ))
    p = j.load_potential(path)
    x = np.linspace(-2, 2, 51)
    assert np.array_equal(p(x), two_step(x))


def test_load_table_and_exp(tmp_path):
    path = tmp_path / "t.json"
    path.write_text(json.dumps(
        {"kind": "table", "params": {"x": [-1.0, 0.0, 1.0], "v": [0.0, 2.0, 0.0]}}
    ))
    p = j.load_potential(path)
    assert p(0.5) == pytest.approx(1.0)

    path2 = tmp_path / "e.json"
    path2.write_text(json.dumps(
        {"kind": "exp_decay", "params": {"rate": 2.0, "amplitude": -1.0}}
    ))
    q = j.load_potential(path2)
    assert q(1.0) == pytest.approx(-math.exp(-2.0))


def test_load_coupling_applies(tmp_path):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(
        {"kind": "square", "params": {"left": 0.0, "right": 1.0, "height": 2.0},
         "coupling": -0.5}
    ))
    p = j.load_potential(path)
    assert p(0.5) == -1.0


@pytest.mark.parametrize("bad", [
    {"params": {"left": 0, "right": 1, "height": 1}},
    {"kind": "hexagon", "params": {}},
    {"kind": "square", "params": {"left": 1.0, "right": -1.0, "height": 1.0}},
    {"kind": "table", "params": {"x": [1.0, 0.0], "v": [0.0, 0.0]}},
    {"kind": "piecewise", "params": [[-1.0, 0.5, 1.0], [0.0, 1.0, 1.0]]},
    {"kind": "piecewise", "params": [
        {"left": -1.0, "right": 0.5, "height": 1.0},
        {"left": 0.0, "right": 1.0, "height": 1.0},
    ]},
    {"kind": "square"},
])
def test_malformed_descriptions_rejected(tmp_path, bad):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    with pytest.raises(SpecError):
        j.load_potential(path)


def test_missing_file_rejected(tmp_path):
    with pytest.raises(SpecError):
        j.load_potential(tmp_path / "nope.json")
