import math

import pytest

import infoprice as ip


def test_gain_peaks_at_feasible_edge():
    lo, hi = ip.feasible_band(0.3)
    assert hi == pytest.approx(0.3 / 0.7)
    assert lo == -1.0
    assert ip.gain(hi, 0.3) == pytest.approx(0.3 - hi * 0.7)
    assert ip.gain(0.0, 0.3) == pytest.approx(0.3 - 0.0 * 0.7 - 0.0)


def test_concentrate_round_trip():
    for I in (-0.75, -0.2, 0.0, 0.4, 1.0):
        assert ip.informativeness(ip.concentrate(I)) == I


def test_uniform_free_menu():
    cfg = ip.GameConfig(0.0, 0.5)
    menu = ip.solve_dual(ip.TypeDistribution.uniform(), cfg)
    assert menu.v_lo == pytest.approx(0.25)
    assert menu.v_hi == pytest.approx(0.75)


def test_convex_tau_gives_no_information():
    cfg = ip.GameConfig(1.0, 0.8)
    assert ip.tau_prime(cfg) < 3.0
    menu = ip.solve_dual(ip.TypeDistribution.uniform(), ip.GameConfig(3.0, 0.8))
    assert menu.no_information


def test_baselines_ordered():
    b = ip.profit_baselines(ip.TypeDistribution.uniform(), ip.GameConfig(1.0, 0.8))
    assert b["versioning"] >= max(b["full_info"], b["no_info"]) - 1e-9


def test_binary_matches_brute_force():
    s = ip.BinaryScenario(5 / 6, 2 / 3, 0.5, ip.GameConfig(0.2, 0.5))
    assert ip.solve_binary(s).profit >= ip.brute_force_binary(s, 101).profit - 1e-9


def test_mc_gain_reproducible():
    a = ip.mc_gain(0.4, 0.3, samples=100_000, seed=7)
    b = ip.mc_gain(0.4, 0.3, samples=100_000, seed=7)
    assert a.estimate == b.estimate
    assert a.passed
    assert math.isfinite(a.std_error)


def test_domain_errors_map_to_value_error():
    with pytest.raises(ValueError):
        ip.Belief(1.5)
    with pytest.raises(ip.IrregularDistributionError):
        ip.solve_dual(ip.TypeDistribution.bimodal(0.2, 0.8, 0.05, 0.5), ip.GameConfig(0.5, 0.5))
