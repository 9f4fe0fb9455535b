import pytest

from graphsize.core import (MODE_MULTISET, MODE_SET, NO_COLLISIONS,
                            AuxiliarySet, EstimatorError, build_auxiliary)
from graphsize.generators import erdos_renyi, hub_of_cliques
from graphsize.ind_estimators import (density_uis, density_wis, inda_uis,
                                      inda_wis, indb_auto, indb_uis, indb_wis,
                                      mean_degree_uis, mean_degree_wis)
from graphsize.sampling import sample_uis, sample_wis

import oracles
from conftest import make_sample


def test_mean_degree_uis(k5, triangle):
    s = make_sample(triangle, [0, 1, 2], method="UIS")
    assert mean_degree_uis(s) == pytest.approx(2.0)
    s = make_sample(k5, [3], method="UIS")
    assert mean_degree_uis(s) == pytest.approx(4.0)


def test_mean_degree_uis_full_enumeration(path3):
    s = make_sample(path3, [0, 1, 2], method="UIS")
    assert mean_degree_uis(s) == pytest.approx(4 / 3)


def test_density_uis(triangle, path3):
    assert density_uis(make_sample(triangle, [0, 1, 2])) == pytest.approx(1.0)
    assert density_uis(make_sample(path3, [0, 1, 2])) == pytest.approx(2 / 3)
    assert density_uis(make_sample(path3, [0, 2])) == 0.0
    with pytest.raises(EstimatorError):
        density_uis(make_sample(path3, [0]))


def test_inda_uis_exact_on_full_enumeration(triangle, path3):
    assert inda_uis(make_sample(triangle, [0, 1, 2],
                                method="UIS")).value == pytest.approx(3.0)
    assert inda_uis(make_sample(path3, [0, 1, 2],
                                method="UIS")).value == pytest.approx(3.0)


def test_inda_uis_no_induced_edges(path3):
    assert inda_uis(make_sample(path3, [0, 2], method="UIS")) == NO_COLLISIONS


def test_inda_exact_recovery_property():
    for seed in range(4):
        g = erdos_renyi(25, 0.2, seed=seed)
        if g.edge_count == 0:
            continue
        s = make_sample(g, list(g.ext_ids), method="UIS")
        assert inda_uis(s).value == pytest.approx(g.node_count, rel=1e-9)


def test_mean_degree_wis(k5):
    s = make_sample(k5, [0, 1], weights=[1.0, 1.0])
    assert mean_degree_wis(s) == pytest.approx(mean_degree_uis(s))
    g = erdos_renyi(30, 0.2, seed=1)
    s = sample_wis(g, "degree", 100, seed=2)
    inv = [1.0 / w for w in s.weights()]
    expected = sum(d * i for d, i in zip(s.degrees(), inv)) / sum(inv)
    assert mean_degree_wis(s) == pytest.approx(expected, rel=1e-9)


def test_density_wis_triangle_equal_weights(triangle):
    s = make_sample(triangle, [0, 1, 2], weights=[2.0, 2.0, 2.0])
    assert density_wis(s) == pytest.approx(1.0)


def test_density_wis_unit_weights_reduce(path3):
    s = make_sample(path3, [0, 1, 2, 1])
    assert density_wis(s) == pytest.approx(density_uis(s), rel=1e-12)


def test_density_wis_matches_pair_loop():
    g = erdos_renyi(60, 0.15, seed=3)
    s = sample_wis(g, "degree", 150, seed=4)
    assert oracles.relerr(density_wis(s), oracles.density_wis(s)) < 1e-9


def test_inda_wis_triangle(triangle):
    s = make_sample(triangle, [0, 1, 2], weights=[2.0, 2.0, 2.0])
    assert inda_wis(s).value == pytest.approx(3.0)


def test_inda_wis_unit_reduction(path3):
    s = make_sample(path3, [0, 1, 2, 2])
    assert inda_wis(s).value == pytest.approx(inda_uis(s).value, rel=1e-12)


def test_inda_wis_matches_pair_loop():
    g = erdos_renyi(50, 0.2, seed=6)
    s = sample_wis(g, "degree", 120, seed=7)
    assert oracles.relerr(inda_wis(s).value,
                          oracles.inda_wis_value(s)) < 1e-9


def test_inda_wis_median_near_truth():
    g = erdos_renyi(500, 0.05, seed=8)
    vals = []
    for t in range(100):
        s = sample_wis(g, "degree", 400, seed=t)
        out = inda_wis(s)
        assert out.finite
        vals.append(out.value)
    med = sorted(vals)[len(vals) // 2]
    assert abs(med - 500) / 500 < 0.15


def test_indb_uis_arithmetic(k5):
    got = indb_uis(make_sample(k5, [0] * 20, method="UIS"),
                   AuxiliarySet({0: 1}, MODE_SET, 50))
    assert got.value == pytest.approx(50 * 20 / 20)
    single = make_sample(k5, [0], method="UIS")
    assert indb_uis(single, AuxiliarySet({0: 1}, MODE_SET, 1)).value == 1.0
    assert indb_uis(single, AuxiliarySet({1: 1}, MODE_SET, 1)) == NO_COLLISIONS


def test_indb_wis_unit_reduction(k5):
    s = make_sample(k5, [0, 1, 2, 0], method="UIS")
    a = build_auxiliary(s, MODE_SET)
    assert indb_wis(s, a).value == pytest.approx(indb_uis(s, a).value,
                                                 rel=1e-12)


def test_indb_wis_triangle(triangle):
    s = make_sample(triangle, [0, 1], weights=[2.0, 2.0])
    a = AuxiliarySet({0: 1, 1: 1, 2: 1}, MODE_SET, 3)
    # 3 * (1/2 + 1/2) over (1/2 + 1/2)
    assert indb_wis(s, a).value == pytest.approx(3.0)


def test_indb_auto_star_recovers_n(star4):
    s = make_sample(star4, [0, 1], method="UIS")
    assert indb_auto(s).value == pytest.approx(5.0)


def test_indb_auto_modes_agree_without_duplicate_neighbors(path3):
    s = make_sample(path3, [0, 1], method="UIS")
    got_set = indb_auto(s, MODE_SET)
    got_multi = indb_auto(s, MODE_MULTISET)
    assert got_set.value == pytest.approx(3.0)
    assert got_set.value == got_multi.value


def test_indb_auto_uis_ignores_weights():
    g = erdos_renyi(40, 0.2, seed=9)
    s = sample_uis(g, 60, seed=1)
    from dataclasses import replace
    from graphsize.sampling import Sample
    tweaked = Sample(tuple(replace(r, weight=5.0) for r in s.records),
                     s.method, s.seed, s.weight_rule, s.graph_digest)
    assert indb_auto(tweaked).value == indb_auto(s).value


def test_indb_set_mode_disperses_less_on_skewed_graph():
    g = hub_of_cliques(12, 6)
    set_err, multi_err = [], []
    n_true = g.node_count
    for t in range(200):
        s = sample_wis(g, "degree", 80, seed=t)
        for mode, sink in ((MODE_SET, set_err), (MODE_MULTISET, multi_err)):
            out = indb_auto(s, mode)
            if out.finite:
                sink.append(abs(out.value - n_true) / n_true)
    med = lambda xs: sorted(xs)[len(xs) // 2]
    assert med(set_err) <= med(multi_err) * 1.05


def test_indb_median_near_truth():
    g = erdos_renyi(2000, 0.05, seed=10)
    vals = []
    for t in range(60):
        s = sample_wis(g, "degree", 200, seed=t)
        vals.append(indb_auto(s).value)
    med = sorted(vals)[len(vals) // 2]
    assert abs(med - 2000) / 2000 < 0.1


def test_scale_invariance_wis_family():
    from dataclasses import replace
    from graphsize.sampling import Sample
    g = erdos_renyi(40, 0.25, seed=11)
    s = sample_wis(g, "degree", 100, seed=12)
    scaled = Sample(tuple(replace(r, weight=r.weight * 7.5)
                          for r in s.records),
                    s.method, s.seed, s.weight_rule, s.graph_digest)
    assert abs(inda_wis(s).value - inda_wis(scaled).value) \
        / inda_wis(s).value < 1e-12
    a1 = build_auxiliary(s, MODE_SET)
    assert abs(indb_wis(s, a1).value - indb_wis(scaled, a1).value) \
        / indb_wis(s, a1).value < 1e-12
