import json
import math

import pytest

import pprtopk


def two_cycle():
    return pprtopk.Graph.from_edges(2, [(0, 1), (1, 0)])


def fixture_config(damping=0.5, seed=0):
    cfg = pprtopk.WalkConfig()
    cfg.damping = damping
    cfg.seed_node = seed
    return cfg


def test_version_is_exposed():
    assert isinstance(pprtopk.__version__, str)
    assert pprtopk.__version__.count(".") == 2


def test_exact_solve_two_cycle():
    pv = pprtopk.solve_ppr(two_cycle(), fixture_config())
    assert pv.seed == 0
    assert pv.damping == 0.5
    assert pv.scores[0] == pytest.approx(2.0 / 3.0, abs=1e-12)
    assert pv.scores[1] == pytest.approx(1.0 / 3.0, abs=1e-12)


def test_resolvent_entry_two_cycle():
    z00 = pprtopk.resolvent_entry(two_cycle(), fixture_config(), 0, 0)
    assert z00 == pytest.approx(4.0 / 3.0, abs=1e-12)


def test_graph_validation_raises_value_error():
    with pytest.raises(ValueError):
        pprtopk.Graph.from_edges(2, [(0, 5)])


def test_walkers_are_reproducible_and_consistent():
    g = two_cycle()
    cfg = fixture_config()
    a = pprtopk.run_end_point(g, cfg, 5000, 42, 1)
    b = pprtopk.run_end_point(g, cfg, 5000, 42, 1)
    assert a.counts == b.counts
    assert a.runs == 5000
    assert sum(a.counts.values()) == 5000

    est = pprtopk.estimate(a, cfg)
    assert est.at(0) + est.at(1) == pytest.approx(1.0, abs=1e-12)
    assert est.at(0) == pytest.approx(2.0 / 3.0, abs=0.05)

    cp = pprtopk.estimate(pprtopk.run_complete_path(g, cfg, 5000, 42, 1), cfg)
    assert cp.at(0) == pytest.approx(2.0 / 3.0, abs=0.05)


def test_adaptive_run_reports_stop_point():
    g = pprtopk.Graph.from_edges(
        10, [(0, leaf) for leaf in range(1, 10)] + [(leaf, 0) for leaf in range(1, 10)]
    )
    cfg = fixture_config(damping=0.85)
    res = pprtopk.run_adaptive(g, cfg, 1, 25, 64, 100000, 7)
    assert res.stopped_at_m == res.outcome.runs
    assert res.stopped_at_m % 64 == 0
    assert not res.cap_reached
    top = pprtopk.top_k(pprtopk.estimate(res.outcome, cfg), 1)
    assert top.ids() == [0]


def test_top_k_and_basket_comparison():
    pv = pprtopk.solve_ppr(two_cycle(), fixture_config())
    report = pprtopk.top_k(pv, 2)
    assert report.ids() == [0, 1]
    assert report.entries[0].score > report.entries[1].score
    cmp = pprtopk.compare_baskets(report, report)
    assert cmp.correct == 2
    assert cmp.erroneous == 0
    assert pprtopk.satisfies_relaxation(cmp, 2)


def test_variance_formulas_hand_values():
    assert pprtopk.sigma_end_point(0.5, 100) == pytest.approx(0.05, abs=1e-15)
    sig = pprtopk.sigma_complete_path(0.2, 0.3, 0.85, 100)
    assert sig == pytest.approx(math.sqrt(0.0005), abs=1e-15)


def test_covariance_entry_singleton_self_loop():
    g = pprtopk.Graph.from_edges(1, [(0, 0)])
    cov = pprtopk.covariance_entry(g, fixture_config(), 0, 0)
    assert cov.value == pytest.approx(2.0, abs=1e-9)


def test_misrank_bounds():
    assert pprtopk.pairwise_misrank_exact(0.3, 0.2, 1) == pytest.approx(
        0.7, abs=1e-15
    )
    pi = [0.4, 0.3, 0.2, 0.1]
    bound = pprtopk.basket_misrank_bound(pi, 2, 500)
    assert bound.kind == pprtopk.MisrankKind.basket_bonferroni
    assert 0.0 <= bound.value <= 1.0
    assert bound.j_star is not None
    with pytest.raises(ValueError):
        pprtopk.basket_misrank_bound([0.3, 0.3, 0.2], 1, 10)


def test_order_statistic_modes_agree():
    a = pprtopk.order_statistic_cdf(0.3, 4, 20, pprtopk.OrderStatMode.sum)
    b = pprtopk.order_statistic_cdf(0.3, 4, 20, pprtopk.OrderStatMode.beta)
    assert a == pytest.approx(b, abs=1e-12)


def test_recommended_m_worked_example():
    rec = pprtopk.recommended_m(0.01, 0.5, 0.1, 10, 0.005)
    assert rec.m == 4794
    assert rec.y == 48
    assert rec.condition_i_holds
    assert rec.epsilon_exceeds_1_over_y
    mu = pprtopk.poisson_mu([0.005] * 200, rec.m, rec.y)
    assert mu == pytest.approx(rec.mu_y, rel=1e-12)


def test_expected_m1_saturates():
    pi = [0.3, 0.2, 0.15, 0.1, 0.1, 0.05, 0.05, 0.05]
    assert pprtopk.expected_m1(pi, 3, 100000.0) == pytest.approx(3.0, abs=1e-6)


def test_disambig_primitives():
    tokens = pprtopk.preprocess_text("The Alpine ice-core LAB.")
    assert tokens == ["alpine", "ice", "core", "lab"]
    clustering = pprtopk.structure_cluster({1: {10, 11}, 2: {11, 12}, 3: {20}})
    assert clustering.clusters == [[1, 2], [3]]


def test_disambig_pipeline_on_jsonl(tmp_path):
    lines = [
        {"id": 0, "host": "a.example", "text": "alice climbs peaks",
         "person": True, "outlinks": [2]},
        {"id": 1, "host": "b.example", "text": "alice likes peaks",
         "person": True, "outlinks": [2]},
        {"id": 2, "host": "c.example", "text": "mountain peaks guide",
         "person": False, "outlinks": []},
    ]
    path = tmp_path / "corpus.jsonl"
    path.write_text("\n".join(json.dumps(x) for x in lines) + "\n")
    corpus = pprtopk.load_corpus_jsonl(str(path))
    assert corpus.person_pages() == [0, 1]
    params = pprtopk.DisambigParams()
    params.rng_seed = 3
    result = pprtopk.run_disambig(corpus, params)
    assert result.clustering.clusters == [[0, 1]]
    assert 2 in result.related[0]
