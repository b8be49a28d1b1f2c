import json

import pytest

from cluster_braid import verify as V
from cluster_braid.braid import BraidWord, GeneratorExpression, alternating, evaluate, iota_f, presentation_from_wqp
from cluster_braid.exchange import build_ceg, enumerate_polygons
from cluster_braid.folding import catalog, get_folding
from cluster_braid.garside import artin_group, torus_equal
from cluster_braid.quiver import chordless_cycles


@pytest.fixture(scope="module")
def h3():
    g = build_ceg("H3")
    lab = V.build_twist_labeling(g)
    return g, lab, V.triple_heptagon_vertex(g)


def test_report_summary_and_json():
    rep = V.VerificationReport("demo")
    rep.add("first", True)
    rep.add("second", False, path=[1, 2])
    assert not rep.ok and [c.name for c in rep.failures] == ["second"]
    assert rep.summary().startswith("[FAIL] demo: 1/2")
    data = rep.to_json()
    json.dumps(data)
    assert data["failures"][0]["detail"] == {"path": [1, 2]}


def test_torus_identity_suite_passes():
    rep = V.verify_lem_surj(range(2, 31))
    assert rep.ok, rep.failures


@pytest.mark.parametrize("m", range(3, 9))
def test_torus_oracle_for_alternating_products(m):
    # closed forms read independently through the central element z = y^m
    l = m // 2
    t1, t2 = "xy", "yx"
    lhs = (t1 + t2) * l + (t1 if m % 2 else "")
    rhs = "y" * (m * (l + 1)) if m % 2 == 0 else "x" + "y" * (m * (l + 1))
    assert torus_equal(lhs, rhs, m)


def test_initial_vertex_labels_are_generators(h3):
    g, lab, _ = h3
    assert lab.report.ok
    grp = artin_group("H3")
    assert list(lab.labels[0].images) == [grp.generator(i) for i in range(3)]


def test_h3_triple_heptagon_presentation(h3):
    g, lab, v = h3
    q = g.quiver(v)
    assert [t.pattern for t in chordless_cycles(q)] == ["IV"]
    pres = presentation_from_wqp(q, chordless_cycles(q), g.folding.target.labels)
    texts = [r.text for r in pres.relators]
    assert sorted(texts) == sorted(
        ["Br^5(b1, b2)", "Br^5(b3, b1)", "Br^5(b2, b3)", "Co(b1, b2^{b3 b2})", "Br(b1, b3^{b2})"]
    )
    grp = artin_group("H3")
    for r in pres.relators:
        assert evaluate(r.word, lab.labels[v].images, grp.identity).is_identity(), r.text


def test_h3_triple_heptagon_twists(h3):
    g, lab, v = h3
    _, words = V.delta_labels_along(g.folding, g.paths[v], words=True)
    assert [w.to_text() for w in words.images] == ["b1", "b2", "b1^-1 b2^-1 b3 b2 b1"]
    grp = artin_group("H3")
    assert [grp.normal_form(w) for w in words.images] == list(lab.labels[v].images)


def test_presentations_hold_everywhere_in_h3(h3):
    g, lab, _ = h3
    rep = V.verify_presentations(lab)
    assert rep.ok, rep.failures
    assert rep.stats["pattern_II"] > 0 and rep.stats["pattern_IV"] > 0


def test_theta_from_pattern_iv_to_pattern_ii(h3):
    g, lab, v = h3
    rep = V.verify_theta_invariance(g.folding, [1], start=g.seeds[v], start_words=lab.words(v))
    assert rep.ok and rep.stats == {"pattern_II": 1}


def test_theta_empty_sequence():
    for t in ("A3", "H3", "I2:7"):
        assert V.verify_theta_invariance(t, []).ok


def test_theta_small_random_suite():
    rep = V.random_theta_suite("F4", samples=10, max_len=8, seed=42)
    assert rep.ok and len(rep.checks) == 10


def test_twist_labeling_b3_and_dihedral():
    for t in ("B3", "I2:5", "I2:8"):
        g = build_ceg(t)
        lab = V.build_twist_labeling(g)
        assert lab.report.ok and len(lab.labels) == len(g)
        assert V.verify_presentations(lab).ok


def test_path_dependence_is_detected():
    g = build_ceg("I2:5")
    grp = artin_group("I2:5")
    lab = V.build_twist_labeling(g)
    # tamper with one stored label and recheck all presentations
    bad = dict(lab.labels)
    bad[3] = GeneratorExpression([grp.generator(0), grp.generator(1) * grp.generator(1)])
    rep = V.verify_presentations(V.TwistLabeling(g, grp, bad, lab.report))
    assert not rep.ok


def test_local_twist_decompositions():
    assert V.verify_local_twist_decomposition(get_folding("H3")).ok
    rep = V.verify_local_twist_decomposition(get_folding("G2:D4"))
    assert rep.ok and any(c.detail.get("size") == 3 for c in rep.checks)
    assert V.verify_local_twist_decomposition(get_folding("A3")).ok


def test_iota_g2_into_d4():
    rep = V.verify_iota(get_folding("G2:D4"))
    assert rep.ok and rep.stats["order"] == 12 and rep.stats["distinct_images"] == 12
    assert any(c.detail.get("m") == 6 for c in rep.checks)


def test_iota_identity_folding():
    rep = V.verify_iota(get_folding("A3"))
    assert rep.ok and rep.stats["order"] == 24


def test_diagram_examples():
    assert V.verify_diagram(get_folding("H3"), [[], [0, 1]]).ok
    assert V.verify_diagram(get_folding("I2:3:A2"), [[], [0], [0, 1]]).ok


def test_diagram_at_initial_vertex_is_fiber_product():
    f = get_folding("G2:D4")
    _, ll = V.lambda_labels_along(f, [])
    _, dl = V.delta_labels_along(f, [])
    grp = artin_group(f.source)
    for i, fib in enumerate(f.fibers):
        prod = grp.identity
        for k in fib:
            prod = prod * ll[k]
        assert prod == grp.normal_form(BraidWord([k + 1 for k in fib]))


def test_random_vertex_paths_reach_distinct_vertices():
    g = build_ceg("B3")
    paths = V.random_vertex_paths(g, 10, seed=5)
    ends = {g.follow(p) for p in paths}
    assert len(ends) == 10 and 0 not in ends
    assert paths == V.random_vertex_paths(g, 10, seed=5)


def test_ceg_and_homology_suites():
    assert V.verify_ceg("A4").ok
    assert V.verify_homology("B3").ok


def test_garside_suite_small():
    rep = V.verify_garside("H3", cases=50, seed=1)
    assert rep.ok


def test_triple_heptagon_vertex_requires_heptagons():
    g = build_ceg("A3")
    with pytest.raises(ValueError):
        V.triple_heptagon_vertex(g, enumerate_polygons(g))


def test_fiber_products_in_e8_satisfy_weight_five_relation():
    f = catalog("H4")[0]
    a, b = (iota_f(f, BraidWord.gen(i)) for i in range(2))
    assert f.target.m(0, 1) == 5
    grp = artin_group(f.source)
    assert grp.equal(alternating(a, b, 5), alternating(b, a, 5))
    assert not grp.equal(alternating(a, b, 4), alternating(b, a, 4))
