import pytest
from hypothesis import given, strategies as st

from cluster_braid.braid import (
    BraidWord,
    GeneratorExpression,
    QuiverMismatch,
    alternating,
    braid_relator,
    coxeter_check,
    iota_f,
    presentation_from_wqp,
    standard_presentation,
    theta_flat,
    theta_sharp,
)
from cluster_braid.coxeter import reflection_representation, standard_graph
from cluster_braid.folding import WeightedQuiver, get_folding
from cluster_braid.quiver import initial_seed, weighted_mutate

letters = st.lists(st.integers(1, 4).flatmap(lambda i: st.sampled_from([i, -i])), max_size=30)


def test_parse_and_text():
    w = BraidWord.parse("1 2^-1 -3 3 2")
    assert w.letters == (1, -2, 2) or w.letters == (1,)  # free reduction
    assert BraidWord.parse("1 2^-1 3").to_text() == "b1 b2^-1 b3"
    assert BraidWord.parse("a b^-1", labels=["a", "b"]).letters == (1, -2)


@given(letters)
def test_free_reduction(ls):
    w = BraidWord(ls)
    assert all(a != -b for a, b in zip(w.letters, w.letters[1:]))
    assert (w * w.inverse()).letters == ()
    assert BraidWord.parse(w.to_text()) == w


@given(letters, letters)
def test_conjugation_convention(a, w):
    a, w = BraidWord(a), BraidWord(w)
    assert a.conj(w) == w.inverse() * a * w


def test_relator_words():
    b1, b2 = BraidWord.gen(0), BraidWord.gen(1)
    assert alternating(b1, b2, 3) == BraidWord([1, 2, 1])
    assert braid_relator(b1, b2, 2) == BraidWord([1, 2, -1, -2])


def test_standard_presentation_h3():
    q = initial_seed(get_folding("H3")).quiver
    p = standard_presentation(q, ["1", "2", "3"])
    assert sorted(r.text for r in p.relators) == ["Br(b2, b3)", "Br^5(b1, b2)", "Co(b1, b3)"]
    assert coxeter_check(p, reflection_representation(standard_graph("H3")))


def test_triangle_with_weight_5_relators():
    q = WeightedQuiver(3, ((0, 1, 5), (1, 2, 5), (2, 0, 5)))
    texts = [r.text for r in presentation_from_wqp(q).relators]
    assert texts == ["Br^5(b1, b2)", "Br^5(b3, b1)", "Br^5(b2, b3)", "Co(b1, b2^{b3 b2})", "Br(b1, b3^{b2})"]


@pytest.mark.parametrize(
    "arrows,expected",
    [
        (((0, 1, 4), (1, 2, 3), (2, 0, 4)), "Co(b1, b3^{b2})"),
        (((0, 1, 3), (1, 2, 5), (2, 3, 3), (3, 0, 5)), "Co(b3, b2^{b1 b4})"),
        (((0, 1, 3), (1, 2, 3), (2, 0, 3)), "Co(b2, b1^{b3})"),
        (((0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3)), "Co(b2, b1^{b4 b3})"),
    ],
)
def test_potential_relator_texts(arrows, expected):
    n = 1 + max(max(a, b) for a, b, _ in arrows)
    texts = [r.text for r in presentation_from_wqp(WeightedQuiver(n, arrows)).relators]
    assert texts[-1] == expected


@pytest.mark.parametrize("sel", ["A4", "B3:D4", "F4", "H3", "H4", "G2"])
@given(data=st.data())
def test_theta_maps_are_mutually_inverse(sel, data):
    f = get_folding(sel)
    n = f.target.n
    s = initial_seed(f)
    for i in data.draw(st.lists(st.integers(0, n - 1), max_size=5)):
        s = weighted_mutate(s, i)
    i = data.draw(st.integers(0, n - 1))
    t = weighted_mutate(s, i)
    words = data.draw(st.lists(letters.map(lambda ls: BraidWord([x for x in ls if abs(x) <= n])), min_size=n, max_size=n))
    e = GeneratorExpression(words)
    assert theta_flat(theta_sharp(e, i, s.quiver, t.quiver), i, t.quiver, s.quiver) == e
    assert theta_sharp(theta_flat(e, i, s.quiver, t.quiver), i, t.quiver, s.quiver) == e


def test_theta_sharp_formula():
    # Q: 1 -> 2, mutate at 1; Q' has 2 -> 1, so b'_2 stays and nothing is conjugated
    q = WeightedQuiver(2, ((0, 1, 3),))
    qp = WeightedQuiver(2, ((1, 0, 3),))
    e = GeneratorExpression.standard(2)
    assert theta_sharp(e, 0, q, qp) == e
    # mutate at 2 instead: Q' has 2 -> 1, b'_1 -> b2 b1 b2^-1
    assert theta_sharp(e, 1, q, qp)[0] == BraidWord([2, 1, -2])
    assert theta_flat(e, 1, q, qp)[0] == BraidWord([1])
    assert theta_flat(e, 0, q, qp)[1] == BraidWord([-1, 2, 1])


def test_theta_rejects_unrelated_quivers():
    q = WeightedQuiver(3, ((0, 1, 3), (1, 2, 3)))
    with pytest.raises(QuiverMismatch):
        theta_sharp(GeneratorExpression.standard(3), 0, q, q)


def test_iota_f():
    f = get_folding("G2:D4")
    w = iota_f(f, BraidWord([1, -2]))
    fib0 = [k + 1 for k in f.fibers[0]]
    fib1 = [k + 1 for k in f.fibers[1]]
    assert w == BraidWord(fib0 + [-k for k in reversed(fib1)])
