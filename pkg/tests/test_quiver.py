import pytest
from hypothesis import given, strategies as st

from cluster_braid.folding import WeightedQuiver, catalog, get_folding, identity_folding
from cluster_braid.quiver import (
    UnclassifiedCycle,
    chordless_cycles,
    classify_cycle,
    initial_seed,
    mutate,
    mutate_matrix,
    weighted_mutate,
)


def naive_mutation(b, k):
    """Oracle written from the textbook formula with max(., 0)."""
    n, m = len(b), len(b[0])
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        for j in range(m):
            if i == k or j == k:
                out[i][j] = -b[i][j]
            else:
                out[i][j] = b[i][j] + max(b[i][k], 0) * max(b[k][j], 0) - max(-b[i][k], 0) * max(-b[k][j], 0)
    return out


@st.composite
def skew_matrices(draw):
    n = draw(st.integers(2, 5))
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(st.integers(-2, 2))
            b[i][j], b[j][i] = v, -v
    c = [[draw(st.integers(-2, 2)) for _ in range(n)] for _ in range(n)]
    return b + c


@given(skew_matrices(), st.data())
def test_mutation_matches_oracle_and_is_involutive(ext, data):
    n = len(ext[0])
    k = data.draw(st.integers(0, n - 1))
    once = mutate_matrix(ext, k)
    assert [list(r) for r in once] == naive_mutation(ext, k)
    assert [list(r) for r in mutate_matrix(once, k)] == [list(r) for r in ext]


SELECTORS = ["A4", "D4", "B3:D4", "C3:A5", "F4:E6", "G2:D4", "H3:D6", "H4:E8", "I2:5:A4", "I2:12:E6"]


@pytest.mark.parametrize("sel", SELECTORS)
@given(seq=st.lists(st.integers(0, 3), max_size=12))
def test_weighted_mutation_stays_foldable_and_sign_coherent(sel, seq):
    f = get_folding(sel)
    s = initial_seed(f)
    for i in seq:
        i %= f.target.n
        s2 = weighted_mutate(s, i)
        s2.check()
        # the order inside a fiber does not matter
        assert weighted_mutate(s, i, reversed(f.fibers[i])) == s2
        # fiber vertices share their colour
        s2.fiber_is_green(i)
        assert weighted_mutate(s2, i) == s
        s = s2


def test_initial_seed_is_all_green():
    s = initial_seed(get_folding("H4"))
    assert all(s.is_green(k) for k in range(s.n))
    assert not mutate(s, 0).is_green(0)


def test_quiver_after_mutation_reverses_arrows():
    s = initial_seed(get_folding("H3"))
    q0, q1 = s.quiver, weighted_mutate(s, 1).quiver
    for j in (0, 2):
        assert q1.arrow(1, j) == q0.arrow(j, 1)
        assert q1.arrow(j, 1) == q0.arrow(1, j)


def test_pattern_iv_at_h3_cycle():
    q = WeightedQuiver(3, ((0, 1, 5), (1, 2, 5), (2, 0, 5)))
    (t,) = chordless_cycles(q)
    assert t.pattern == "IV" and t.cycle == (0, 1, 2)


def test_pattern_ii_rotation_puts_heavy_vertex_first():
    # weights (m, 3, m) starting at vertex 2
    q = WeightedQuiver(3, ((2, 0, 4), (0, 1, 3), (1, 2, 4)))
    (t,) = chordless_cycles(q)
    assert t.pattern == "II" and t.cycle[0] == 2 and t.weights == (4, 3, 4)


def test_pattern_iii():
    q = WeightedQuiver(4, ((0, 1, 3), (1, 2, 5), (2, 3, 3), (3, 0, 5)))
    (t,) = chordless_cycles(q)
    assert t.pattern == "III" and t.cycle == (0, 1, 2, 3)


def test_pattern_i_long_cycle_and_chords():
    q = WeightedQuiver(4, ((0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3)))
    assert [t.pattern for t in chordless_cycles(q)] == ["I"]
    # a chord splits the square into two triangles, one oriented
    q2 = WeightedQuiver(4, ((0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 0, 3), (2, 0, 3)))
    assert [t.cycle for t in chordless_cycles(q2)] == [(0, 1, 2)]


def test_unoriented_cycle_has_no_terms():
    q = WeightedQuiver(3, ((0, 1, 3), (1, 2, 3), (0, 2, 3)))
    assert chordless_cycles(q) == []


def test_unclassified_cycle():
    q = WeightedQuiver(3, ((0, 1, 4), (1, 2, 5), (2, 0, 3)))
    with pytest.raises(UnclassifiedCycle):
        classify_cycle(q, (0, 1, 2))


@pytest.mark.parametrize("label", ["A3", "A4", "D4"])
def test_identity_folding_quiver_is_unweighted(label):
    s = initial_seed(identity_folding(label))
    assert {w for _, _, w in s.quiver.arrows} == {3}
