"""Acceptance criteria. Each test prints one ``CRITERION n PASS/FAIL`` line."""

import itertools
import time
from collections import deque
from functools import lru_cache

import networkx as nx
import pytest

from cluster_braid import verify as V
from cluster_braid.exchange import build_ceg, enumerate_polygons, h1_polygon_complex, isomorphic, polygon_counts
from cluster_braid.folding import catalog, get_folding
from cluster_braid.quiver import initial_seed, weighted_mutate

# Degrees of the basic invariants, tabulated independently of the package.
DEGREES = {
    "A3": (2, 3, 4),
    "A4": (2, 3, 4, 5),
    "B3": (2, 4, 6),
    "B4": (2, 4, 6, 8),
    "D4": (2, 4, 4, 6),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
    "H3": (2, 6, 10),
    "H4": (2, 12, 20, 30),
}
EXPECTED_COUNTS = {"A3": 14, "A4": 42, "B3": 20, "B4": 70, "D4": 50, "F4": 105, "G2": 8, "H3": 32, "H4": 280}
WEYL_ORDERS = {"H3": 120, "H4": 14400, "G2": 12, "F4": 1152, "B3": 48}

THETA_TYPES = ["A3", "A4", "B3", "B4", "D4", "F4", "G2", "H3", "H4"] + [f"I2:{m}" for m in range(3, 9)]
FOLDING_TYPES = ["A3", "A4", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "H3", "H4"] + [f"I2:{m}" for m in range(3, 13)]
GARSIDE_TYPES = ["A3", "A4", "B3", "B4", "D4", "F4", "G2", "H3", "H4", "I2:5", "I2:8", "E6", "E7", "E8"]


def all_foldings():
    # B_n and C_n catalogs share their entries; keep each folding once
    out = {}
    for t in FOLDING_TYPES:
        for f in catalog(t):
            out.setdefault(f.name, f)
    return list(out.values())


@lru_cache(maxsize=None)
def ceg(selector):
    return build_ceg(get_folding(selector))


def naive_count(f):
    """Clusters as unordered sets of c-vectors; no relabeling or matching."""
    key = lambda s: frozenset(s.c_vector(k) for k in range(s.n))
    s0 = initial_seed(f)
    seen, todo = {key(s0)}, deque([s0])
    while todo:
        s = todo.popleft()
        for i in range(f.target.n):
            t = weighted_mutate(s, i)
            if key(t) not in seen:
                seen.add(key(t))
                todo.append(t)
    return len(seen)


def product_count(degrees):
    h = max(degrees)
    num = den = 1
    for d in degrees:
        num *= d + h
        den *= d
    return num // den


def record(capsys, n, title, fn, limit):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure of the criterion
        ok, detail = False, f"{type(e).__name__}: {e}"
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, f"{detail}; took {elapsed:.1f}s, limit {limit}s"
    with capsys.disabled():
        print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'} {title} [{elapsed:.2f}s] {detail}")
    assert ok, detail


def test_criterion_1_dihedral_cycles(capsys):
    def run():
        seen = 0
        for m in range(3, 13):
            graphs = [build_ceg(f) for f in catalog(f"I2:{m}")]
            for g in graphs:
                h = nx.Graph(g.unoriented_edges())
                if len(g) != m + 2 or not nx.is_isomorphic(h, nx.cycle_graph(m + 2)):
                    return False, f"I2:{m} {g.folding.name}: {len(g)} vertices"
                seen += 1
            if not all(isomorphic(graphs[0], g) for g in graphs[1:]):
                return False, f"I2:{m}: unfoldings disagree"
        return True, f"{seen} unfoldings for m=3..12"

    record(capsys, 1, "CEG of I2(m) is an (m+2)-cycle", run, 1.0)


def test_criterion_2_vertex_counts(capsys):
    def run():
        times = {}
        for t, expected in EXPECTED_COUNTS.items():
            start = time.perf_counter()
            g = build_ceg(t)
            times[t] = time.perf_counter() - start
            if len(g) != expected or product_count(DEGREES[t]) != expected:
                return False, f"{t}: {len(g)} vertices, expected {expected}"
        naive = {}
        for t in ("A3", "B3", "G2", "H3"):
            for f in catalog(t):
                naive[f.name] = naive_count(f)
                if naive[f.name] != EXPECTED_COUNTS[t] or len(build_ceg(f)) != EXPECTED_COUNTS[t]:
                    return False, f"{f.name}: naive BFS gives {naive[f.name]}"
        if times["H4"] > 120:
            return False, f"H4 took {times['H4']:.1f}s"
        return True, f"counts {EXPECTED_COUNTS}; naive BFS agrees on {sorted(naive)}"

    record(capsys, 2, "vertex counts match the product formula", run, 300)


def test_criterion_3_faces(capsys):
    def run():
        counts = {}
        for t in ("A3", "B3", "H3"):
            polys = enumerate_polygons(build_ceg(t))
            for p in polys:
                if p.size != p.m + 2 or p.path_lengths != tuple(sorted((2, p.m))):
                    return False, f"{t}: polygon {p.vertices} fails the source/sink invariant"
            counts[t] = polygon_counts(polys)
        a3, b3, h3 = counts["A3"], counts["B3"], counts["H3"]
        ok = (
            a3 == {4: 3, 5: 6}
            and b3.get(6) == 4 and b3.get(4, 0) + b3.get(5, 0) == 8 and set(b3) <= {4, 5, 6}
            and h3.get(7) == 6 and h3.get(4, 0) + h3.get(5, 0) == 12 and set(h3) <= {4, 5, 7}
        )
        return ok, f"faces by size {counts}"

    record(capsys, 3, "face decomposition of A3, B3, H3", run, 5.0)


def test_criterion_4_lem_surj(capsys):
    def run():
        rep = V.verify_lem_surj(range(2, 31))
        return rep.ok, rep.summary()

    record(capsys, 4, "torus-group identities m=2..30", run, 1.0)


def test_criterion_5_theta_invariance(capsys):
    def run():
        bad, total = [], 0
        for t in THETA_TYPES:
            rep = V.random_theta_suite(t, samples=100, max_len=8, seed=0)
            total += len(rep.checks)
            if not rep.ok or len(rep.checks) < 100:
                bad.append(rep.summary())
        return not bad, "; ".join(bad) or f"{total} sequences over {len(THETA_TYPES)} types"

    record(capsys, 5, "theta invariance, 100 sequences of length <= 8 per type", run, 1800)


def test_criterion_6_twist_labeling(capsys):
    def run():
        coverage = {p: 0 for p in ("I", "II", "III", "IV")}
        runs = [(t, None) for t in ["A3", "B3", "G2", "H3"] + [f"I2:{m}" for m in range(3, 13)]]
        runs += [("H4", 6), ("F4", 6)]
        for t, radius in runs:
            g = build_ceg(t, radius=radius)
            if radius is None and not g.complete:
                return False, f"{t}: graph incomplete"
            lab = V.build_twist_labeling(g)
            pres = V.verify_presentations(lab)
            if not (lab.report.ok and pres.ok and len(lab.labels) == len(g)):
                return False, f"{t}: {lab.report.summary()} {pres.summary()}"
            for p in coverage:
                coverage[p] += pres.stats.get(f"pattern_{p}", 0)
        ok = all(v > 0 for v in coverage.values())
        return ok, f"pattern coverage {coverage}"

    record(capsys, 6, "path-independent twist labeling with valid presentations", run, 1800)


def test_criterion_7_folding_homomorphism(capsys):
    def run():
        orders = {}
        for f in all_foldings():
            rep = V.verify_iota(f)
            if not rep.ok:
                return False, rep.summary()
            orders[f.name] = rep.stats["distinct_images"]
            expected = WEYL_ORDERS.get(f.target_type)
            if expected is not None and orders[f.name] != expected:
                return False, f"{f.name}: {orders[f.name]} images, expected {expected}"
        named = {k: v for k, v in orders.items() if k.split(":")[0] in WEYL_ORDERS}
        return True, f"{len(orders)} foldings; {named}"

    record(capsys, 7, "folding homomorphism relations and Coxeter-level injectivity", run, 600)


def test_criterion_8_diagram(capsys):
    def run():
        checked = 0
        for f in all_foldings():
            g = build_ceg(f)
            paths = [[]] + V.random_vertex_paths(g, 10, seed=0)
            rep = V.verify_diagram(f, paths)
            if not rep.ok:
                return False, rep.summary()
            checked += len(paths)
        return True, f"{checked} vertices over {len(all_foldings())} foldings"

    record(capsys, 8, "folding diagram commutes on generators", run, 600)


def test_criterion_9_homology(capsys):
    def run():
        out = {}
        for t in list(EXPECTED_COUNTS) + [f"I2:{m}" for m in range(3, 13)]:
            g = build_ceg(t)
            if not g.complete:
                return False, f"{t}: incomplete"
            out[t] = h1_polygon_complex(g, enumerate_polygons(g))
        bad = {t: h for t, h in out.items() if h}
        return not bad, f"nontrivial H1: {bad}" if bad else f"trivial for {len(out)} graphs"

    record(capsys, 9, "H1 of the polygon complex is trivial", run, 10.0)


def test_criterion_10_garside(capsys):
    def run():
        bad = []
        for t in GARSIDE_TYPES:
            rep = V.verify_garside(t, cases=1000, seed=0)
            if not rep.ok:
                bad.append(rep.summary())
        return not bad, "; ".join(bad) or f"1000 cases each for {', '.join(GARSIDE_TYPES)}"

    record(capsys, 10, "Garside engine self-tests", run, 120)
