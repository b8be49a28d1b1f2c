"""Verification suites for braid groups of weighted quivers with potential.

Every suite returns a ``VerificationReport``: a list of named checks, each
with a pass flag and a JSON-serialisable payload describing what was
compared (enough to replay a failure from the command line).
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .braid import (
    BraidWord,
    GeneratorExpression,
    alternating,
    braid_relator,
    coxeter_check,
    evaluate,
    iota_f,
    presentation_from_wqp,
    theta_flat,
    theta_sharp,
)
from .coxeter import BoundExceeded, GroupElement, enumerate_group, parse_type, reflection_representation
from .exchange import ExchangeGraph, build_ceg, enumerate_polygons, h1_polygon_complex, polygon_counts
from .folding import Folding, WeightedQuiver, catalog, get_folding
from .garside import ArtinGroup, NormalForm, TorusWord, artin_group
from .quiver import Seed, chordless_cycles, initial_seed, mutate, weighted_mutate

__all__ = [
    "Check",
    "VerificationReport",
    "TwistLabeling",
    "RENORMALIZE_LETTERS",
    "verify_lem_surj",
    "verify_local_twist_decomposition",
    "build_twist_labeling",
    "verify_presentations",
    "verify_theta_invariance",
    "random_theta_suite",
    "verify_iota",
    "verify_diagram",
    "verify_ceg",
    "verify_homology",
    "verify_garside",
    "delta_labels_along",
    "random_paths",
    "random_vertex_paths",
    "random_sequence",
    "triple_heptagon_vertex",
    "lambda_labels_along",
]

RENORMALIZE_LETTERS = 512


@dataclass
class Check:
    name: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, **({"detail": self.detail} if self.detail else {})}


@dataclass
class VerificationReport:
    suite: str
    checks: list[Check] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, **detail) -> bool:
        self.checks.append(Check(name, bool(ok), detail))
        return bool(ok)

    def extend(self, other: VerificationReport) -> None:
        self.checks.extend(other.checks)
        for k, v in other.stats.items():
            if isinstance(v, int) and isinstance(self.stats.get(k), int):
                self.stats[k] += v
            else:
                self.stats.setdefault(k, v)

    def to_json(self, verbose: bool = False) -> dict:
        data = {
            "suite": self.suite,
            "ok": self.ok,
            "checks": len(self.checks),
            "failed": len(self.failures),
            "stats": self.stats,
            "failures": [c.to_json() for c in self.failures[:20]],
        }
        if verbose:
            data["all_checks"] = [c.to_json() for c in self.checks]
        return data

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        line = f"[{status}] {self.suite}: {len(self.checks) - len(self.failures)}/{len(self.checks)} checks passed"
        if self.stats:
            line += " " + ", ".join(f"{k}={v}" for k, v in sorted(self.stats.items()))
        return line


def _words(expr: GeneratorExpression) -> list[str]:
    return [(x.to_word() if isinstance(x, NormalForm) else x).to_text() for x in expr.images]


# --- torus group identities ----------------------------------------------------


def verify_lem_surj(ms: Iterable[int] = range(2, 31), garside_up_to: int = 8) -> VerificationReport:
    """Closed forms for alternating products of t1 = xy, t2 = yx in <x, y | x^2 = y^m>."""
    rep = VerificationReport("lem-surj")
    for m in ms:
        x, y = TorusWord.parse("x", m), TorusWord.parse("y", m)
        t1, t2 = x * y, y * x
        l = m // 2
        ym = y ** (m * (l + 1))
        p12 = alternating(t1, t2, m)
        p21 = alternating(t2, t1, m)
        if m % 2 == 0:
            rep.add(f"m={m}: t1 t2 ... = y^(m(l+1))", p12 == ym, m=m)
            rep.add(f"m={m}: t2 t1 ... = y^(m(l+1))", p21 == ym, m=m)
        else:
            rep.add(f"m={m}: t1 t2 ... = x y^(m(l+1))", p12 == x * ym, m=m)
            rep.add(f"m={m}: t2 t1 ... = y^(m(l+1)) x", p21 == ym * x, m=m)
        rep.add(f"m={m}: Br^m(t1, t2) in <x,y>", p12 == p21, m=m)
        rep.add(f"m={m}: x^2 = y^m", x * x == y**m, m=m)
        if m <= garside_up_to and m >= 3:
            grp = artin_group(f"I2:{m}")
            b1, b2 = grp.generator(0), grp.generator(1)
            rep.add(f"m={m}: Br^m(b1, b2) in Br I2(m)", alternating(b1, b2, m) == alternating(b2, b1, m), m=m)
            if m % 2:
                u, v = alternating(b1, b2, m), b1 * b2
                rep.add(f"m={m}: u^2 = v^m in Br I2(m)", u * u == alternating(v, v, m), m=m)
            else:
                sigma, tau = b1 * b2 * b1, b1.inverse()
                rep.add(
                    f"m={m}: (sigma tau)^(m/2) = (tau sigma)^(m/2) in Br I2(m)",
                    alternating(sigma * tau, sigma * tau, m // 2) == alternating(tau * sigma, tau * sigma, m // 2),
                    m=m,
                )
    return rep


# --- local twists over fibers ----------------------------------------------------


def verify_local_twist_decomposition(f: Folding) -> VerificationReport:
    rep = VerificationReport(f"local-twist {f.name}")
    grp = artin_group(f.source)
    labels = f.source.labels
    for i, fib in enumerate(f.fibers):
        gens = [BraidWord.gen(k) for k in fib]
        for a, b in itertools.combinations(range(len(fib)), 2):
            rep.add(
                f"fiber {f.target.labels[i]}: b{labels[fib[a]]} b{labels[fib[b]]} commute",
                grp.equal(gens[a] * gens[b], gens[b] * gens[a]),
            )
        prods = {grp.normal_form(BraidWord([k + 1 for k in order])) for order in itertools.permutations(fib)}
        rep.add(f"fiber {f.target.labels[i]}: product independent of order", len(prods) == 1, size=len(fib))
    return rep


# --- twist labeling ------------------------------------------------------------


@dataclass
class TwistLabeling:
    """Local twists t_i^Y of every labeled vertex as normal forms in Br Delta."""

    graph: ExchangeGraph
    group: ArtinGroup
    labels: dict[int, GeneratorExpression]
    report: VerificationReport

    def words(self, v: int) -> list[BraidWord]:
        return [nf.to_word() for nf in self.labels[v].images]


def _quiver_after(seed: Seed, i: int) -> WeightedQuiver:
    return weighted_mutate(seed, i).quiver


def _transport(expr: GeneratorExpression, seed: Seed, i: int, green: bool, q_after: WeightedQuiver | None = None):
    """Labels after the weighted mutation at i, in the labels of the mutated seed."""
    q_before = seed.quiver
    if q_after is None:
        q_after = _quiver_after(seed, i)
    # forward mutations of the cluster category are the red-to-green direction
    # of principal coefficients, so theta-sharp runs against the green arrow
    if green:
        return theta_flat(expr, i, q_before, q_after)
    return theta_sharp(expr, i, q_before, q_after)


def _relabel(expr: GeneratorExpression, perm: Sequence[int]) -> GeneratorExpression:
    out = [None] * len(perm)
    for a, b in enumerate(perm):
        out[b] = expr[a]
    return GeneratorExpression(out)


def build_twist_labeling(g: ExchangeGraph, group: ArtinGroup | None = None) -> TwistLabeling:
    """Transport local twists from the initial vertex along every edge.

    Along a green mutation the labels move by theta-flat, along a red one by
    theta-sharp.  Every edge is used; whenever an edge reaches an already
    labeled vertex the transported twists must equal the stored ones in
    Br Delta, which is the polygon-relation content of the labeling.
    """
    grp = group or artin_group(g.folding.target)
    rep = VerificationReport(f"twist {g.folding.name}")
    n = g.rank
    labels: dict[int, GeneratorExpression] = {0: GeneratorExpression([grp.generator(i) for i in range(n)])}
    rep.add("initial labels are the standard generators", all(
        labels[0][i].to_word() == BraidWord.gen(i) for i in range(n)
    ))
    paths = {0: ()}
    order = deque([0])
    compared = 0
    while order:
        v = order.popleft()
        seed = g.seeds[v]
        for i in range(n):
            e = g.adj[v].get(i)
            if e is None:
                continue
            moved = _relabel(_transport(labels[v], seed, i, e.green), e.perm)
            w = e.dst
            if w not in labels:
                labels[w] = moved
                paths[w] = paths[v] + (i,)
                order.append(w)
                continue
            compared += 1
            same = moved == labels[w]
            if not same:
                rep.add(
                    f"path independence at vertex {w}",
                    False,
                    vertex=w,
                    path_a=list(paths[w]),
                    path_b=list(paths[v] + (i,)),
                    stored=_words(labels[w]),
                    transported=_words(moved),
                )
    rep.add(f"all {compared} closing edges agree", not rep.failures, compared=compared)
    rep.stats.update({"vertices": len(labels), "edges_compared": compared})
    return TwistLabeling(g, grp, labels, rep)


def _w_image(nf: NormalForm) -> GroupElement:
    ctx = nf.group.ctx
    w = ctx.identity
    if nf.delta_power % 2:
        w = ctx.w0
    for s in nf.simples:
        w = w * s
    return w


def verify_presentations(labeling: TwistLabeling) -> VerificationReport:
    """Every relator of the presentation at every labeled vertex holds among its twists."""
    g, grp = labeling.graph, labeling.group
    rep = VerificationReport(f"presentations {g.folding.name}")
    patterns = {"I": 0, "II": 0, "III": 0, "IV": 0}
    names = g.folding.target.labels
    for v in sorted(labeling.labels):
        q = g.quiver(v)
        terms = chordless_cycles(q)
        for t in terms:
            patterns[t.pattern] += 1
        pres = presentation_from_wqp(q, terms, names)
        imgs = labeling.labels[v].images
        cox = coxeter_check(pres, grp.ctx, [_w_image(x) for x in imgs])
        if not cox:
            rep.add(f"vertex {v}: Coxeter quotient", False, vertex=v, path=list(g.paths[v]))
        for r in pres.relators:
            val = evaluate(r.word, imgs, grp.identity)
            if not val.is_identity():
                rep.add(
                    f"vertex {v}: {r.text}", False, vertex=v, path=list(g.paths[v]),
                    relator=r.text, normal_form=val.to_json(),
                )
            else:
                rep.checks.append(Check(f"vertex {v}: {r.text}", True))
    rep.stats.update({f"pattern_{k}": c for k, c in patterns.items()})
    rep.stats["vertices"] = len(labeling.labels)
    return rep


# --- theta invariance along random mutation sequences ---------------------------


def _renormalize(expr: GeneratorExpression, grp: ArtinGroup) -> GeneratorExpression:
    return GeneratorExpression(
        grp.normal_form(w).to_word() if len(w) > RENORMALIZE_LETTERS else w for w in expr.images
    )


def verify_theta_invariance(
    folding: Folding | str,
    sequence: Sequence[int],
    *,
    start: Seed | None = None,
    start_words: Sequence[BraidWord] | None = None,
    group: ArtinGroup | None = None,
    report: VerificationReport | None = None,
) -> VerificationReport:
    """Transport generator words by theta-sharp along ``sequence`` and check the endpoint.

    The presentation of the reached weighted quiver must hold in Br Delta
    under the transported words; theta-flat must undo each step exactly.
    """
    f = get_folding(folding) if isinstance(folding, str) else folding
    grp = group or artin_group(f.target)
    rep = report or VerificationReport(f"theta {f.name}")
    seed = start or initial_seed(f)
    n = f.target.n
    expr = GeneratorExpression(start_words or [BraidWord.gen(i) for i in range(n)])
    for step, i in enumerate(sequence):
        nxt = weighted_mutate(seed, i)
        q0, q1 = seed.quiver, nxt.quiver
        moved = theta_sharp(expr, i, q0, q1)
        back = theta_flat(moved, i, q1, q0)
        if back != expr:
            rep.add(f"round trip at step {step}", False, sequence=list(sequence), step=step)
        expr = _renormalize(moved, grp)
        seed = nxt
    q = seed.quiver
    terms = chordless_cycles(q)
    pres = presentation_from_wqp(q, terms, f.target.labels)
    imgs = [grp.normal_form(w) for w in expr.images]
    failed = []
    for r in pres.relators:
        if not evaluate(r.word, imgs, grp.identity).is_identity():
            failed.append(r.text)
    rep.add(
        f"sequence {list(sequence)}",
        not failed,
        **({"sequence": list(sequence), "failed_relators": failed, "words": _words(expr)} if failed else {}),
    )
    for t in terms:
        rep.stats[f"pattern_{t.pattern}"] = rep.stats.get(f"pattern_{t.pattern}", 0) + 1
    return rep


def random_sequence(rng: random.Random, n: int, max_len: int) -> list[int]:
    length = rng.randint(1, max_len)
    seq: list[int] = []
    while len(seq) < length:
        i = rng.randrange(n)
        if n > 1 and seq and seq[-1] == i:
            continue
        seq.append(i)
    return seq


def random_theta_suite(folding: Folding | str, samples: int = 100, max_len: int = 8, seed: int = 0) -> VerificationReport:
    f = get_folding(folding) if isinstance(folding, str) else folding
    rng = random.Random(seed)
    rep = VerificationReport(f"theta {f.name}")
    grp = artin_group(f.target)
    for _ in range(samples):
        verify_theta_invariance(f, random_sequence(rng, f.target.n, max_len), group=grp, report=rep)
    rep.stats.update({"samples": samples, "max_len": max_len, "seed": seed})
    return rep


# --- folding homomorphism -----------------------------------------------------------


def verify_iota(f: Folding, enumerate_bound: int = 100_000) -> VerificationReport:
    """Braid relations of fiber products in Br Lambda, and injectivity on W(Delta)."""
    rep = VerificationReport(f"iota {f.name}")
    grp = artin_group(f.source)
    n = f.target.n
    images = [iota_f(f, BraidWord.gen(i)) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        m = f.target.m(i, j)
        lhs = alternating(images[i], images[j], m)
        rhs = alternating(images[j], images[i], m)
        rep.add(
            f"Br^{m}(iota b{f.target.labels[i]}, iota b{f.target.labels[j]})",
            grp.equal(lhs, rhs),
            m=m,
        )
    dctx = reflection_representation(f.target)
    lctx = grp.ctx
    fiber_elems = []
    for fib in f.fibers:
        w = lctx.identity
        for k in fib:
            w = w.mul_gen_right(k)
        fiber_elems.append(w)
    # breadth-first walk of W(Delta) carrying the image in W(Lambda)
    seen: dict[bytes, GroupElement] = {dctx.identity.key: lctx.identity}
    frontier = [dctx.identity]
    consistent = True
    while frontier:
        nxt = []
        for w in frontier:
            img = seen[w.key]
            for i in range(n):
                u = w.mul_gen_right(i)
                uimg = img * fiber_elems[i]
                old = seen.get(u.key)
                if old is None:
                    if len(seen) >= enumerate_bound:
                        raise BoundExceeded("W(Delta) larger than the enumeration bound")
                    seen[u.key] = uimg
                    nxt.append(u)
                elif old != uimg:
                    consistent = False
        frontier = nxt
    distinct = len({img.key for img in seen.values()})
    rep.add("image map is well defined on W(Delta)", consistent)
    rep.add(
        f"{len(seen)} elements of W({f.target_type}) have distinct images in W({f.source_type})",
        distinct == len(seen),
        order=len(seen),
        distinct_images=distinct,
    )
    rep.stats.update({"order": len(seen), "distinct_images": distinct})
    return rep


# --- the folding diagram ---------------------------------------------------------


def _lambda_quiver(seed: Seed) -> WeightedQuiver:
    n = seed.n
    return WeightedQuiver(n, tuple((a, b, 3) for a in range(n) for b in range(n) if seed.B[a][b] > 0))


def delta_labels_along(f: Folding, path: Sequence[int], grp: ArtinGroup | None = None, words: bool = False):
    """Twist labels in Br Delta along a path of weighted mutations from the initial seed.

    Labels are normal forms, or freely reduced braid words with ``words=True``
    (renormalized only past the length cap).
    """
    grp = grp or artin_group(f.target)
    seed = initial_seed(f)
    n = f.target.n
    if words:
        labels = GeneratorExpression([BraidWord.gen(i) for i in range(n)])
    else:
        labels = GeneratorExpression([grp.generator(i) for i in range(n)])
    for i in path:
        green = seed.fiber_is_green(i)
        nxt = weighted_mutate(seed, i)
        labels = _transport(labels, seed, i, green, nxt.quiver)
        if words:
            labels = _renormalize(labels, grp)
        seed = nxt
    return seed, labels


def lambda_labels_along(f: Folding, path: Sequence[int], grp: ArtinGroup | None = None):
    """Twist labels in Br Lambda along the unfolded path (fiber vertices in ascending order)."""
    grp = grp or artin_group(f.source)
    seed = initial_seed(f)
    labels = GeneratorExpression([grp.generator(k) for k in range(f.source.n)])
    for i in path:
        for k in f.fibers[i]:
            green = seed.is_green(k)
            nxt = mutate(seed, k)
            q0, q1 = _lambda_quiver(seed), _lambda_quiver(nxt)
            labels = theta_flat(labels, k, q0, q1) if green else theta_sharp(labels, k, q0, q1)
            seed = nxt
    return seed, labels


def verify_diagram(f: Folding, paths: Iterable[Sequence[int]]) -> VerificationReport:
    """iota_f of the Delta-twists equals the fiber product of Lambda-twists."""
    rep = VerificationReport(f"diagram {f.name}")
    dgrp, lgrp = artin_group(f.target), artin_group(f.source)
    for path in paths:
        dseed, dl = delta_labels_along(f, path, dgrp)
        lseed, ll = lambda_labels_along(f, path, lgrp)
        if dseed.C != lseed.C:
            rep.add(f"path {list(path)}: unfolded seeds agree", False)
            continue
        for i, fib in enumerate(f.fibers):
            lhs = lgrp.normal_form(iota_f(f, dl[i].to_word()))
            rhs = lgrp.identity
            for k in fib:
                rhs = rhs * ll[k]
            ok = lhs == rhs
            rep.add(
                f"path {list(path)}: twist {f.target.labels[i]}",
                ok,
                **({} if ok else {"path": list(path), "delta_word": dl[i].to_word().to_text()}),
            )
    return rep


def random_paths(f: Folding, count: int, max_len: int, seed: int) -> list[list[int]]:
    rng = random.Random(seed)
    return [random_sequence(rng, f.target.n, max_len) for _ in range(count)]


def random_vertex_paths(g: ExchangeGraph, count: int, seed: int) -> list[list[int]]:
    """BFS paths to ``count`` distinct non-initial vertices drawn uniformly from ``g``."""
    rng = random.Random(seed)
    pool = range(1, len(g))
    picks = rng.sample(pool, min(count, len(pool)))
    return [list(g.paths[v]) for v in picks]


# --- exchange graph suites ----------------------------------------------------------


def _product_formula(label: str) -> int:
    from .coxeter import coxeter_number, exponents

    h = coxeter_number(label)
    num, den = 1, 1
    for e in exponents(label):
        num *= e + h + 1
        den *= e + 1
    return num // den


def verify_ceg(label: str, folding: Folding | None = None) -> VerificationReport:
    f = folding or catalog(label)[0]
    rep = VerificationReport(f"ceg {f.name}")
    g = build_ceg(f)
    expected = _product_formula(label)
    rep.add(f"{len(g)} vertices (product formula {expected})", len(g) == expected, vertices=len(g), expected=expected)
    deg = {len(g.neighbors(v)) for v in range(len(g))}
    rep.add("regular of degree rank", deg == {g.rank}, degrees=sorted(deg))
    polys = enumerate_polygons(g)
    rep.stats.update({"vertices": len(g), "edges": len(g.unoriented_edges()), "polygons": len(polys)})
    rep.stats.update({f"{k}-gons": v for k, v in polygon_counts(polys).items()})
    rep.add("every polygon has one source, one sink and paths of lengths 2 and m", True)
    return rep


def verify_homology(label: str, folding: Folding | None = None) -> VerificationReport:
    f = folding or catalog(label)[0]
    rep = VerificationReport(f"homology {f.name}")
    g = build_ceg(f)
    h1 = h1_polygon_complex(g, enumerate_polygons(g))
    rep.add("H1 of the polygon complex is trivial", h1 == [], invariant_factors=h1)
    return rep


# --- Garside self tests ------------------------------------------------------------------


def _random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    return BraidWord(rng.choice((1, -1)) * rng.randint(1, n) for _ in range(length))


def verify_garside(label: str, cases: int = 1000, seed: int = 0, max_len: int = 16) -> VerificationReport:
    """Relator insertion (soundness), single-generator separation, Delta^2 centrality."""
    from .coxeter import standard_graph

    rep = VerificationReport(f"garside {label}")
    grp = artin_group(label)
    graph = standard_graph(label)
    n = grp.rank
    rng = random.Random(seed)
    relators = [
        list(braid_relator(BraidWord.gen(i), BraidWord.gen(j), graph.m(i, j)).letters)
        for i, j in itertools.combinations(range(n), 2)
    ]
    relators += [[i, -i] for i in range(1, n + 1)] + [[-i, i] for i in range(1, n + 1)]
    bad_sound = bad_sep = 0
    for c in range(cases):
        w = _random_word(rng, n, rng.randint(0, max_len))
        letters = list(w.letters)
        for _ in range(rng.randint(1, 2)):
            r = rng.choice(relators)
            if rng.random() < 0.5:
                r = [-x for x in reversed(r)]
            pos = rng.randint(0, len(letters))
            letters[pos:pos] = r
        nf = grp.normal_form(w)
        if grp.normal_form_letters(letters) != nf:
            bad_sound += 1
            if bad_sound <= 3:
                rep.add(f"soundness case {c}", False, w=w.to_text(), inserted=letters)
        g = rng.randrange(n)
        if nf * grp.generator(g) == nf or grp.normal_form(w * BraidWord.gen(g)) == nf:
            bad_sep += 1
            if bad_sep <= 3:
                rep.add(f"separation case {c}", False, w=w.to_text(), g=g + 1)
    rep.add(f"soundness fuzz ({cases} cases)", bad_sound == 0, failures=bad_sound)
    rep.add(f"separation fuzz ({cases} cases)", bad_sep == 0, failures=bad_sep)
    delta2 = grp.normal_form(BraidWord([i + 1 for i in grp.ctx.w0_word] * 2))
    rep.add("Delta^2 has delta power 2 and no simples", delta2.delta_power == 2 and not delta2.simples)
    central = all(delta2 * grp.generator(i) == grp.generator(i) * delta2 for i in range(n))
    rep.add("Delta^2 is central", central)
    rep.stats.update({"cases": cases, "seed": seed})
    return rep


def triple_heptagon_vertex(g: ExchangeGraph, polygons=None) -> int:
    """First vertex lying on three heptagons whose quiver carries an all-weight-5 3-cycle."""
    polys = enumerate_polygons(g) if polygons is None else polygons
    count = [0] * len(g)
    for p in polys:
        if p.size == 7:
            for v in p.vertices:
                count[v] += 1
    for v in range(len(g)):
        if count[v] == 3 and any(t.pattern == "IV" for t in chordless_cycles(g.quiver(v))):
            return v
    raise ValueError("no vertex on three heptagons with an all-weight-5 3-cycle")
