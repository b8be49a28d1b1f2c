"""Weighted foldings of simply laced graphs onto Coxeter graphs.

A folding maps the vertices of a simply laced graph Lambda onto those of a
Coxeter graph Delta.  Over each weighted edge of Delta the preimage must be a
disjoint union of bipartite simply laced Dynkin graphs whose Coxeter numbers
all equal the weight (single edges count as A2, Coxeter number 3).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .coxeter import CoxeterGraph, classify_finite, coxeter_number, parse_type, standard_graph

__all__ = [
    "Folding",
    "WeightedQuiver",
    "FoldingError",
    "ValidationResult",
    "catalog",
    "get_folding",
    "identity_folding",
    "validate",
    "fold_quiver",
    "component_coxeter_number",
    "initial_exchange_matrix",
]


class FoldingError(ValueError):
    """The map (or a quiver over it) does not fold."""


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    clause: str | None = None
    edge: tuple | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class Folding:
    source: CoxeterGraph
    target: CoxeterGraph
    vertex_map: tuple[int, ...]
    source_type: str = ""
    target_type: str = ""

    @cached_property
    def fibers(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.target.n)]
        for lam, delta in enumerate(self.vertex_map):
            out[delta].append(lam)
        return tuple(tuple(f) for f in out)

    @property
    def name(self) -> str:
        return f"{self.target_type}:{self.source_type}"

    def is_identity(self) -> bool:
        return self.source.n == self.target.n and all(len(f) == 1 for f in self.fibers)

    def to_json(self) -> dict:
        return {
            "source_type": self.source_type,
            "target_type": self.target_type,
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "vertex_map": [
                [self.source.labels[k], self.target.labels[v]] for k, v in enumerate(self.vertex_map)
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> Folding:
        src = CoxeterGraph.from_json(data["source"])
        tgt = CoxeterGraph.from_json(data["target"])
        vmap = dict((a, b) for a, b in data["vertex_map"])
        return cls(
            src,
            tgt,
            tuple(tgt.index(vmap[lab]) for lab in src.labels),
            data.get("source_type", ""),
            data.get("target_type", ""),
        )


@dataclass(frozen=True)
class WeightedQuiver:
    """Oriented weighted graph: arrows (i, j, m) meaning i -> j with weight m."""

    n: int
    arrows: tuple[tuple[int, int, int], ...]
    potential: tuple = ()

    def __post_init__(self):
        pairs = set()
        for i, j, m in self.arrows:
            key = frozenset((i, j))
            if key in pairs or i == j:
                raise ValueError("at most one arrow between two vertices")
            pairs.add(key)
        object.__setattr__(self, "arrows", tuple(sorted(self.arrows)))

    @cached_property
    def _arrow_map(self) -> dict[tuple[int, int], int]:
        return {(i, j): m for i, j, m in self.arrows}

    def arrow(self, i: int, j: int) -> int | None:
        """Weight of the arrow i -> j, or None."""
        return self._arrow_map.get((i, j))

    def weight(self, i: int, j: int) -> int:
        """Weight of the edge between i and j regardless of direction (2 if none)."""
        return self._arrow_map.get((i, j)) or self._arrow_map.get((j, i)) or 2

    def underlying_graph(self, labels: Sequence[str] = ()) -> CoxeterGraph:
        return CoxeterGraph.from_edges(self.n, self.arrows, labels)

    def with_potential(self, terms) -> WeightedQuiver:
        return WeightedQuiver(self.n, self.arrows, tuple(terms))

    def to_json(self) -> dict:
        data = {"n": self.n, "arrows": [list(a) for a in self.arrows]}
        if self.potential:
            data["potential"] = [t.to_json() for t in self.potential]
        return data


# --- Coxeter numbers of components ------------------------------------------


def _components(vertices: Iterable[int], edges: Iterable[tuple[int, int]]) -> list[tuple[list[int], list[tuple[int, int]]]]:
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    elist = list(edges)
    for a, b in elist:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen: set[int] = set()
    comps = []
    for v in sorted(adj):
        if v in seen:
            continue
        comp, todo = [], [v]
        seen.add(v)
        while todo:
            u = todo.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        cs = set(comp)
        comps.append((sorted(comp), [(a, b) for a, b in elist if a in cs]))
    return comps


def component_coxeter_number(vertices: Sequence[int], edges: Sequence[tuple[int, int]]) -> int | None:
    """Coxeter number of a connected simply laced graph, or None if not ADE."""
    if len(vertices) == 1:
        return None  # an isolated vertex lies over no edge
    index = {v: k for k, v in enumerate(vertices)}
    g = CoxeterGraph.from_edges(len(vertices), [(index[a], index[b], 3) for a, b in edges])
    label = classify_finite(g)
    if label == "not finite":
        return None
    return coxeter_number(label)


def _bipartite_between(part_a: set[int], part_b: set[int], edges) -> bool:
    return all((a in part_a and b in part_b) or (a in part_b and b in part_a) for a, b in edges)


def validate(f: Folding) -> ValidationResult:
    src, tgt = f.source, f.target
    if len(f.vertex_map) != src.n:
        return ValidationResult(False, "map", None, "vertex map has wrong length")
    if not src.is_simply_laced():
        return ValidationResult(False, "simply-laced", None, "source graph has weighted edges")
    if not src.is_connected():
        return ValidationResult(False, "connected", None, "source graph is disconnected")
    if any(not fib for fib in f.fibers):
        return ValidationResult(False, "surjective", None, "some target vertex has an empty fiber")
    vmap = f.vertex_map
    for a, b, _ in src.edges:
        if vmap[a] == vmap[b]:
            return ValidationResult(
                False, "independent-fiber", (src.labels[a], src.labels[b]),
                f"edge {src.labels[a]}-{src.labels[b]} lies inside one fiber",
            )
    for a, b, _ in src.edges:
        if tgt.m(vmap[a], vmap[b]) == 2:
            return ValidationResult(
                False, "edge-image", (src.labels[a], src.labels[b]),
                f"edge {src.labels[a]}-{src.labels[b]} maps to a non-edge",
            )
    for i, j, m in tgt.edges:
        fi, fj = set(f.fibers[i]), set(f.fibers[j])
        sub = [(a, b) for a, b, _ in src.edges if {vmap[a], vmap[b]} == {i, j}]
        tag = (tgt.labels[i], tgt.labels[j])
        if not _bipartite_between(fi, fj, sub):
            return ValidationResult(False, "bipartite", tag, "preimage is not bipartite over the fibers")
        for verts, es in _components(fi | fj, sub):
            h = component_coxeter_number(verts, es)
            if h is None:
                names = [src.labels[v] for v in verts]
                return ValidationResult(
                    False, "component", tag, f"preimage component {names} is not a Dynkin graph with an edge"
                )
            if h != m:
                return ValidationResult(
                    False, "coxeter-number", tag, f"component Coxeter number {h} differs from weight {m}"
                )
    return ValidationResult(True)


# --- quivers over a folding --------------------------------------------------


def fold_quiver(f: Folding, b: Sequence[Sequence[int]]) -> WeightedQuiver:
    """Fold a skew-symmetric exchange matrix on Lambda to a weighted quiver on Delta.

    ``b[i][j] > 0`` means an arrow i -> j.
    """
    vmap = f.vertex_map
    n = len(vmap)
    between: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(n):
            v = b[i][j]
            if v <= 0:
                continue
            if v != 1:
                raise FoldingError(f"multiple arrows {i}->{j}")
            di, dj = vmap[i], vmap[j]
            if di == dj:
                raise FoldingError(f"arrow {i}->{j} inside a fiber")
            between.setdefault((di, dj), []).append((i, j))
    arrows = []
    for (di, dj), arr in sorted(between.items()):
        if (dj, di) in between:
            raise FoldingError(f"mixed orientations between fibers {di} and {dj}")
        verts = sorted({v for a in arr for v in a})
        weights = set()
        for cv, ce in _components(verts, arr):
            h = component_coxeter_number(cv, ce)
            if h is None:
                raise FoldingError(f"unrecognised component between fibers {di} and {dj}")
            weights.add(h)
        if len(weights) != 1:
            raise FoldingError(f"components of distinct Coxeter numbers {sorted(weights)} between {di} and {dj}")
        arrows.append((di, dj, weights.pop()))
    return WeightedQuiver(f.target.n, tuple(arrows))


def initial_exchange_matrix(f: Folding, orientation: Mapping[tuple[int, int], bool] | None = None) -> list[list[int]]:
    """Exchange matrix of the default orientation of Lambda.

    Every preimage edge of the Delta edge i - j (i < j) points from the fiber
    of i to the fiber of j.  ``orientation[(i, j)] = False`` reverses it.
    """
    n = f.source.n
    b = [[0] * n for _ in range(n)]
    vmap = f.vertex_map
    for a, c, _ in f.source.edges:
        da, dc = vmap[a], vmap[c]
        lo, hi = min(da, dc), max(da, dc)
        forward = True if orientation is None else orientation.get((lo, hi), True)
        src, dst = (a, c) if (da == lo) == forward else (c, a)
        b[src][dst] = 1
        b[dst][src] = -1
    return b


# --- catalog -----------------------------------------------------------------


def _graph(labels: Sequence[str], edges: Iterable[tuple[str, str]]) -> CoxeterGraph:
    idx = {lab: k for k, lab in enumerate(labels)}
    return CoxeterGraph.from_edges(len(labels), [(idx[a], idx[b], 3) for a, b in edges], labels)


def _make(src: CoxeterGraph, tgt: CoxeterGraph, image: Mapping[str, str], src_type: str, tgt_type: str) -> Folding:
    vmap = tuple(tgt.index(image[lab]) for lab in src.labels)
    return Folding(src, tgt, vmap, src_type, tgt_type)


def identity_folding(label: str) -> Folding:
    g = standard_graph(label)
    return Folding(g, g, tuple(range(g.n)), label, label)


def _a_to_c(n: int, tgt_type: str) -> Folding:
    labels = [f"{i}+" for i in range(1, n)] + [str(n)] + [f"{i}-" for i in range(n - 1, 0, -1)]
    src = _graph(labels, zip(labels, labels[1:]))
    image = {lab: lab.rstrip("+-") for lab in labels}
    return _make(src, standard_graph(f"B{n}"), image, f"A{2 * n - 1}", tgt_type)


def _d_to_b(n: int) -> Folding:
    labels = [str(i) for i in range(1, n)] + [f"{n}+", f"{n}-"]
    edges = [(str(i), str(i + 1)) for i in range(1, n - 1)] + [(str(n - 1), f"{n}+"), (str(n - 1), f"{n}-")]
    src = _graph(labels, edges)
    image = {lab: lab.rstrip("+-") for lab in labels}
    return _make(src, standard_graph(f"B{n}"), image, f"D{n + 1}", f"B{n}")


def _e6_to_f4() -> Folding:
    labels = ["1", "2", "3+", "4+", "3-", "4-"]
    src = _graph(labels, [("1", "2"), ("2", "3+"), ("3+", "4+"), ("2", "3-"), ("3-", "4-")])
    image = {lab: lab.rstrip("+-") for lab in labels}
    return _make(src, standard_graph("F4"), image, "E6", "F4")


def _d4_to_g2() -> Folding:
    labels = ["1+", "1o", "1-", "2"]
    src = _graph(labels, [("2", "1+"), ("2", "1o"), ("2", "1-")])
    image = {"1+": "1", "1o": "1", "1-": "1", "2": "2"}
    return _make(src, standard_graph("G2"), image, "D4", "G2")


def _e8_to_h4() -> Folding:
    labels = ["1+", "1-", "2+", "2-", "3+", "3-", "4+", "4-"]
    edges = [("4+", "3+"), ("3+", "2+"), ("2+", "1-"), ("4-", "3-"), ("3-", "2-"), ("2-", "1+"), ("2-", "1-")]
    src = _graph(labels, edges)
    image = {lab: lab[0] for lab in labels}
    return _make(src, standard_graph("H4"), image, "E8", "H4")


def _d6_to_h3() -> Folding:
    labels = ["1+", "1-", "2+", "2-", "3+", "3-"]
    edges = [("3+", "2+"), ("2+", "1-"), ("3-", "2-"), ("2-", "1+"), ("2-", "1-")]
    src = _graph(labels, edges)
    image = {lab: lab[0] for lab in labels}
    return _make(src, standard_graph("H3"), image, "D6", "H3")


def _two_coloring(g: CoxeterGraph) -> list[int]:
    color = [-1] * g.n
    color[0] = 0
    todo = [0]
    while todo:
        v = todo.pop()
        for u in g.neighbors(v):
            if color[u] < 0:
                color[u] = 1 - color[v]
                todo.append(u)
    return color


def _dihedral(m: int, src_type: str, tgt_type: str) -> Folding:
    src = standard_graph(src_type)
    tgt = standard_graph(f"I2:{m}")
    color = _two_coloring(src)
    # the part containing the first vertex goes to the second target vertex
    vmap = tuple(1 if c == 0 else 0 for c in color)
    return Folding(src, tgt, vmap, src_type, tgt_type)


def _dihedral_sources(m: int) -> list[str]:
    out = [f"A{m - 1}"]
    if m % 2 == 0 and m >= 6:
        out.append(f"D{m // 2 + 1}")
    out += {12: ["E6"], 18: ["E7"], 30: ["E8"]}.get(m, [])
    return out


def catalog(label: str) -> list[Folding]:
    """All built-in foldings onto the finite type ``label`` (first = default)."""
    fam, n, m = parse_type(label)
    if fam in "ADE":
        return [identity_folding(label)]
    if fam == "I":
        return [_dihedral(m, s, label) for s in _dihedral_sources(m)]
    if fam == "B":
        out = [_d_to_b(n)] if n >= 3 else []
        return out + [_a_to_c(n, f"C{n}")]
    if fam == "C":
        out = [_a_to_c(n, label)]
        return out + ([_d_to_b(n)] if n >= 3 else [])
    if label == "F4":
        return [_e6_to_f4()]
    if label == "G2":
        return [_d4_to_g2(), _dihedral(6, "A5", "G2")]
    if label == "H2":
        return [_dihedral(5, "A4", "H2")]
    if label == "H3":
        return [_d6_to_h3()]
    if label == "H4":
        return [_e8_to_h4()]
    raise ValueError(f"no catalog entry for {label!r}")


def get_folding(selector: str) -> Folding:
    """Resolve ``"Delta"`` (default entry) or ``"Delta:Lambda"`` against the catalog."""
    try:
        parse_type(selector)
        return catalog(selector)[0]
    except ValueError:
        pass
    delta, _, lam = selector.rpartition(":")
    if not delta:
        raise ValueError(f"bad folding selector {selector!r}")
    for f in catalog(delta):
        if f.source_type == lam:
            return f
    raise ValueError(f"no folding {lam} -> {delta} in the catalog")
