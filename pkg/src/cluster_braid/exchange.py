"""Cluster exchange graphs of weighted foldings, their polygons and H1.

Vertices are Lambda-seeds reached from the initial seed by weighted
mutations.  Two seeds are the same vertex when their c-vector sets agree; in
finite type the c-vectors determine the seed, and the relabeling matching
them must move whole fibers onto fibers (checked, together with B).  Each
vertex keeps the first seed that reached it as its representative, and every
edge records how Delta-labels translate between neighbouring representatives.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .algebra import invariant_factors
from .coxeter import BoundExceeded
from .folding import Folding, WeightedQuiver, get_folding
from .quiver import Seed, initial_seed, weighted_mutate, with_potential

__all__ = [
    "ExchangeGraph",
    "Edge",
    "Polygon",
    "IdentificationError",
    "PolygonError",
    "seed_key",
    "build_ceg",
    "enumerate_polygons",
    "polygon_counts",
    "isomorphic",
    "graphs_isomorphic",
    "h1_polygon_complex",
    "to_dot",
    "to_json",
]


class IdentificationError(RuntimeError):
    """Seeds with equal c-vector sets that are not fiber-compatible relabelings."""


class PolygonError(RuntimeError):
    pass


def seed_key(s: Seed) -> tuple:
    return tuple(sorted(s.c_vector(k) for k in range(s.n)))


@dataclass(frozen=True)
class Edge:
    """Weighted mutation at ``label`` from ``src``; ``perm`` maps Delta-labels of the
    mutated seed to those of the representative of ``dst``."""

    src: int
    label: int
    dst: int
    perm: tuple[int, ...]
    green: bool

    @property
    def back_label(self) -> int:
        return self.perm[self.label]


@dataclass
class ExchangeGraph:
    folding: Folding
    seeds: list[Seed] = field(default_factory=list)
    index: dict = field(default_factory=dict)
    adj: list[dict[int, Edge]] = field(default_factory=list)
    paths: list[tuple[int, ...]] = field(default_factory=list)
    depth: list[int] = field(default_factory=list)
    complete: bool = True

    @property
    def rank(self) -> int:
        return self.folding.target.n

    @property
    def initial(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.seeds)

    def quiver(self, v: int) -> WeightedQuiver:
        return self.seeds[v].quiver

    def quiver_with_potential(self, v: int) -> WeightedQuiver:
        return with_potential(self.seeds[v].quiver)

    def neighbors(self, v: int) -> list[int]:
        return sorted({e.dst for e in self.adj[v].values()})

    def unoriented_edges(self) -> list[tuple[int, int]]:
        out = set()
        for v, edges in enumerate(self.adj):
            for e in edges.values():
                out.add((min(v, e.dst), max(v, e.dst)))
        return sorted(out)

    def oriented_edges(self) -> list[tuple[int, int, int]]:
        """Forward (green) mutations as (src, dst, label)."""
        return sorted((e.src, e.dst, e.label) for edges in self.adj for e in edges.values() if e.green)

    def adjacency_sets(self) -> list[set[int]]:
        return [set(self.neighbors(v)) for v in range(len(self))]

    def follow(self, path: Iterable[int], start: int = 0) -> int:
        """Vertex reached by a sequence of labels, labels read at the current vertex."""
        v = start
        for i in path:
            v = self.adj[v][i].dst
        return v


def _match(folding: Folding, new: Seed, rep: Seed) -> tuple[int, ...]:
    """Delta-permutation relabeling ``new`` onto ``rep``; raises if incompatible."""
    n = new.n
    where = {rep.c_vector(k): k for k in range(n)}
    pi = [where[new.c_vector(k)] for k in range(n)]
    vmap = folding.vertex_map
    delta = [None] * folding.target.n
    for k in range(n):
        a, b = vmap[k], vmap[pi[k]]
        if delta[a] is None:
            delta[a] = b
        elif delta[a] != b:
            raise IdentificationError("relabeling splits a fiber")
    if sorted(delta) != list(range(folding.target.n)):
        raise IdentificationError("relabeling is not a bijection on fibers")
    for a in range(n):
        for b in range(n):
            if new.B[a][b] != rep.B[pi[a]][pi[b]]:
                raise IdentificationError("equal c-vectors but different exchange matrices")
    return tuple(delta)


def build_ceg(
    folding: Folding | str,
    *,
    max_vertices: int = 100_000,
    radius: int | None = None,
    orientation=None,
) -> ExchangeGraph:
    """Breadth-first construction of CEG(Delta, f) from the default seed.

    With ``radius`` only the ball of that many steps around the initial vertex
    is explored; edges leaving the ball are omitted and ``complete`` is False.
    """
    if isinstance(folding, str):
        folding = get_folding(folding)
    g = ExchangeGraph(folding)
    s0 = initial_seed(folding, orientation)
    g.seeds.append(s0)
    g.index[seed_key(s0)] = 0
    g.adj.append({})
    g.paths.append(())
    g.depth.append(0)
    queue = deque([0])
    n = folding.target.n
    while queue:
        v = queue.popleft()
        s = g.seeds[v]
        for i in range(n):
            if i in g.adj[v]:
                continue
            green = s.fiber_is_green(i)
            t = weighted_mutate(s, i)
            key = seed_key(t)
            w = g.index.get(key)
            if w is None:
                if radius is not None and g.depth[v] >= radius:
                    g.complete = False
                    continue
                if len(g.seeds) >= max_vertices:
                    raise BoundExceeded(f"exchange graph exceeds {max_vertices} vertices")
                w = len(g.seeds)
                g.seeds.append(t)
                g.index[key] = w
                g.adj.append({})
                g.paths.append(g.paths[v] + (i,))
                g.depth.append(g.depth[v] + 1)
                queue.append(w)
                perm = tuple(range(n))
            else:
                perm = _match(folding, t, g.seeds[w])
            g.adj[v][i] = Edge(v, i, w, perm, green)
            j = perm[i]
            inv = [0] * n
            for a, b in enumerate(perm):
                inv[b] = a
            back = Edge(w, j, v, tuple(inv), not green)
            old = g.adj[w].get(j)
            if old is not None and (old.dst != v or old.perm != back.perm):
                raise IdentificationError("inconsistent reverse edge")
            g.adj[w][j] = back
    return g


# --- polygons ---------------------------------------------------------------


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[int, ...]  # in walking order, starting at the source
    labels: tuple[int, int]  # the Delta-labels at the source
    m: int
    source: int
    sink: int
    path_lengths: tuple[int, int]

    @property
    def size(self) -> int:
        return len(self.vertices)


def _walk(g: ExchangeGraph, v: int, i: int, j: int, steps: int):
    """Alternate mutations starting with i at v; returns vertices and edges."""
    verts, edges = [v], []
    u, x, y = v, i, j
    for _ in range(steps):
        e = g.adj[u].get(x)
        if e is None:
            return None, None
        edges.append(e)
        u, x, y = e.dst, e.perm[y], e.perm[x]
        verts.append(u)
    return verts, edges


def enumerate_polygons(g: ExchangeGraph) -> list[Polygon]:
    """All alternating-mutation polygons, each verified and listed once."""
    seen: dict[tuple[int, ...], Polygon] = {}
    n = g.rank
    for v in range(len(g)):
        q = g.quiver(v)
        for i in range(n):
            for j in range(i + 1, n):
                m = q.weight(i, j)
                verts, edges = _walk(g, v, i, j, m + 2)
                if verts is None:
                    if g.complete:
                        raise PolygonError(f"missing edge while walking from {v}")
                    continue  # polygon leaves the explored ball
                cyc = verts[:-1]
                if verts[-1] != v or len(set(cyc)) != m + 2:
                    raise PolygonError(
                        f"alternating walk at vertex {v}, labels {(i, j)}, weight {m} "
                        f"does not close after exactly {m + 2} steps"
                    )
                key = tuple(sorted(cyc))
                if key in seen:
                    if seen[key].m != m:
                        raise PolygonError("polygon found with two different weights")
                    continue
                seen[key] = _orient(g, cyc, edges, m)
    return sorted(seen.values(), key=lambda p: (p.m, sorted(p.vertices)))


def _orient(g: ExchangeGraph, cyc: list[int], edges: list[Edge], m: int) -> Polygon:
    k = len(cyc)
    # forward[t]: polygon edge t goes cyc[t] -> cyc[t+1]
    forward = [e.green for e in edges]
    sources = [t for t in range(k) if forward[t] and not forward[t - 1]]
    sinks = [t for t in range(k) if not forward[t] and forward[t - 1]]
    if len(sources) != 1 or len(sinks) != 1:
        raise PolygonError(f"polygon {cyc} has {len(sources)} sources and {len(sinks)} sinks")
    s, t = sources[0], sinks[0]
    a = (t - s) % k
    lengths = tuple(sorted((a, k - a)))
    if lengths != tuple(sorted((2, m))):
        raise PolygonError(f"polygon {cyc} has source-sink paths {lengths}, expected 2 and {m}")
    order = tuple(cyc[s:] + cyc[:s])
    # labels at the source of the two boundary edges
    e_out = edges[s]
    e_in = edges[s - 1]
    lab_in = e_in.perm[e_in.label]
    return Polygon(order, tuple(sorted((e_out.label, lab_in))), m, cyc[s], cyc[t], lengths)


def polygon_counts(polygons: Sequence[Polygon]) -> dict[int, int]:
    """Number of polygons by size (m + 2)."""
    out: dict[int, int] = {}
    for p in polygons:
        out[p.size] = out.get(p.size, 0) + 1
    return dict(sorted(out.items()))


# --- homology ---------------------------------------------------------------


def h1_polygon_complex(g: ExchangeGraph | Sequence[set[int]], polygons: Sequence) -> list[int]:
    """Invariant factors of H1 of the graph with polygons glued in.

    Torsion coefficients d > 1 first, then one 0 per free summand; [] means trivial.
    ``polygons`` may be Polygon objects or plain vertex cycles.
    """
    adj = g.adjacency_sets() if isinstance(g, ExchangeGraph) else [set(a) for a in g]
    nv = len(adj)
    edges = sorted({(min(a, b), max(a, b)) for a in range(nv) for b in adj[a]})
    eidx = {e: k for k, e in enumerate(edges)}
    comps = _count_components(adj)
    cycle_rank = len(edges) - nv + comps
    columns = []
    for p in polygons:
        cyc = p.vertices if isinstance(p, Polygon) else tuple(p)
        col: dict[int, int] = {}
        for t in range(len(cyc)):
            a, b = cyc[t], cyc[(t + 1) % len(cyc)]
            k = eidx[(min(a, b), max(a, b))]
            col[k] = col.get(k, 0) + (1 if a < b else -1)
        columns.append(col)
    factors = invariant_factors(columns, len(edges))
    torsion = [d for d in factors if d > 1]
    return torsion + [0] * (cycle_rank - len(factors))


def _count_components(adj: Sequence[set[int]]) -> int:
    seen = [False] * len(adj)
    c = 0
    for s in range(len(adj)):
        if seen[s]:
            continue
        c += 1
        seen[s] = True
        todo = [s]
        while todo:
            v = todo.pop()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    todo.append(u)
    return c


# --- isomorphism ------------------------------------------------------------


def _refine(adj: Sequence[Sequence[int]], colors: list[int]) -> list[int]:
    while True:
        sigs = [(colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(len(adj))]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def graphs_isomorphic(adj1: Sequence[Iterable[int]], adj2: Sequence[Iterable[int]]) -> bool:
    """Isomorphism of simple undirected graphs by colour refinement and backtracking."""
    n1, n2 = len(adj1), len(adj2)
    if n1 != n2:
        return False
    a1 = [sorted(x) for x in adj1]
    a2 = [sorted(x) for x in adj2]
    if sorted(map(len, a1)) != sorted(map(len, a2)):
        return False
    # refine the disjoint union so colour names are comparable across graphs
    union = a1 + [[u + n1 for u in x] for x in a2]
    sets1 = [set(x) for x in a1]
    sets2 = [set(x) for x in a2]

    def balanced(col: list[int]) -> bool:
        c1, c2 = {}, {}
        for v in range(n1):
            c1[col[v]] = c1.get(col[v], 0) + 1
            c2[col[v + n1]] = c2.get(col[v + n1], 0) + 1
        return c1 == c2

    def search(col: list[int], fresh: int) -> bool:
        col = _refine(union, col)
        if not balanced(col):
            return False
        cells: dict[int, list[int]] = {}
        for v in range(n1):
            cells.setdefault(col[v], []).append(v)
        big = [c for c, vs in cells.items() if len(vs) > 1]
        if not big:
            inv = {col[v + n1]: v for v in range(n2)}
            f = [inv[col[v]] for v in range(n1)]
            return all({f[u] for u in sets1[v]} == sets2[f[v]] for v in range(n1))
        c = min(big, key=lambda c: (len(cells[c]), c))
        v1 = cells[c][0]
        for v2 in range(n2):
            if col[v2 + n1] != c:
                continue
            trial = list(col)
            trial[v1] = trial[v2 + n1] = fresh
            if search(trial, fresh + 1):
                return True
        return False

    return search([0] * (n1 + n2), n1 + n2 + 1)


def isomorphic(g1: ExchangeGraph, g2: ExchangeGraph) -> bool:
    return graphs_isomorphic(g1.adjacency_sets(), g2.adjacency_sets())


# --- export -----------------------------------------------------------------


def to_dot(g: ExchangeGraph, oriented: bool = False, polygons: Sequence[Polygon] | None = None) -> str:
    labels = g.folding.target.labels
    lines = [("digraph" if oriented else "graph") + " CEG {"]
    for v in range(len(g)):
        path = " ".join(labels[i] for i in g.paths[v])
        lines.append(f'  v{v} [label="{v}", tooltip="{path}"];')
    if oriented:
        for a, b, lab in g.oriented_edges():
            lines.append(f'  v{a} -> v{b} [label="{labels[lab]}"];')
    else:
        for a, b in g.unoriented_edges():
            lines.append(f"  v{a} -- v{b};")
    if polygons:
        for k, p in enumerate(polygons):
            members = " ".join(f"v{v};" for v in p.vertices)
            lines.append(f'  subgraph cluster_p{k} {{ label="{p.size}-gon"; {members} }}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json(g: ExchangeGraph, polygons: Sequence[Polygon] | None = None) -> dict:
    data = {
        "type": g.folding.target_type,
        "folding": g.folding.name,
        "complete": g.complete,
        "vertices": [
            {
                "id": v,
                "path": list(g.paths[v]),
                "quiver": [list(a) for a in g.quiver(v).arrows],
                "weights": sorted({a[2] for a in g.quiver(v).arrows}),
            }
            for v in range(len(g))
        ],
        "edges": [{"src": a, "dst": b, "label": lab} for a, b, lab in g.oriented_edges()],
    }
    if polygons is not None:
        data["polygons"] = [{"vertices": list(p.vertices), "m": p.m} for p in polygons]
    return data
