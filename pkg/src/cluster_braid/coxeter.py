"""Finite Coxeter graphs, their reflection representations and Coxeter groups.

Group elements are carried as permutations of the (finite) root system of the
geometric representation.  The action on roots is faithful, so permutations
compare exactly like matrices do, and lengths and descents become lookups.
Matrices over ``CycloReal`` are still available from any element.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .algebra import CycloReal, cos_embedding

__all__ = [
    "CoxeterGraph",
    "CoxeterContext",
    "GroupElement",
    "NotFiniteError",
    "BoundExceeded",
    "classify_finite",
    "standard_graph",
    "parse_type",
    "parse_edge_list",
    "reflection_representation",
    "enumerate_group",
    "group_order",
    "coxeter_number",
    "exponents",
]

NOT_FINITE = "not finite"


class NotFiniteError(ValueError):
    pass


class BoundExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CoxeterGraph:
    """Weighted graph on vertices 0..n-1; absent edges have weight 2."""

    n: int
    edges: tuple[tuple[int, int, int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        seen = set()
        norm = []
        for i, j, m in self.edges:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"bad edge {(i, j)}")
            if m < 3:
                raise ValueError("edge weights must be >= 3 (absent edge means 2)")
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"more than one edge between {key}")
            seen.add(key)
            norm.append((*key, m))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i + 1) for i in range(self.n)))
        elif len(self.labels) != self.n:
            raise ValueError("label count does not match rank")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, int]], labels: Sequence[str] = ()) -> CoxeterGraph:
        return cls(n, tuple(edges), tuple(labels))

    @cached_property
    def _weights(self) -> dict[tuple[int, int], int]:
        w = {}
        for i, j, m in self.edges:
            w[i, j] = w[j, i] = m
        return w

    def m(self, i: int, j: int) -> int:
        if i == j:
            return 2  # diagonal convention of the Coxeter matrix
        return self._weights.get((i, j), 2)

    def coxeter_matrix(self) -> list[list[int]]:
        return [[self.m(i, j) for j in range(self.n)] for i in range(self.n)]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and (i, j) in self._weights]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        todo = [0]
        while todo:
            v = todo.pop()
            for u in self.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return len(seen) == self.n

    def is_simply_laced(self) -> bool:
        return all(m == 3 for _, _, m in self.edges)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "edges": [[i, j, m] for i, j, m in self.edges],
        }

    @classmethod
    def from_json(cls, data: dict) -> CoxeterGraph:
        return cls(data["n"], tuple(tuple(e) for e in data["edges"]), tuple(data.get("labels", ())))


# --- standard graphs and classification ------------------------------------

_TYPE_RE = re.compile(r"^([A-I])(\d+)(?::(\d+))?$")


def parse_type(label: str) -> tuple[str, int, int | None]:
    """Split a type label such as ``B4`` or ``I2:7`` into (family, rank, m)."""
    mt = _TYPE_RE.match(label.strip())
    if not mt:
        raise ValueError(f"unrecognised type label {label!r}")
    fam, rank, m = mt.group(1), int(mt.group(2)), mt.group(3)
    if fam == "I":
        if rank != 2 or m is None:
            raise ValueError("dihedral types are written I2:m")
        return fam, 2, int(m)
    if m is not None:
        raise ValueError(f"unexpected weight in {label!r}")
    return fam, rank, None


def _path(n: int, special: dict[int, int] | None = None) -> list[tuple[int, int, int]]:
    special = special or {}
    return [(i, i + 1, special.get(i, 3)) for i in range(n - 1)]


def standard_graph(label: str) -> CoxeterGraph:
    """The graph of a finite type with the vertex numbering of the standard list."""
    fam, n, m = parse_type(label)
    if fam == "A" and n >= 1:
        return CoxeterGraph.from_edges(n, _path(n))
    if fam in "BC" and n >= 2:
        return CoxeterGraph.from_edges(n, _path(n, {n - 2: 4}))
    if fam == "D" and n >= 4:
        edges = [(0, 2, 3), (1, 2, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
        return CoxeterGraph.from_edges(n, edges)
    if fam == "E" and n in (6, 7, 8):
        # 1-2-3-5-6-7-8 with 4 attached to 3
        chain = [0, 1, 2, 4, 5, 6, 7][: n - 1]
        edges = [(chain[k], chain[k + 1], 3) for k in range(len(chain) - 1)] + [(2, 3, 3)]
        return CoxeterGraph.from_edges(n, edges)
    if fam == "F" and n == 4:
        return CoxeterGraph.from_edges(4, _path(4, {1: 4}))
    if fam == "G" and n == 2:
        return CoxeterGraph.from_edges(2, [(0, 1, 6)])
    if fam == "H" and n in (2, 3, 4):
        return CoxeterGraph.from_edges(n, _path(n, {0: 5}))
    if fam == "I" and m is not None and m >= 3:
        return CoxeterGraph.from_edges(2, [(0, 1, m)])
    raise ValueError(f"no finite Coxeter graph {label!r}")


def parse_edge_list(spec: str) -> CoxeterGraph:
    """Parse ``"1-2:5,2-3"`` (weight defaults to 3) into a graph."""
    pairs = []
    names: list[str] = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        ends, _, w = item.partition(":")
        a, sep, b = ends.partition("-")
        if not sep:
            if a.strip() not in names:
                names.append(a.strip())
            continue
        a, b = a.strip(), b.strip()
        for v in (a, b):
            if v not in names:
                names.append(v)
        pairs.append((a, b, int(w) if w else 3))
    if all(v.isdigit() for v in names):
        names.sort(key=int)
    idx = {v: k for k, v in enumerate(names)}
    edges = [(idx[a], idx[b], m) for a, b, m in pairs if m != 2]
    return CoxeterGraph.from_edges(len(names), edges, names)


def classify_finite(g: CoxeterGraph) -> str:
    """Type label of a connected Coxeter graph, or ``"not finite"``."""
    if not g.is_connected():
        raise ValueError("classification needs a connected graph")
    n = g.n
    if n == 1:
        return "A1"
    if n == 2:
        m = g.edges[0][2]
        return {3: "A2", 4: "B2", 5: "H2", 6: "G2"}.get(m, f"I2:{m}")
    if len(g.edges) != n - 1:
        return NOT_FINITE
    heavy = [(i, j, m) for i, j, m in g.edges if m > 3]
    degree = [len(g.neighbors(v)) for v in range(n)]
    if not heavy:
        branch = [v for v in range(n) if degree[v] >= 3]
        if not branch:
            return f"A{n}"
        if len(branch) > 1 or degree[branch[0]] > 3:
            return NOT_FINITE
        arms = sorted(_arm_length(g, branch[0], u) for u in g.neighbors(branch[0]))
        if arms[0] == 1 and arms[1] == 1:
            return f"D{n}"
        if arms[:2] == [1, 2] and arms[2] in (2, 3, 4):
            return f"E{n}"
        return NOT_FINITE
    if len(heavy) > 1 or max(degree) > 2:
        return NOT_FINITE
    i, j, m = heavy[0]
    at_end = degree[i] == 1 or degree[j] == 1
    if m == 4:
        if at_end:
            return f"B{n}"
        return "F4" if n == 4 else NOT_FINITE
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}"
    return NOT_FINITE


def _arm_length(g: CoxeterGraph, root: int, first: int) -> int:
    prev, cur, length = root, first, 1
    while True:
        nxt = [u for u in g.neighbors(cur) if u != prev]
        if not nxt:
            return length
        prev, cur, length = cur, nxt[0], length + 1


def coxeter_number(label: str) -> int:
    fam, n, m = parse_type(label)
    table = {"A": n + 1, "B": 2 * n, "C": 2 * n, "D": 2 * n - 2}
    if fam in table:
        return table[fam]
    return {"E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6, "H2": 5, "H3": 10, "H4": 30}.get(
        f"{fam}{n}", m if fam == "I" else None
    )


def exponents(label: str) -> list[int]:
    fam, n, m = parse_type(label)
    if fam == "A":
        return list(range(1, n + 1))
    if fam in "BC":
        return list(range(1, 2 * n, 2))
    if fam == "D":
        return sorted(list(range(1, 2 * n - 2, 2)) + [n - 1])
    if fam == "I":
        return [1, m - 1]
    return {
        "E6": [1, 4, 5, 7, 8, 11],
        "E7": [1, 5, 7, 9, 11, 13, 17],
        "E8": [1, 7, 11, 13, 17, 19, 23, 29],
        "F4": [1, 5, 7, 11],
        "G2": [1, 5],
        "H2": [1, 4],
        "H3": [1, 5, 9],
        "H4": [1, 11, 19, 29],
    }[f"{fam}{n}"]


def group_order(label: str) -> int:
    """|W| as the product of (e_i + 1) over the exponents."""
    return math.prod(e + 1 for e in exponents(label))


# --- reflection representation ---------------------------------------------

Vector = tuple[CycloReal, ...]
Matrix = tuple[tuple[CycloReal, ...], ...]


class CoxeterContext:
    """A finite Coxeter graph with its reflection representation and root system."""

    def __init__(self, graph: CoxeterGraph, type_name: str | None = None):
        if type_name is None:
            type_name = classify_finite(graph) if graph.is_connected() else None
        if type_name == NOT_FINITE:
            raise NotFiniteError("graph is not of finite type")
        self.graph = graph
        self.type_name = type_name
        self.rank = n = graph.n
        weights = [m for _, _, m in graph.edges]
        self.level = reduce(math.lcm, weights, 1)
        L = self.level
        zero = CycloReal.from_int(L, 0)
        one = CycloReal.from_int(L, 1)
        coef = [[zero] * n for _ in range(n)]
        for i, j, m in graph.edges:
            coef[i][j] = coef[j][i] = cos_embedding(m, L)
        self._coef = coef
        mats = []
        for i in range(n):
            rows = []
            for r in range(n):
                if r != i:
                    rows.append(tuple(one if c == r else zero for c in range(n)))
                else:
                    rows.append(tuple(-one if c == i else coef[i][c] for c in range(n)))
            mats.append(tuple(rows))
        self.simple_matrices: list[Matrix] = mats
        self._build_roots()
        dtype = np.int16 if 2 * self.npos < 2**15 else np.int32
        self.arange = np.arange(2 * self.npos, dtype=dtype)
        self.gen_arrays = [np.array(p, dtype=dtype) for p in self.gen_perms]
        self.identity = GroupElement(self, self.arange, self.arange)
        self.gens = [GroupElement(self, a, a) for a in self.gen_arrays]
        self._build_longest()

    # reflection sigma_i(v): coordinate i becomes -v_i + sum_j c_ij v_j
    def reflect(self, i: int, v: Vector) -> Vector:
        c = self._coef[i]
        new_i = -v[i]
        for j in range(self.rank):
            if j != i and not c[j].is_zero():
                new_i = new_i + c[j] * v[j]
        return v[:i] + (new_i,) + v[i + 1:]

    def _build_roots(self) -> None:
        n, L = self.rank, self.level
        zero = CycloReal.from_int(L, 0)
        one = CycloReal.from_int(L, 1)
        simple = [tuple(one if c == i else zero for c in range(n)) for i in range(n)]
        positives = list(simple)
        index = {r: k for k, r in enumerate(positives)}
        queue = deque(positives)
        while queue:
            beta = queue.popleft()
            for i in range(n):
                gamma = self.reflect(i, beta)
                if gamma in index:
                    continue
                signs = {x.sign() for x in gamma} - {0}
                if signs == {-1}:
                    continue  # only -alpha_i arises, from beta = alpha_i
                if signs != {1}:
                    raise ArithmeticError("root with mixed signs: not a finite root system")
                index[gamma] = len(positives)
                positives.append(gamma)
                queue.append(gamma)
                if len(positives) > 5000:
                    raise NotFiniteError("root system too large (infinite type?)")
        self.npos = N = len(positives)
        self.roots: list[Vector] = positives + [tuple(-x for x in r) for r in positives]
        root_index = {r: k for k, r in enumerate(self.roots)}
        self.root_index = root_index
        perms = []
        for i in range(n):
            perms.append(tuple(root_index[self.reflect(i, r)] for r in self.roots))
        self.gen_perms = perms

    def _build_longest(self) -> None:
        w = self.identity
        word: list[int] = []
        while True:
            asc = [i for i in range(self.rank) if not w.has_right_descent(i)]
            if not asc:
                break
            w = w.mul_gen_right(asc[0])
            word.append(asc[0])
        self.w0 = w
        self.w0_word = tuple(word)
        self.tau = []
        for i in range(self.rank):
            conj = w * self.gens[i] * w
            self.tau.append(self.gens.index(conj))

    # convenience wrappers ----------------------------------------------------
    def element(self, word: Iterable[int]) -> GroupElement:
        w = self.identity
        for i in word:
            w = w.mul_gen_right(i)
        return w

    def mult(self, a: GroupElement, b: GroupElement) -> GroupElement:
        return a * b

    def length(self, w: GroupElement) -> int:
        return w.length

    def left_descents(self, w: GroupElement) -> set[int]:
        return w.left_descents()

    def matrix_product(self, word: Iterable[int]) -> Matrix:
        n, L = self.rank, self.level
        one, zero = CycloReal.from_int(L, 1), CycloReal.from_int(L, 0)
        acc: Matrix = tuple(tuple(one if r == c else zero for c in range(n)) for r in range(n))
        for i in word:
            acc = _matmul(acc, self.simple_matrices[i])
        return acc

    def __repr__(self) -> str:
        return f"CoxeterContext({self.type_name}, rank={self.rank}, positive roots={self.npos})"


def _matmul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = []
    for r in range(n):
        row = []
        for c in range(n):
            acc = a[r][0] * b[0][c]
            for k in range(1, n):
                acc = acc + a[r][k] * b[k][c]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


class GroupElement:
    """Element of a finite Coxeter group as a permutation of the roots.

    ``perm[r]`` is the index of w(root r) and ``inv`` the inverse permutation,
    both numpy index arrays; whichever is missing is computed on demand.
    Roots ``0..N-1`` are positive, ``N..2N-1`` their negatives, and the simple
    root alpha_i has index i.
    """

    __slots__ = ("ctx", "_perm", "_inv", "_length", "_key")

    def __init__(self, ctx: CoxeterContext, perm: np.ndarray | None = None, inv: np.ndarray | None = None):
        if perm is None and inv is None:
            raise ValueError("need perm or inv")
        self.ctx = ctx
        self._perm = perm
        self._inv = inv
        self._length = None
        self._key = None

    @property
    def perm(self) -> np.ndarray:
        if self._perm is None:
            p = np.empty_like(self._inv)
            p[self._inv] = self.ctx.arange
            self._perm = p
        return self._perm

    @property
    def inv(self) -> np.ndarray:
        if self._inv is None:
            q = np.empty_like(self._perm)
            q[self._perm] = self.ctx.arange
            self._inv = q
        return self._inv

    @property
    def key(self) -> bytes:
        if self._key is None:
            self._key = self.perm.tobytes()
        return self._key

    def __mul__(self, other: GroupElement) -> GroupElement:
        if other.ctx is not self.ctx:
            raise ValueError("elements from different Coxeter contexts")
        return GroupElement(self.ctx, perm=self.perm.take(other.perm))

    def mul_gen_right(self, i: int) -> GroupElement:
        return GroupElement(self.ctx, perm=self.perm.take(self.ctx.gen_arrays[i]))

    def mul_gen_left(self, i: int) -> GroupElement:
        return GroupElement(self.ctx, inv=self.inv.take(self.ctx.gen_arrays[i]))

    def inverse(self) -> GroupElement:
        return GroupElement(self.ctx, perm=self._inv, inv=self._perm)

    @property
    def length(self) -> int:
        if self._length is None:
            N = self.ctx.npos
            self._length = int(np.count_nonzero(self.perm[:N] >= N))
        return self._length

    def has_right_descent(self, i: int) -> bool:
        return bool(self.perm[i] >= self.ctx.npos)

    def has_left_descent(self, i: int) -> bool:
        return bool(self.inv[i] >= self.ctx.npos)

    def right_descent_mask(self) -> int:
        N = self.ctx.npos
        return sum(1 << i for i, r in enumerate(self.perm[: self.ctx.rank].tolist()) if r >= N)

    def left_descent_mask(self) -> int:
        N = self.ctx.npos
        return sum(1 << i for i, r in enumerate(self.inv[: self.ctx.rank].tolist()) if r >= N)

    def left_descents(self) -> set[int]:
        return {i for i in range(self.ctx.rank) if self.has_left_descent(i)}

    def right_descents(self) -> set[int]:
        return {i for i in range(self.ctx.rank) if self.has_right_descent(i)}

    def is_identity(self) -> bool:
        if self._length is not None:
            return self._length == 0
        arr = self._perm if self._perm is not None else self._inv
        return not np.count_nonzero(arr[: self.ctx.rank] >= self.ctx.npos)

    def reduced_word(self) -> tuple[int, ...]:
        word = []
        N, n = self.ctx.npos, self.ctx.rank
        p = self.perm
        gens = self.ctx.gen_arrays
        while True:
            head = p[:n].tolist()
            d = next((i for i in range(n) if head[i] >= N), None)
            if d is None:
                break
            word.append(d)
            p = p.take(gens[d])
        return tuple(reversed(word))

    @property
    def matrix(self):
        return self.ctx.matrix_product(self.reduced_word())

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupElement) and other.ctx is self.ctx and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"GroupElement({list(self.reduced_word())})"


_CONTEXTS: dict[CoxeterGraph, CoxeterContext] = {}


def reflection_representation(g: CoxeterGraph) -> CoxeterContext:
    """Reflection representation with roots and longest element; cached per graph."""
    ctx = _CONTEXTS.get(g)
    if ctx is None:
        ctx = _CONTEXTS[g] = CoxeterContext(g)
    return ctx


def enumerate_group(ctx: CoxeterContext, bound: int = 100_000) -> list[GroupElement]:
    """All elements of W by breadth-first search, in order of length."""
    seen = {ctx.identity.key: ctx.identity}
    order = [ctx.identity]
    frontier = [ctx.identity]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(ctx.rank):
                if w.has_right_descent(i):
                    continue
                u = w.mul_gen_right(i)
                if u.key not in seen:
                    if len(seen) >= bound:
                        raise BoundExceeded(f"group larger than bound {bound}")
                    seen[u.key] = u
                    order.append(u)
                    nxt.append(u)
        frontier = nxt
    return order
