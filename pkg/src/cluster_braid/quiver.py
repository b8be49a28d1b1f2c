"""Seeds with principal coefficients, (weighted) mutation and potential terms."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .folding import Folding, FoldingError, WeightedQuiver, fold_quiver, initial_exchange_matrix

__all__ = [
    "Seed",
    "PotentialTerm",
    "SignCoherenceError",
    "UnclassifiedCycle",
    "initial_seed",
    "mutate",
    "weighted_mutate",
    "mutate_matrix",
    "chordless_cycles",
    "classify_cycle",
    "with_potential",
]


class SignCoherenceError(ArithmeticError):
    pass


class UnclassifiedCycle(ValueError):
    pass


Matrix = tuple[tuple[int, ...], ...]


def _freeze(m: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in m)


def mutate_matrix(ext: Sequence[Sequence[int]], k: int) -> Matrix:
    """Fomin-Zelevinsky mutation at column k of an extended matrix (rows >= columns)."""
    bk = ext[k]
    out = []
    for i, row in enumerate(ext):
        bik = row[k]
        if i == k:
            out.append(tuple(-x for x in row))
            continue
        if bik == 0:
            out.append(tuple(-x if j == k else x for j, x in enumerate(row)))
            continue
        aik = abs(bik)
        new = []
        for j, bij in enumerate(row):
            if j == k:
                new.append(-bij)
            else:
                bkj = bk[j]
                new.append(bij + (aik * bkj + bik * abs(bkj)) // 2)
        out.append(tuple(new))
    return tuple(out)


@dataclass(frozen=True)
class Seed:
    """Exchange matrix B on Lambda with c-vector matrix C (column k = c-vector of k)."""

    B: Matrix
    C: Matrix
    folding: Folding

    @property
    def n(self) -> int:
        return len(self.B)

    def c_vector(self, k: int) -> tuple[int, ...]:
        return tuple(row[k] for row in self.C)

    def is_green(self, k: int) -> bool:
        return all(row[k] >= 0 for row in self.C)

    def fiber_is_green(self, i: int) -> bool:
        """Colour of the Delta-vertex i: all c-vectors over the fiber share it."""
        colours = {self.is_green(k) for k in self.folding.fibers[i]}
        if len(colours) != 1:
            raise SignCoherenceError(f"fiber of {i} mixes green and red vertices")
        return colours.pop()

    @cached_property
    def quiver(self) -> WeightedQuiver:
        """The folded weighted quiver (without potential)."""
        return fold_quiver(self.folding, self.B)

    def check(self) -> None:
        n = self.n
        for i in range(n):
            for j in range(n):
                if self.B[i][j] != -self.B[j][i]:
                    raise ValueError("exchange matrix is not skew-symmetric")
        for k in range(n):
            col = self.c_vector(k)
            if any(x > 0 for x in col) and any(x < 0 for x in col):
                raise SignCoherenceError(f"c-vector {k} is not sign-coherent: {col}")

    def to_json(self) -> dict:
        return {"B": [list(r) for r in self.B], "C": [list(r) for r in self.C], "folding": self.folding.name}


def initial_seed(f: Folding, orientation=None) -> Seed:
    b = _freeze(initial_exchange_matrix(f, orientation))
    n = len(b)
    c = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return Seed(b, c, f)


def mutate(s: Seed, k: int) -> Seed:
    n = s.n
    ext = mutate_matrix(s.B + s.C, k)
    out = Seed(ext[:n], ext[n:], s.folding)
    for kk in range(n):
        col = out.c_vector(kk)
        if any(x > 0 for x in col) and any(x < 0 for x in col):
            raise SignCoherenceError(f"c-vector {kk} is not sign-coherent after mutation at {k}")
    return out


def weighted_mutate(s: Seed, i: int, order: Iterable[int] | None = None) -> Seed:
    """Mutate at every vertex of the fiber over the Delta-vertex i."""
    fiber = s.folding.fibers[i]
    seq = tuple(order) if order is not None else fiber
    if sorted(seq) != sorted(fiber):
        raise ValueError("order must enumerate the fiber")
    for k in seq:
        s = mutate(s, k)
    s.quiver  # raises FoldingError if the result does not fold
    return s


# --- potential terms -----------------------------------------------------------


@dataclass(frozen=True)
class PotentialTerm:
    """Chordless oriented cycle; ``cycle[0]`` plays the role of vertex 1 of its pattern."""

    cycle: tuple[int, ...]
    pattern: str
    weights: tuple[int, ...]

    def to_json(self) -> dict:
        return {"cycle": list(self.cycle), "pattern": self.pattern, "weights": list(self.weights)}


def _matches(pattern: str, w: tuple[int, ...]) -> bool:
    l = len(w)
    if pattern == "I":
        return l >= 3 and all(x == 3 for x in w)
    if pattern == "II":
        return l == 3 and w[0] == w[2] and w[0] in (4, 5) and w[1] == 3
    if pattern == "III":
        return l == 4 and w[0] == w[2] == 3 and w[1] == w[3] and w[1] in (4, 5)
    if pattern == "IV":
        return l == 3 and all(x == 5 for x in w)
    return False


def classify_cycle(q: WeightedQuiver, cycle: Sequence[int]) -> PotentialTerm:
    """Classify an oriented cycle into pattern I-IV, choosing the rotation.

    Among rotations fitting the pattern, the one starting at the smallest
    vertex is used.
    """
    l = len(cycle)
    found = []
    for r in range(l):
        rot = tuple(cycle[r:]) + tuple(cycle[:r])
        w = tuple(q.arrow(rot[k], rot[(k + 1) % l]) for k in range(l))
        if None in w:
            raise ValueError("not an oriented cycle")
        for p in ("I", "II", "III", "IV"):
            if _matches(p, w):
                found.append((rot[0], p, rot, w))
    if not found:
        w = tuple(q.arrow(cycle[k], cycle[(k + 1) % l]) for k in range(l))
        raise UnclassifiedCycle(f"cycle {tuple(cycle)} with weights {w} fits no potential pattern")
    patterns = {p for _, p, _, _ in found}
    assert len(patterns) == 1
    _, p, rot, w = min(found)
    return PotentialTerm(rot, p, w)


def _oriented_chordless_cycles(q: WeightedQuiver) -> list[tuple[int, ...]]:
    n = q.n
    out_adj = [[] for _ in range(n)]
    adjacent = [set() for _ in range(n)]
    for i, j, _ in q.arrows:
        out_adj[i].append(j)
        adjacent[i].add(j)
        adjacent[j].add(i)
    cycles = []

    def extend(path: list[int]):
        start, last = path[0], path[-1]
        for v in sorted(out_adj[last]):
            if v <= start or v in path:
                continue
            # v may touch only the last vertex, and the start only via v -> start
            inner = path[1:-1]
            if any(u in adjacent[v] for u in inner):
                continue
            if start in adjacent[v] and len(path) > 1:
                if q.arrow(v, start) is not None:
                    cycles.append(tuple(path + [v]))
                continue
            extend(path + [v])

    for s in range(n):
        extend([s])
    return cycles


def chordless_cycles(q: WeightedQuiver) -> list[PotentialTerm]:
    """Every chordless oriented cycle of q, classified into patterns I-IV."""
    return [classify_cycle(q, c) for c in _oriented_chordless_cycles(q)]


def with_potential(q: WeightedQuiver) -> WeightedQuiver:
    return q.with_potential(chordless_cycles(q))
