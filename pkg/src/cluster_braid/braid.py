"""Braid words, presentations of weighted quivers with potential, and the
mutation and folding maps acting on generator expressions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .coxeter import CoxeterContext
from .folding import Folding, WeightedQuiver
from .quiver import PotentialTerm, chordless_cycles

__all__ = [
    "BraidWord",
    "Relator",
    "Presentation",
    "GeneratorExpression",
    "QuiverMismatch",
    "braid_relator",
    "alternating",
    "presentation_from_wqp",
    "standard_presentation",
    "theta_sharp",
    "theta_flat",
    "iota_f",
    "coxeter_check",
    "evaluate",
]


class QuiverMismatch(ValueError):
    pass


class BraidWord:
    """Freely reduced word; letter +(i+1) is b_i and -(i+1) its inverse."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = ()):
        stack: list[int] = []
        for x in letters:
            if x == 0:
                raise ValueError("letter 0 is not a generator")
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)
        self.letters = tuple(stack)
        self._hash = None

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> BraidWord:
        x = i + 1 if exp > 0 else -(i + 1)
        return cls([x] * abs(exp))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> BraidWord:
        out = []
        for i, e in pairs:
            if e not in (1, -1):
                raise ValueError("exponents must be +1 or -1")
            out.append(i + 1 if e > 0 else -(i + 1))
        return cls(out)

    @classmethod
    def parse(cls, text: str, labels: Sequence[str] | None = None) -> BraidWord:
        """Parse ``"1 2 -1"``, ``"1 2^-1"`` or ``"b1 b2^-1"``; ``e`` is the identity.

        Tokens are 1-based indices or labels, optionally prefixed by ``b``.
        """
        out = []
        for tok in text.replace(",", " ").split():
            if tok in ("e", "id"):
                continue
            inv = False
            if tok.endswith("^-1"):
                tok, inv = tok[:-3], True
            elif tok.startswith("-"):
                tok, inv = tok[1:], True
            if tok.startswith("b") and not (labels is not None and tok in labels):
                tok = tok[1:]
            if labels is not None and tok in labels:
                i = list(labels).index(tok)
            else:
                i = int(tok) - 1
            if i < 0:
                raise ValueError(f"bad generator {tok!r}")
            out.append(-(i + 1) if inv else i + 1)
        return cls(out)

    def pairs(self) -> list[tuple[int, int]]:
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in self.letters]

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def inverse(self) -> BraidWord:
        return BraidWord(-x for x in reversed(self.letters))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(base.letters * abs(k))

    def conj(self, w: BraidWord) -> BraidWord:
        """self^w = w^-1 self w."""
        return w.inverse() * self * w

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, BraidWord) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def max_generator(self) -> int:
        return max((abs(x) for x in self.letters), default=0)

    def to_text(self, labels: Sequence[str] | None = None) -> str:
        if not self.letters:
            return "e"
        out = []
        for i, e in self.pairs():
            name = labels[i] if labels is not None else str(i + 1)
            out.append(f"b{name}" + ("^-1" if e < 0 else ""))
        return " ".join(out)

    def __repr__(self) -> str:
        return f"BraidWord({self.to_text()!r})"


def alternating(a, b, m: int):
    """a b a ... with m factors."""
    acc = None
    for k in range(m):
        x = a if k % 2 == 0 else b
        acc = x if acc is None else acc * x
    return acc


def braid_relator(a, b, m: int):
    """(a b a ...)(b a b ...)^-1, m factors on each side."""
    return alternating(a, b, m) * alternating(b, a, m).inverse()


@dataclass(frozen=True)
class Relator:
    word: BraidWord
    provenance: str  # "edge", "commute" or a potential pattern I-IV
    text: str

    def to_json(self, labels: Sequence[str] | None = None) -> dict:
        return {"word": self.word.to_text(labels), "provenance": self.provenance, "relation": self.text}


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[Relator, ...]

    def to_json(self) -> dict:
        return {
            "generators": [f"b{g}" for g in self.generators],
            "relators": [r.to_json(self.generators) for r in self.relators],
        }

    def to_text(self) -> str:
        gens = ", ".join(f"b{g}" for g in self.generators)
        rels = ", ".join(r.text for r in self.relators)
        return f"< {gens} | {rels} >"


class GeneratorExpression:
    """Images of the current generators as elements of a fixed ambient group.

    Elements only need ``*`` and ``inverse()``, so both braid words and
    normal forms can be transported.
    """

    __slots__ = ("images",)

    def __init__(self, images: Sequence):
        self.images = tuple(images)

    @classmethod
    def standard(cls, n: int) -> GeneratorExpression:
        return cls(BraidWord.gen(i) for i in range(n))

    def __getitem__(self, i: int):
        return self.images[i]

    def __len__(self) -> int:
        return len(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, GeneratorExpression) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def map(self, fn: Callable) -> GeneratorExpression:
        return GeneratorExpression(fn(x) for x in self.images)

    def __repr__(self) -> str:
        return f"GeneratorExpression({list(self.images)!r})"


# --- presentations -----------------------------------------------------------


def _name(labels: Sequence[str], i: int) -> str:
    return f"b{labels[i]}"


def _conj_text(labels, a: int, conj: Sequence[int]) -> str:
    return f"{_name(labels, a)}^{{{' '.join(_name(labels, c) for c in conj)}}}"


def _conj_word(a: int, conj: Sequence[int]) -> BraidWord:
    w = BraidWord([c + 1 for c in conj])
    return BraidWord.gen(a).conj(w)


def _term_relators(t: PotentialTerm, labels) -> list[Relator]:
    c = t.cycle
    b = BraidWord.gen
    if t.pattern == "I":
        conj = [c[k] for k in range(len(c) - 1, 1, -1)]  # b_l b_{l-1} ... b_3
        word = braid_relator(b(c[1]), _conj_word(c[0], conj), 2)
        text = f"Co({_name(labels, c[1])}, {_conj_text(labels, c[0], conj)})"
        return [Relator(word, "I", text)]
    if t.pattern == "II":
        word = braid_relator(b(c[0]), _conj_word(c[2], [c[1]]), 2)
        return [Relator(word, "II", f"Co({_name(labels, c[0])}, {_conj_text(labels, c[2], [c[1]])})")]
    if t.pattern == "III":
        conj = [c[0], c[3]]
        word = braid_relator(b(c[2]), _conj_word(c[1], conj), 2)
        return [Relator(word, "III", f"Co({_name(labels, c[2])}, {_conj_text(labels, c[1], conj)})")]
    if t.pattern == "IV":
        w1 = braid_relator(b(c[0]), _conj_word(c[1], [c[2], c[1]]), 2)
        w2 = braid_relator(b(c[0]), _conj_word(c[2], [c[1]]), 3)
        return [
            Relator(w1, "IV", f"Co({_name(labels, c[0])}, {_conj_text(labels, c[1], [c[2], c[1]])})"),
            Relator(w2, "IV", f"Br({_name(labels, c[0])}, {_conj_text(labels, c[2], [c[1]])})"),
        ]
    raise ValueError(f"unknown pattern {t.pattern!r}")


def presentation_from_wqp(
    q: WeightedQuiver,
    terms: Sequence[PotentialTerm] | None = None,
    labels: Sequence[str] | None = None,
) -> Presentation:
    """Presentation of the braid group of a weighted quiver with potential.

    ``terms`` defaults to ``q.potential`` when set and otherwise to all
    chordless cycles of q.  Commutation relators for non-adjacent pairs are
    listed explicitly.
    """
    labels = tuple(labels) if labels is not None else tuple(str(i + 1) for i in range(q.n))
    if terms is None:
        terms = q.potential if q.potential else chordless_cycles(q)
    rels = []
    for i in range(q.n):
        for j in range(i + 1, q.n):
            m = q.weight(i, j)
            a, c = (i, j)
            if q.arrow(j, i) is not None:
                a, c = j, i  # follow the arrow direction in the text
            word = braid_relator(BraidWord.gen(a), BraidWord.gen(c), m)
            tag = "commute" if m == 2 else "edge"
            head = "Co" if m == 2 else ("Br" if m == 3 else f"Br^{m}")
            rels.append(Relator(word, tag, f"{head}({_name(labels, a)}, {_name(labels, c)})"))
    for t in terms:
        rels.extend(_term_relators(t, labels))
    for r in rels:
        if not r.word.letters:
            raise ValueError(f"relator {r.text} is freely trivial")
    return Presentation(labels, tuple(rels))


def standard_presentation(q: WeightedQuiver, labels: Sequence[str] | None = None) -> Presentation:
    """Presentation with zero potential (the Artin group of the underlying graph)."""
    return presentation_from_wqp(q, (), labels)


# --- mutation and folding maps -------------------------------------------------


def _check_mutation(i: int, q_before: WeightedQuiver, q_after: WeightedQuiver) -> None:
    if q_before.n != q_after.n:
        raise QuiverMismatch("quivers of different rank")
    for j in range(q_before.n):
        if j == i:
            continue
        if q_after.arrow(i, j) != q_before.arrow(j, i) or q_after.arrow(j, i) != q_before.arrow(i, j):
            raise QuiverMismatch(f"arrows at {i} are not reversed between the two quivers")


def theta_sharp(expr: GeneratorExpression, i: int, q_before: WeightedQuiver, q_after: WeightedQuiver, check: bool = True) -> GeneratorExpression:
    """Transport along the mutation at i: b'_j -> b_i b_j b_i^-1 if i -> j in q_after."""
    if check:
        _check_mutation(i, q_before, q_after)
    ei = expr[i]
    ei_inv = ei.inverse()
    return GeneratorExpression(
        ei * e * ei_inv if j != i and q_after.arrow(i, j) is not None else e for j, e in enumerate(expr.images)
    )


def theta_flat(expr: GeneratorExpression, i: int, q_before: WeightedQuiver, q_after: WeightedQuiver, check: bool = True) -> GeneratorExpression:
    """Transport along the mutation at i: b'_j -> b_i^-1 b_j b_i if j -> i in q_after."""
    if check:
        _check_mutation(i, q_before, q_after)
    ei = expr[i]
    ei_inv = ei.inverse()
    return GeneratorExpression(
        ei_inv * e * ei if j != i and q_after.arrow(j, i) is not None else e for j, e in enumerate(expr.images)
    )


def iota_f(f: Folding, w: BraidWord) -> BraidWord:
    """Substitute each Delta-generator by the product over its fiber (ascending order)."""
    images = [[k + 1 for k in fib] for fib in f.fibers]
    out = []
    for x in w.letters:
        fib = images[abs(x) - 1]
        out.extend(fib if x > 0 else [-k for k in reversed(fib)])
    return BraidWord(out)


def evaluate(word: BraidWord, images: Sequence, one):
    """Image of a word under generator -> images[i] in any group."""
    acc = one
    inv_cache: dict[int, object] = {}
    for x in word.letters:
        i = abs(x) - 1
        if x > 0:
            acc = acc * images[i]
        else:
            if i not in inv_cache:
                inv_cache[i] = images[i].inverse()
            acc = acc * inv_cache[i]
    return acc


def coxeter_check(p: Presentation, ctx: CoxeterContext, images: Sequence | None = None) -> bool:
    """True iff every relator is trivial in W under b_i -> s_i (or ``images``).

    ``images`` may hold braid words (mapped letterwise to reflections) or
    group elements of ``ctx``.
    """
    if images is None:
        imgs = ctx.gens
    else:
        imgs = [evaluate(x, ctx.gens, ctx.identity) if isinstance(x, BraidWord) else x for x in images]
    return all(evaluate(r.word, imgs, ctx.identity).is_identity() for r in p.relators)
