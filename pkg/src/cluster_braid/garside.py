"""Word problems: left-greedy Garside normal forms in spherical Artin groups,
and the central-extension normal form of <x, y | x^2 = y^m>.

A normal form is Delta^k s_1 ... s_r with every s_t a simple element
(a proper nontrivial element of W, lifted to the braid monoid) and every
consecutive pair left-weighted: D_L(s_{t+1}) is contained in D_R(s_t).
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .braid import BraidWord
from .coxeter import CoxeterContext, CoxeterGraph, GroupElement, reflection_representation, standard_graph

__all__ = [
    "ArtinGroup",
    "NormalForm",
    "WordTooLong",
    "artin_group",
    "normal_form",
    "equal",
    "TorusWord",
    "torus_equal",
]

DEFAULT_MAX_LETTERS = 10_000


class WordTooLong(RuntimeError):
    pass


class ArtinGroup:
    """Spherical Artin group of a finite Coxeter graph, with Garside arithmetic."""

    def __init__(self, ctx: CoxeterContext, max_letters: int = DEFAULT_MAX_LETTERS):
        self.ctx = ctx
        self.rank = ctx.rank
        self.max_letters = max_letters
        self.w0 = ctx.w0
        # inverse of a generator: Delta^-1 times the lift of w0 s
        self._inv_simple = [ctx.w0.mul_gen_right(i) for i in range(ctx.rank)]
        self._tau_cache: dict[bytes, GroupElement] = {}

    @property
    def identity(self) -> NormalForm:
        return NormalForm(self, 0, ())

    def delta(self, k: int = 1) -> NormalForm:
        return NormalForm(self, k, ())

    def generator(self, i: int) -> NormalForm:
        return NormalForm(self, 0, (self.ctx.gens[i],))

    def tau(self, x: GroupElement) -> GroupElement:
        t = self._tau_cache.get(x.key)
        if t is None:
            t = self.w0 * x * self.w0
            if len(self._tau_cache) < 100_000:
                self._tau_cache[x.key] = t
        return t

    # core: right multiplication of a left-weighted list by one simple ---------
    def _append(self, simples: list[GroupElement], b: GroupElement) -> int:
        """Append b and restore left-weightedness in place; returns Delta count absorbed."""
        if b.is_identity():
            return 0
        ctx = self.ctx
        n, N = ctx.rank, ctx.npos
        gens = ctx.gen_arrays
        simples.append(b)
        t = len(simples) - 1
        while t > 0:
            # move s from the front of y to the end of x while s is a left
            # descent of y but not a right descent of x
            xp, yi = simples[t - 1].perm, simples[t].inv
            changed = False
            while True:
                movable = (yi[:n] >= N) & (xp[:n] < N)
                s = int(movable.argmax())
                if not movable[s]:
                    break
                g = gens[s]
                xp = xp.take(g)
                yi = yi.take(g)
                changed = True
            if not changed:
                break
            simples[t - 1] = GroupElement(ctx, perm=xp)
            simples[t] = GroupElement(ctx, inv=yi)
            t -= 1
        while simples and simples[-1].is_identity():
            simples.pop()
        absorbed = 0
        w0key = self.w0.key
        while absorbed < len(simples) and simples[absorbed].key == w0key:
            absorbed += 1
        if absorbed:
            del simples[:absorbed]
        return absorbed

    def _shift(self, simples: list[GroupElement], k: int) -> list[GroupElement]:
        """simples moved across Delta^k: x Delta^k = Delta^k tau^k(x)."""
        if k % 2 == 0:
            return simples
        return [self.tau(x) for x in simples]

    def normal_form(self, word: BraidWord) -> NormalForm:
        return self.normal_form_letters(word.letters)

    def normal_form_letters(self, letters: Sequence[int]) -> NormalForm:
        """Normal form of a letter sequence that need not be freely reduced."""
        if len(letters) > self.max_letters:
            raise WordTooLong(f"word of {len(letters)} letters exceeds the bound {self.max_letters}")
        k = 0
        simples: list[GroupElement] = []
        gens = self.ctx.gens
        for x in letters:
            i = abs(x) - 1
            if i >= self.rank:
                raise ValueError(f"generator {i + 1} out of range")
            if x > 0:
                k += self._append(simples, gens[i])
            else:
                k -= 1
                simples = self._shift(simples, 1)
                k += self._append(simples, self._inv_simple[i])
        return NormalForm(self, k, tuple(simples))

    def equal(self, u: BraidWord, v: BraidWord) -> bool:
        return self.normal_form(u) == self.normal_form(v)

    def is_trivial(self, w: BraidWord) -> bool:
        return self.normal_form(w).is_identity()


class NormalForm:
    __slots__ = ("group", "delta_power", "simples", "_key")

    def __init__(self, group: ArtinGroup, delta_power: int, simples: Sequence[GroupElement]):
        self.group = group
        self.delta_power = delta_power
        self.simples = tuple(simples)
        self._key = None

    @property
    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.delta_power, tuple(s.key for s in self.simples))
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, NormalForm) and other.group is self.group and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.simples

    def __mul__(self, other: NormalForm) -> NormalForm:
        g = self.group
        simples = g._shift(list(self.simples), other.delta_power)
        k = self.delta_power + other.delta_power
        for s in other.simples:
            k += g._append(simples, s)
        return NormalForm(g, k, tuple(simples))

    def inverse(self) -> NormalForm:
        # (Delta^k x_1 ... x_r)^-1 = x_r^-1 ... x_1^-1 Delta^-k, x^-1 = Delta^-1 lift(w0 x^-1)
        g = self.group
        k = 0
        simples: list[GroupElement] = []
        for x in reversed(self.simples):
            k -= 1
            simples = g._shift(simples, 1)
            k += g._append(simples, g.w0 * x.inverse())
        simples = g._shift(simples, -self.delta_power)
        return NormalForm(g, k - self.delta_power, tuple(simples))

    def to_word(self) -> BraidWord:
        w0 = self.group.ctx.w0_word
        k = self.delta_power
        letters = [i + 1 for i in w0] * k if k >= 0 else [-(i + 1) for i in reversed(w0)] * (-k)
        for s in self.simples:
            letters.extend(i + 1 for i in s.reduced_word())
        return BraidWord(letters)

    def word_length(self) -> int:
        return abs(self.delta_power) * len(self.group.ctx.w0_word) + sum(s.length for s in self.simples)

    def to_json(self) -> dict:
        return {"delta_power": self.delta_power, "simples": [[i + 1 for i in s.reduced_word()] for s in self.simples]}

    def __repr__(self) -> str:
        return f"NormalForm(Delta^{self.delta_power}, {[list(s.reduced_word()) for s in self.simples]})"


_GROUPS: dict[CoxeterGraph, ArtinGroup] = {}


def artin_group(g: CoxeterGraph | CoxeterContext | str) -> ArtinGroup:
    """Cached Artin group for a graph, context or type label."""
    if isinstance(g, str):
        g = standard_graph(g)
    ctx = g if isinstance(g, CoxeterContext) else reflection_representation(g)
    grp = _GROUPS.get(ctx.graph)
    if grp is None or grp.ctx is not ctx:
        grp = _GROUPS[ctx.graph] = ArtinGroup(ctx)
    return grp


def normal_form(w: BraidWord, ctx: CoxeterContext | ArtinGroup) -> NormalForm:
    grp = ctx if isinstance(ctx, ArtinGroup) else artin_group(ctx)
    return grp.normal_form(w)


def equal(u: BraidWord, v: BraidWord, ctx: CoxeterContext | ArtinGroup) -> bool:
    grp = ctx if isinstance(ctx, ArtinGroup) else artin_group(ctx)
    return grp.equal(u, v)


# --- <x, y | x^2 = y^m> ----------------------------------------------------------


class TorusWord:
    """Element z^k * (alternating syllables x, y^e with 1 <= e < m), z = x^2 = y^m central."""

    __slots__ = ("m", "k", "syllables")

    def __init__(self, m: int, k: int = 0, syllables: Sequence[tuple[str, int]] = ()):
        if m < 2:
            raise ValueError("m must be at least 2")
        self.m = m
        self.k = k
        self.syllables = tuple(syllables)

    @classmethod
    def parse(cls, word: str | Iterable[tuple[str, int]], m: int) -> TorusWord:
        """Letters x, y and inverses X, Y (or pairs like ("x", -1))."""
        out = cls(m)
        if isinstance(word, str):
            items = []
            for ch in word.replace(" ", ""):
                if ch not in "xyXY":
                    raise ValueError(f"bad letter {ch!r}")
                items.append((ch.lower(), 1 if ch.islower() else -1))
        else:
            items = list(word)
        for g, e in items:
            out = out._mul_letter(g, e)
        return out

    def _mul_letter(self, g: str, e: int) -> TorusWord:
        k, syl = self.k, list(self.syllables)
        m = self.m
        if g == "x":
            if e < 0:
                k -= 1  # x^-1 = x z^-1
            if syl and syl[-1][0] == "x":
                syl.pop()
                k += 1
            else:
                syl.append(("x", 1))
        elif g == "y":
            if e > 0:
                add = 1
            else:
                add, k = m - 1, k - 1  # y^-1 = y^(m-1) z^-1
            if syl and syl[-1][0] == "y":
                tot = syl.pop()[1] + add
            else:
                tot = add
            if tot >= m:
                tot -= m
                k += 1
            if tot:
                syl.append(("y", tot))
        else:
            raise ValueError(f"unknown generator {g!r}")
        return TorusWord(m, k, syl)

    def __mul__(self, other: TorusWord) -> TorusWord:
        out = self
        z = other.k
        for g, e in other.syllables:
            for _ in range(e):
                out = out._mul_letter(g, 1)
        return TorusWord(self.m, out.k + z, out.syllables)

    def inverse(self) -> TorusWord:
        out = TorusWord(self.m)
        for g, e in reversed(self.syllables):
            for _ in range(e):
                out = out._mul_letter(g, -1)
        return TorusWord(self.m, out.k - self.k, out.syllables)

    def __pow__(self, n: int) -> TorusWord:
        base = self if n >= 0 else self.inverse()
        out = TorusWord(self.m)
        for _ in range(abs(n)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TorusWord)
            and (self.m, self.k, self.syllables) == (other.m, other.k, other.syllables)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.k, self.syllables))

    def __repr__(self) -> str:
        body = "".join(g if e == 1 else f"{g}^{e}" for g, e in self.syllables)
        return f"TorusWord(m={self.m}, z^{self.k} {body or '1'})"


def torus_equal(u, v, m: int) -> bool:
    """Equality of two words in <x, y | x^2 = y^m>."""
    a = u if isinstance(u, TorusWord) else TorusWord.parse(u, m)
    b = v if isinstance(v, TorusWord) else TorusWord.parse(v, m)
    return a == b
