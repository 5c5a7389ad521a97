"""Formal expressions over the bases of free crossed complexes.

Free complexes are infinite, so their elements are carried symbolically:
words in level-1 symbols, products of conjugated level-2 generators, and
integer combinations of word-translated generators for the abelian
levels.  Everything is immutable and hashable; evaluation against a
finite complex happens elsewhere.
"""

from __future__ import annotations

from typing import NamedTuple


class FormalWord:
    """A freely reduced word in indexed symbols.

    Letters are (symbol, sign) pairs with sign +1 or -1; adjacent
    inverse pairs are cancelled on construction.
    """

    __slots__ = ("letters",)

    def __init__(self, letters=()):
        out = []
        for s, e in letters:
            if e not in (1, -1):
                raise ValueError(f"letter sign must be +-1, got {e}")
            if out and out[-1][0] == s and out[-1][1] == -e:
                out.pop()
            else:
                out.append((int(s), int(e)))
        self.letters = tuple(out)

    @classmethod
    def gen(cls, s: int, e: int = 1) -> "FormalWord":
        return cls(((s, e),))

    @classmethod
    def identity(cls) -> "FormalWord":
        return cls()

    def __mul__(self, other: "FormalWord") -> "FormalWord":
        return FormalWord(self.letters + other.letters)

    def inverse(self) -> "FormalWord":
        return FormalWord(tuple((s, -e) for s, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "FormalWord":
        base = self if k >= 0 else self.inverse()
        out = FormalWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def __eq__(self, other):
        return isinstance(other, FormalWord) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        if not self.letters:
            return "1"
        return "*".join(f"s{s}" if e == 1 else f"s{s}^-1" for s, e in self.letters)


class CrossedTerm(NamedTuple):
    """One factor (generator^sign) translated by a level-1 word."""

    gen: int
    sign: int
    conj: FormalWord


class FormalCrossed:
    """An ordered product of conjugated level-2 generators.

    No Peiffer rewriting is attempted; two values compare equal only
    literally.  Triviality of such products is decided elsewhere by
    projecting to the level-1 word and to the abelianisation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple(CrossedTerm(int(g), int(e), w) for g, e, w in terms)
        for t in self.terms:
            if t.sign not in (1, -1):
                raise ValueError("term sign must be +-1")

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "FormalCrossed":
        return cls(((g, e, FormalWord()),))

    def __mul__(self, other: "FormalCrossed") -> "FormalCrossed":
        return FormalCrossed(self.terms + other.terms)

    def inverse(self) -> "FormalCrossed":
        return FormalCrossed(tuple(CrossedTerm(t.gen, -t.sign, t.conj)
                                   for t in reversed(self.terms)))

    def translated(self, w: FormalWord) -> "FormalCrossed":
        return FormalCrossed(tuple(CrossedTerm(t.gen, t.sign, t.conj * w)
                                   for t in self.terms))

    def __eq__(self, other):
        return isinstance(other, FormalCrossed) and self.terms == other.terms

    def __hash__(self):
        return hash(self.terms)

    def __repr__(self):
        if not self.terms:
            return "1"
        return " ".join(f"(b{t.gen}^{t.sign}|{t.conj!r})" for t in self.terms)


class FormalSum:
    """An integer combination of word-translated generators of an
    abelian level: a map (generator, word) -> coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {}
        if coeffs:
            for (g, w), c in dict(coeffs).items():
                if int(c) != 0:
                    self.coeffs[(int(g), w)] = int(c)

    @classmethod
    def gen(cls, g: int) -> "FormalSum":
        return cls({(g, FormalWord()): 1})

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = dict(self.coeffs)
        for k, c in other.coeffs.items():
            out[k] = out.get(k, 0) + c
        return FormalSum(out)

    def __neg__(self) -> "FormalSum":
        return FormalSum({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other: "FormalSum") -> "FormalSum":
        return self + (-other)

    def scaled(self, k: int) -> "FormalSum":
        return FormalSum({key: c * k for key, c in self.coeffs.items()})

    def translated(self, w: FormalWord) -> "FormalSum":
        return FormalSum({(g, u * w): c for (g, u), c in self.coeffs.items()})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*(g{g}|{w!r})" for (g, w), c in sorted(
            self.coeffs.items(), key=lambda kv: (kv[0][0], kv[0][1].letters)))
