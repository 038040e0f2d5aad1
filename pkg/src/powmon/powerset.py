"""Finite subsets of Q>=0 under the Minkowski sum.

A FinSet is the element type of the finitary power monoid of a Puiseux
monoid: nonempty, duplicate-free, strictly ascending.  Sets are
ambient-agnostic; whether one lies inside a specific monoid (or inside the
restricted power monoid: contains 0) is checked on demand.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InvalidInputError, WouldGoNegativeError
from .rational import format_rational, parse_rational


class FinSet:
    """A nonempty finite subset of Q>=0, kept sorted and deduplicated."""

    __slots__ = ("elems",)

    def __init__(self, elements: Iterable):
        elems = sorted({Fraction(e) for e in elements})
        if not elems:
            raise InvalidInputError("a power-monoid element is a nonempty set")
        if elems[0] < 0:
            raise InvalidInputError(f"negative element {elems[0]} is outside Q>=0")
        object.__setattr__(self, "elems", tuple(elems))

    @classmethod
    def parse(cls, text: str) -> "FinSet":
        """Parse the brace format "{0, 1/2, 3/4}"."""
        s = text.strip()
        if not (s.startswith("{") and s.endswith("}")):
            raise InvalidInputError(f"set text must be brace-delimited: {text!r}")
        inner = s[1:-1].strip()
        if not inner:
            raise InvalidInputError("a power-monoid element is a nonempty set")
        return cls(parse_rational(p) for p in inner.split(","))

    # -- monoid structure ----------------------------------------------------

    def __add__(self, other: "FinSet") -> "FinSet":
        """Minkowski sum via a k-way merge of shifted copies (exact, ordered)."""
        if not isinstance(other, FinSet):
            return NotImplemented
        small, large = (self, other) if len(self) <= len(other) else (other, self)

        def shifted_copy(s):
            return (s + t for t in large.elems)

        merged = heapq.merge(*(shifted_copy(s) for s in small.elems))
        out = []
        last = None
        for v in merged:
            if v != last:
                out.append(v)
                last = v
        return FinSet(out)

    def __mul__(self, n: int) -> "FinSet":
        """n-fold Minkowski sum; the 0-fold sum is the identity {0}."""
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            raise InvalidInputError("negative fold count")
        acc = FinSet([0])
        for _ in range(n):
            acc = acc + self
        return acc

    __rmul__ = __mul__

    def shift(self, d) -> "FinSet":
        """Translate by d; a downward shift must not pass 0."""
        d = Fraction(d)
        if self.elems[0] + d < 0:
            raise WouldGoNegativeError(
                f"shifting {self} by {format_rational(d)} would go below 0"
            )
        return FinSet(e + d for e in self.elems)

    def normalize(self) -> tuple["FinSet", Fraction]:
        """(self - min, min): the translate containing 0, plus the offset."""
        low = self.elems[0]
        if low == 0:
            return self, Fraction(0)
        return FinSet(e - low for e in self.elems), low

    # -- queries -------------------------------------------------------------

    @property
    def min(self) -> Fraction:
        return self.elems[0]

    @property
    def max(self) -> Fraction:
        return self.elems[-1]

    @property
    def contains_zero(self) -> bool:
        return self.elems[0] == 0

    def is_within(self, monoid) -> bool:
        """True when every element lies in the given Puiseux monoid."""
        return all(monoid.contains(e) for e in self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.elems)

    def __contains__(self, value) -> bool:
        return Fraction(value) in self.elems

    def __eq__(self, other) -> bool:
        return isinstance(other, FinSet) and self.elems == other.elems

    def __hash__(self) -> int:
        return hash(self.elems)

    def __lt__(self, other: "FinSet") -> bool:
        return self.elems < other.elems

    def __le__(self, other: "FinSet") -> bool:
        return self.elems <= other.elems

    def __str__(self) -> str:
        return "{" + ", ".join(format_rational(e) for e in self.elems) + "}"

    def __repr__(self) -> str:
        return f"FinSet({[str(e) for e in self.elems]})"

    def to_json(self) -> list[str]:
        return [format_rational(e) for e in self.elems]


IDENTITY = FinSet([0])


def minkowski_sum(s: FinSet, t: FinSet) -> FinSet:
    return s + t


def size_bound_check(b: FinSet, c: FinSet) -> bool:
    """The cardinality dichotomy of the sum: singletons translate, anything
    larger strictly grows the other summand.  Holds for all inputs."""
    size = len(b + c)
    if len(b) == 1:
        return size == len(c)
    return size > len(c)
