"""Numerical monoids: cofinite additive submonoids of N0.

Membership is answered in O(1) through the Apery set with respect to the
smallest generator (computed once, Dijkstra-style, so queries stay cheap for
arbitrarily large elements).  Atoms, divisor sets, factorizations and length
sets are exact enumerations.  Finitely generated Puiseux monoids reduce to
these by clearing denominators.
"""

from __future__ import annotations

import heapq
import math
from typing import Iterable, Sequence

from .errors import InvalidInputError, NotAMemberError, NotCofiniteError
from .factorization import Enumeration, Factorization


class NumericalMonoid:
    """The submonoid of (N0, +) generated by positive integers with gcd 1."""

    __slots__ = ("generators", "multiplicity", "atoms", "frobenius", "_apery")

    def __init__(self, generators: Iterable[int]):
        gens = sorted(set(generators))
        if not gens:
            raise InvalidInputError("at least one generator is required")
        if any((not isinstance(g, int)) or g <= 0 for g in gens):
            raise InvalidInputError(f"generators must be positive integers: {gens}")
        if math.gcd(*gens) != 1:
            raise NotCofiniteError(
                f"gcd{tuple(gens)} != 1: not cofinite in N0 (divide out the gcd first)"
            )
        self.generators: tuple[int, ...] = tuple(gens)
        self.multiplicity: int = gens[0]
        self._apery: tuple[int, ...] = self._compute_apery(gens)
        # largest gap; max Apery element is F + m, so N0 itself gives -1
        self.frobenius: int = max(self._apery) - self.multiplicity
        self.atoms: tuple[int, ...] = tuple(g for g in gens if self._is_minimal(g))

    @staticmethod
    def _compute_apery(gens: Sequence[int]) -> tuple[int, ...]:
        # shortest monoid element in each residue class mod the multiplicity
        m = gens[0]
        dist = [None] * m
        dist[0] = 0
        heap: list[tuple[int, int]] = [(0, 0)]
        while heap:
            v, r = heapq.heappop(heap)
            if dist[r] != v:
                continue
            for g in gens:
                nv = v + g
                nr = nv % m
                if dist[nr] is None or nv < dist[nr]:
                    dist[nr] = nv
                    heapq.heappush(heap, (nv, nr))
        return tuple(dist)  # complete: gcd 1 makes every residue reachable

    def _is_minimal(self, g: int) -> bool:
        # g is a sum of two nonzero elements iff g - h stays in the monoid
        # for some smaller generator h (any summand decomposes into
        # generators, so one generator can always be split off first)
        return not any(
            h < g and self.contains(g - h) for h in self.generators
        )

    def contains(self, x: int) -> bool:
        """True iff x is an element (O(1) via the Apery set)."""
        if x < 0:
            return False
        return x >= self._apery[x % self.multiplicity]

    def apery_set(self, modulus: int | None = None) -> tuple[int, ...]:
        """Smallest element in each residue class mod `modulus` (default: multiplicity)."""
        if modulus is None or modulus == self.multiplicity:
            return tuple(sorted(self._apery))
        if modulus <= 0:
            raise InvalidInputError("modulus must be positive")
        found: dict[int, int] = {}
        x = 0
        while len(found) < modulus:
            if self.contains(x) and (x % modulus) not in found:
                found[x % modulus] = x
            x += 1
        return tuple(sorted(found.values()))

    def gaps(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.frobenius + 1) if not self.contains(x))

    def members_upto(self, bound: int) -> list[int]:
        return [x for x in range(bound + 1) if self.contains(x)]

    def _require_member(self, x: int) -> None:
        if not isinstance(x, int):
            raise InvalidInputError(f"expected an integer, got {x!r}")
        if not self.contains(x):
            raise NotAMemberError(f"{x} is not in {self}")

    def divisors(self, x: int) -> list[int]:
        """All d in the monoid with x - d also in the monoid, ascending."""
        self._require_member(x)
        return [d for d in range(x + 1) if self.contains(d) and self.contains(x - d)]

    def factorizations(self, x: int, max_length: int | None = None) -> Enumeration:
        """Every multiset of atoms summing to x.

        Exponent vectors are explored lexicographically over the ascending
        atom list; results are returned canonically sorted.
        """
        self._require_member(x)
        atoms = self.atoms
        last = len(atoms) - 1
        found: list[Factorization] = []
        pruned = False

        def rec(i: int, remaining: int, count: int, stack: list[tuple[int, int]]) -> None:
            nonlocal pruned
            if remaining == 0:
                found.append(Factorization(stack))
                return
            if not self.contains(remaining):
                return
            g = atoms[i]
            if i == last:
                q, r = divmod(remaining, g)
                if r == 0:
                    if max_length is not None and count + q > max_length:
                        pruned = True
                        return
                    found.append(Factorization(stack + [(g, q)]))
                return
            for c in range(remaining // g + 1):
                if max_length is not None and count + c > max_length:
                    pruned = True
                    break
                stack.append((g, c))
                rec(i + 1, remaining - c * g, count + c, stack)
                stack.pop()

        rec(0, x, 0, [])
        return Enumeration(tuple(sorted(found)), exhaustive=not pruned)

    def length_set(self, x: int) -> frozenset[int]:
        """Factorization lengths of x; finite and nonempty for every member."""
        return self.factorizations(x).lengths()

    def __eq__(self, other) -> bool:
        return isinstance(other, NumericalMonoid) and self.atoms == other.atoms

    def __hash__(self) -> int:
        return hash(self.atoms)

    def __str__(self) -> str:
        return "<" + ",".join(str(g) for g in self.atoms) + ">"

    def __repr__(self) -> str:
        return f"NumericalMonoid({list(self.atoms)})"

    def to_json(self) -> dict:
        return {"generators": list(self.atoms), "frobenius": self.frobenius}
