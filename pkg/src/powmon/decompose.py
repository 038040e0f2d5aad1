"""Decomposing finite sets into Minkowski summands over an ambient monoid.

Everything is reduced to bitmask arithmetic over scaled integers: a FinSet
whose elements lie in the ambient monoid M becomes a mask (bit i = scaled
value i), the members of M up to the working bound become the candidate
mask, and decompositions are found by the kernel's pair search.  Atomhood,
full factorization enumeration and length sets are built on top, with
memoization shared per ambient (the corpus sweeps revisit the same
normalized cofactors constantly).

Restricted mode works inside the restricted power monoid (every element
contains 0); unrestricted mode allows singleton factors {a} and handles
min(B) > 0 via divisor splits of min(B) in M.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInputError, NotAMemberError, UnsupportedAmbientError
from .factorization import Enumeration, Factorization
from .powerset import FinSet
from ._kernels import kernel_for
from .puiseux import PuiseuxMonoid

# Hard bound on the scaled universe (bits); beyond this the ambient's
# denominators are too large for set-level work at desk scale.
UNIVERSE_LIMIT = 4096


@dataclass(frozen=True)
class Decomposition:
    """An unordered two-summand decomposition; left <= right canonically."""

    left: FinSet
    right: FinSet

    @property
    def trivial(self) -> bool:
        return len(self.left) == 1 and self.left.min == 0 or (
            len(self.right) == 1 and self.right.min == 0
        )

    def __lt__(self, other: "Decomposition") -> bool:
        return (self.left, self.right) < (other.left, other.right)

    def __str__(self) -> str:
        return f"{self.left} + {self.right}"

    def to_json(self) -> dict:
        return {
            "left": self.left.to_json(),
            "right": self.right.to_json(),
            "trivial": self.trivial,
        }


@dataclass(frozen=True)
class AtomCheck:
    is_atom: bool
    witness: Decomposition | None

    def to_json(self) -> dict:
        return {
            "is_atom": self.is_atom,
            "witness": None if self.witness is None else self.witness.to_json(),
        }


@dataclass(frozen=True)
class PowerMonoidView:
    """A handle naming the (restricted) power monoid of an ambient monoid."""

    ambient: PuiseuxMonoid
    restricted: bool = False

    def __str__(self) -> str:
        marker = "P_fin,0" if self.restricted else "P_fin"
        return f"{marker}({self.ambient})"


class _Engine:
    """Mask machinery and memo tables for one ambient monoid."""

    def __init__(self, monoid: PuiseuxMonoid, kernel=None):
        if monoid.numerical is None:
            raise UnsupportedAmbientError(
                f"set-level operations need member enumeration; {monoid} has no Apery backend"
            )
        self.monoid = monoid
        self.numerical = monoid.numerical
        self.member_mask = 0
        self.built = 0
        self.atom_ints = set(self.numerical.atoms)
        self._kernel_override = kernel  # tests and benchmarks pin a backend
        # memo writes are idempotent (pure results), so only the universe
        # extension needs a lock: it read-modify-writes member_mask
        self._grow_lock = threading.Lock()
        self._factor_memo: dict = {}
        self._atom_memo: dict = {}

    def ensure(self, bits: int) -> None:
        if bits > UNIVERSE_LIMIT:
            raise UnsupportedAmbientError(
                f"scaled universe of {bits} bits exceeds the {UNIVERSE_LIMIT}-bit desk-scale bound"
            )
        if bits <= self.built:
            return
        with self._grow_lock:
            for i in range(self.built, bits):
                if self.numerical.contains(i):
                    self.member_mask |= 1 << i
            self.built = bits

    # -- FinSet <-> mask ------------------------------------------------------

    def to_mask(self, b: FinSet) -> int:
        mask = 0
        for e in b.elems:
            n = self.monoid.to_scaled(e)
            if n is None or not self.numerical.contains(n):
                raise NotAMemberError(f"{e} is not in the ambient {self.monoid}")
            mask |= 1 << n
        self.ensure(mask.bit_length())
        return mask

    def to_finset(self, mask: int) -> FinSet:
        scale = self.monoid.scale
        out = []
        while mask:
            low = mask & -mask
            out.append(Fraction(low.bit_length() - 1) / scale)
            mask ^= low
        return FinSet(out)

    # -- pair decompositions ---------------------------------------------------

    def _splits(self, bmask: int, restricted: bool) -> list[tuple[int, int]]:
        low = (bmask & -bmask).bit_length() - 1
        if restricted:
            if low != 0:
                raise InvalidInputError("restricted elements must contain 0")
            return [(0, 0)]
        return [(d, low - d) for d in self.numerical.divisors(low)]

    def pair_decompositions(
        self, bmask: int, restricted: bool, nontrivial_only: bool = False,
        first_only: bool = False,
    ) -> list[tuple[int, int]]:
        """Unordered pairs of true-value masks (canonical: smaller int first)."""
        low = (bmask & -bmask).bit_length() - 1
        b0 = bmask >> low
        kern = self._kernel_override or kernel_for(self.built)
        seen: set[tuple[int, int]] = set()
        for da, dc in self._splits(bmask, restricted):
            cand_a = self.member_mask >> da
            cand_c = self.member_mask >> dc
            found = kern.pair_search(
                b0, cand_a, cand_c,
                skip_a_unit=nontrivial_only and da == 0,
                skip_c_unit=nontrivial_only and dc == 0,
                first_only=first_only,
            )
            for a0, c0 in found:
                a, c = a0 << da, c0 << dc
                pair = (a, c) if a <= c else (c, a)
                seen.add(pair)
                if first_only:
                    return [pair]
        return sorted(seen)

    # -- atomhood ---------------------------------------------------------------

    def atom_witness(self, bmask: int, restricted: bool):
        """None when bmask is an atom; otherwise one nontrivial pair."""
        found = self.pair_decompositions(
            bmask, restricted, nontrivial_only=True, first_only=True
        )
        return found[0] if found else None

    def is_atom(self, bmask: int, restricted: bool) -> bool:
        key = (bmask, restricted)
        hit = self._atom_memo.get(key)
        if hit is None:
            hit = bmask != 1 and self.atom_witness(bmask, restricted) is None
            self._atom_memo[key] = hit
        return hit

    # -- factorization enumeration ------------------------------------------------

    def factorizations(
        self, bmask: int, restricted: bool, budget: int | None = None
    ) -> tuple[frozenset, bool]:
        """(set of sorted atom-mask tuples, exhaustive flag)."""
        key = (bmask, restricted, budget)
        hit = self._factor_memo.get(key)
        if hit is not None:
            return hit
        if bmask == 1:
            result: tuple[frozenset, bool] = (frozenset({()}), True)
            self._factor_memo[key] = result
            return result
        if budget is not None and budget <= 0:
            result = (frozenset(), False)
            self._factor_memo[key] = result
            return result
        out: set[tuple[int, ...]] = set()
        exhaustive = True
        for x, y in self.pair_decompositions(bmask, restricted):
            for a, c in ((x, y), (y, x)):
                if a == 1 or not self.is_atom(a, restricted):
                    continue
                inner, inner_ok = self.factorizations(
                    c, restricted, None if budget is None else budget - 1
                )
                exhaustive = exhaustive and inner_ok
                for z in inner:
                    out.add(tuple(sorted(z + (a,))))
        result = (frozenset(out), exhaustive)
        self._factor_memo[key] = result
        return result


_ENGINES: dict[PuiseuxMonoid, _Engine] = {}


def engine_for(monoid: PuiseuxMonoid) -> _Engine:
    eng = _ENGINES.get(monoid)
    if eng is None:
        eng = _ENGINES[monoid] = _Engine(monoid)
    return eng


def _prepared(b: FinSet, monoid: PuiseuxMonoid, restricted: bool) -> tuple[_Engine, int]:
    if restricted and not b.contains_zero:
        raise InvalidInputError(f"{b} is outside the restricted power monoid: 0 missing")
    eng = engine_for(monoid)
    return eng, eng.to_mask(b)


def decompositions(b: FinSet, monoid: PuiseuxMonoid) -> tuple[Decomposition, ...]:
    """Every unordered pair (A, C) of sets over the ambient with A + C = B,
    trivial pairs included."""
    eng, bmask = _prepared(b, monoid, restricted=False)
    pairs = eng.pair_decompositions(bmask, restricted=False)
    decos = [Decomposition(eng.to_finset(a), eng.to_finset(c)) for a, c in pairs]
    return tuple(sorted(decos))


def is_atom(b: FinSet, monoid: PuiseuxMonoid, restricted: bool = False) -> AtomCheck:
    """Atomhood of B in the (restricted) power monoid, with a reducibility
    witness when B is not an atom."""
    eng, bmask = _prepared(b, monoid, restricted)
    if bmask == 1:
        return AtomCheck(False, None)  # the identity is not an atom
    witness = eng.atom_witness(bmask, restricted)
    if witness is None:
        return AtomCheck(True, None)
    a, c = witness
    left, right = sorted((eng.to_finset(a), eng.to_finset(c)))
    return AtomCheck(False, Decomposition(left, right))


def set_factorizations(
    b: FinSet,
    monoid: PuiseuxMonoid,
    restricted: bool = False,
    max_length: int | None = None,
) -> Enumeration:
    """All factorizations of B into atoms of the (restricted) power monoid."""
    eng, bmask = _prepared(b, monoid, restricted)
    raw, exhaustive = eng.factorizations(bmask, restricted, max_length)
    items = tuple(
        sorted(Factorization.from_parts(eng.to_finset(m) for m in z) for z in raw)
    )
    return Enumeration(items, exhaustive=exhaustive)


def set_length_set(b: FinSet, monoid: PuiseuxMonoid, restricted: bool = False) -> frozenset[int]:
    return set_factorizations(b, monoid, restricted).lengths()


def divisor_closure(b: FinSet, monoid: PuiseuxMonoid) -> tuple[Fraction, ...]:
    """All monoid elements dividing some element of B: the finite pool from
    which every atom dividing B draws its entries."""
    out: set[Fraction] = set()
    for e in b.elems:
        out.update(monoid.divisors(e))
    return tuple(sorted(out))
