"""Pure-Python bitmask kernels for sumset decomposition.

Finite sets of scaled integers are bitmasks (bit i = value i).  These three
routines are the hot inner loops of the decomposition machinery; the
compiled twin in `_masks_c` implements the same contract for universes of
up to 64 bits, while this module works at any size.
"""

from __future__ import annotations


def bit_positions(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def sumset(a: int, b: int) -> int:
    """Minkowski sum of two bitmask sets: OR of a shifted by every bit of b."""
    out = 0
    while b:
        low = b & -b
        out |= a << (low.bit_length() - 1)
        b ^= low
    return out


def pair_search(
    B: int,
    cand_a: int,
    cand_c: int,
    skip_a_unit: bool = False,
    skip_c_unit: bool = False,
    first_only: bool = False,
) -> list[tuple[int, int]]:
    """All ordered pairs (A, C) with bit0 in both, sumset(A, C) == B,
    elements of A allowed by cand_a and of C by cand_c.

    skip_*_unit drops pairs whose corresponding side is {0} (mask 1); this
    is how trivial decompositions are excluded when only a witness of
    reducibility is wanted.
    """
    results: list[tuple[int, int]] = []
    pool = (B & cand_a) & ~1
    # submasks of pool, each together with bit0, largest first
    sub = pool
    while True:
        A = sub | 1
        if not (skip_a_unit and A == 1):
            # candidate shifts: c in B with (A << c) inside B
            cstars = []
            shifted = []
            rest = (B & cand_c) & ~1
            while rest:
                low = rest & -rest
                c = low.bit_length() - 1
                s = A << c
                if s | B == B:
                    cstars.append(c)
                    shifted.append(s)
                rest ^= low
            k = len(cstars)
            suffix = [0] * (k + 1)
            for i in range(k - 1, -1, -1):
                suffix[i] = suffix[i + 1] | shifted[i]

            # depth-first over subsets of the candidate shifts; c = 0 is
            # forced (bit0 of C), contributing A itself to the cover
            stack = [(0, A, 1)]
            while stack:
                i, covered, chosen = stack.pop()
                if covered | suffix[i] != B:
                    continue
                if i == k:
                    if covered == B and not (skip_c_unit and chosen == 1):
                        results.append((A, chosen))
                        if first_only:
                            return results
                    continue
                stack.append((i + 1, covered, chosen))
                stack.append((i + 1, covered | shifted[i], chosen | (1 << cstars[i])))
        if sub == 0:
            break
        sub = (sub - 1) & pool
    return results
