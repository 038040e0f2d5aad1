# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels: same contract as masks_py, universes <= 64 bits."""

from libc.stdint cimport uint64_t


def bit_positions(mask):
    cdef uint64_t m = <uint64_t> mask
    cdef list out = []
    cdef int pos = 0
    while m:
        if m & 1:
            out.append(pos)
        m >>= 1
        pos += 1
    return out


def sumset(a, b):
    cdef uint64_t ua = <uint64_t> a
    cdef uint64_t ub = <uint64_t> b
    cdef uint64_t out = 0
    cdef int pos = 0
    while ub:
        if ub & 1:
            out |= ua << pos
        ub >>= 1
        pos += 1
    return out


cdef void _cover(
    int i, int k, uint64_t covered, uint64_t chosen, uint64_t B,
    uint64_t* suffix, uint64_t* shifted, uint64_t* cbits,
    bint skip_c_unit, bint first_only, uint64_t A, list results,
) noexcept:
    if first_only and len(results) > 0:
        return
    if (covered | suffix[i]) != B:
        return
    if i == k:
        if covered == B and not (skip_c_unit and chosen == 1):
            results.append((A, chosen))
        return
    _cover(i + 1, k, covered | shifted[i], chosen | cbits[i], B,
           suffix, shifted, cbits, skip_c_unit, first_only, A, results)
    _cover(i + 1, k, covered, chosen, B,
           suffix, shifted, cbits, skip_c_unit, first_only, A, results)


def pair_search(B, cand_a, cand_c,
                skip_a_unit=False, skip_c_unit=False, first_only=False):
    """See masks_py.pair_search; identical semantics for universes <= 64 bits."""
    cdef uint64_t uB = <uint64_t> B
    cdef uint64_t ua = <uint64_t> cand_a
    cdef uint64_t uc = <uint64_t> cand_c
    cdef bint f_only = bool(first_only)
    cdef bint sk_a = bool(skip_a_unit)
    cdef bint sk_c = bool(skip_c_unit)
    cdef list results = []
    cdef uint64_t pool = (uB & ua) & ~(<uint64_t> 1)
    cdef uint64_t sub = pool
    cdef uint64_t A, rest, s
    cdef uint64_t shifted[65]
    cdef uint64_t cbits[65]
    cdef uint64_t suffix[66]
    cdef int k, i, c, top_a

    while True:
        A = sub | 1
        if not (sk_a and A == 1):
            top_a = 63
            while top_a > 0 and not (A >> top_a) & 1:
                top_a -= 1
            rest = (uB & uc) & ~(<uint64_t> 1)
            k = 0
            c = 0
            while rest:
                if rest & 1 and top_a + c <= 63:
                    s = A << c
                    if (s | uB) == uB:
                        shifted[k] = s
                        cbits[k] = (<uint64_t> 1) << c
                        k += 1
                rest >>= 1
                c += 1
            suffix[k] = 0
            for i in range(k - 1, -1, -1):
                suffix[i] = suffix[i + 1] | shifted[i]
            _cover(0, k, A, 1, uB, suffix, shifted, cbits, sk_c, f_only, A, results)
            if f_only and len(results) > 0:
                return results
        if sub == 0:
            break
        sub = (sub - 1) & pool
    return results
