"""Exact arithmetic on nonnegative rationals.

Values are `fractions.Fraction` instances (arbitrary-precision, always in
lowest terms), re-exported here as `Rational`.  This module adds the pieces
the monoid machinery needs on top of the stdlib type: validated reduction,
p-adic valuations, deterministic primality, prime search, partial
subtraction on Q>=0, and the "a/b" text format.

No floating point is used anywhere in the package.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InvalidInputError, UndefinedValuationError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def reduce(num: int, den: int) -> Fraction:
    """Return num/den in lowest terms; den must be positive, num nonnegative."""
    if not isinstance(num, int) or not isinstance(den, int):
        raise InvalidInputError(f"expected integers, got {num!r}/{den!r}")
    if den <= 0:
        raise InvalidInputError(f"denominator must be positive, got {den}")
    if num < 0:
        raise InvalidInputError(f"numerator must be nonnegative, got {num}")
    return Fraction(num, den)


def int_valuation(n: int, p: int) -> int:
    """Largest k with p**k dividing n (n must be nonzero)."""
    if n == 0:
        raise UndefinedValuationError("valuation of 0 is undefined")
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def valuation(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a positive rational: v_p(numerator) - v_p(denominator).

    May be negative.  p must be prime; q must be nonzero.
    """
    if not is_prime(p):
        raise InvalidInputError(f"{p} is not prime")
    q = Fraction(q)
    if q == 0:
        raise UndefinedValuationError("valuation of 0 is undefined")
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


# Deterministic Miller-Rabin witnesses: this set decides primality exactly
# for all n below the limit (Sorenson & Webster).  Above it we fall back to
# trial division, which stays exact at any size.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _miller_rabin(n: int, bases) -> bool:
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test (exact for every integer handled here)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < _MR_LIMIT:
        return _miller_rabin(n, _MR_WITNESSES)
    i = 49
    while i * i <= n:
        # wheel over residues coprime to 2 and 3
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def next_prime_above(bound: Fraction | int) -> int:
    """Smallest prime strictly greater than bound (bound >= 0)."""
    b = Fraction(bound)
    if b < 0:
        raise InvalidInputError(f"bound must be nonnegative, got {bound}")
    n = math.floor(b) + 1
    if n <= 2:
        return 2
    if n % 2 == 0:
        n += 1
    while not is_prime(n):
        n += 2
    return n


def checked_sub(a: Fraction, b: Fraction):
    """a - b when the result stays nonnegative, else None.

    This is the partial subtraction of Q>=0; `checked_sub(r, s) is not None`
    is exactly "s divides r" once both lie in the ambient Q>=0.
    """
    if b > a:
        return None
    return a - b


def parse_rational(text: str) -> Fraction:
    """Parse "a/b" or "a" (unreduced accepted) into a nonnegative Fraction."""
    s = text.strip()
    num_s, sep, den_s = s.partition("/")
    try:
        num = int(num_s)
        den = int(den_s) if sep else 1
    except ValueError:
        raise InvalidInputError(f"not a rational: {text!r}") from None
    return reduce(num, den)


def format_rational(q: Fraction | int) -> str:
    """Render in lowest terms: "a/b", or "a" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
