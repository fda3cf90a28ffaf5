"""Exact rational scalars and p-adic valuations.

The coefficient field everywhere is the rationals, represented by
:class:`fractions.Fraction`: always in lowest terms, positive denominator,
canonical zero.  This module adds the string serialization used in all JSON
interfaces ("a/b", with "/b" omitted when the denominator is 1) and the
p-adic valuation.
"""

from __future__ import annotations

from fractions import Fraction

ExactScalar = Fraction

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def padic_valuation(x: Fraction | int, p: int) -> int:
    """Exponent of p in x, so that x = p**v * (unit in Z localized at p).

    Additive under multiplication.  Raises on x == 0 (valuation undefined)
    and on non-prime p.
    """
    if not is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero is undefined")
    v = 0
    num = x.numerator
    while num % p == 0:
        num //= p
        v += 1
    den = x.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def scalar_to_string(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def scalar_from_string(s: str) -> Fraction:
    return Fraction(s)
