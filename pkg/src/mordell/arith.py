"""Small integer/rational utilities used throughout the package.

sympy is imported lazily: the exponent machinery has no need for it and
keeps CLI startup fast.
"""

from __future__ import annotations

import math
from fractions import Fraction


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def isqrt_exact(n: int) -> int | None:
    """Integer square root of n, or None if n is not a perfect square."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def valuation(x: Fraction | int, p: int) -> int:
    """p-adic valuation v_p(x); raises on x == 0."""
    x = Fraction(x)
    if x == 0:
        raise ZeroDivisionError("valuation of 0 is +infinity")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {p: exponent}; n must be nonzero."""
    if n == 0:
        raise ZeroDivisionError("cannot factor 0")
    import sympy

    return {int(p): int(e) for p, e in sympy.factorint(abs(n)).items()}


def prime_support(n: int) -> list[int]:
    return sorted(factorize(n)) if abs(n) != 1 else []


def is_prime(n: int) -> bool:
    import sympy

    return bool(sympy.isprime(n))


def primes_up_to(n: int) -> list[int]:
    import sympy

    return [int(p) for p in sympy.primerange(2, n + 1)]


def omega(n: int) -> int:
    """Number of distinct primes dividing n."""
    return len(factorize(n))


def squarefree_part(n: int) -> int:
    """Largest squarefree divisor of n, with the sign of n."""
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorize(n).items():
        if e % 2:
            out *= p
    return sign * out


def fundamental_discriminant(d: int) -> int:
    """Fundamental discriminant of Q(sqrt(d)) for squarefree-able d != 0, 1."""
    m = squarefree_part(d)
    if m == 1:
        raise ValueError("d is a perfect square; no quadratic field")
    return m if m % 4 == 1 else 4 * m


def is_fundamental_discriminant(D: int) -> bool:
    if D == 0 or D == 1:
        return False
    if D % 4 == 1:
        return abs(squarefree_part(D)) == abs(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and abs(squarefree_part(m)) == abs(m)
    return False


def divisors_supported(primes: list[int], bound: int) -> list[int]:
    """All products of powers of `primes` that are <= bound, ascending."""
    out = [1]
    for p in primes:
        cur = list(out)
        for d in cur:
            q = d * p
            while q <= bound:
                out.append(q)
                q *= p
    return sorted(set(out))
