"""Exact elliptic curve arithmetic over Q.

Integral Weierstrass models, the group law in exact rational arithmetic,
reduction modulo good primes, torsion detection, and bounded integral /
S-integral point searches.  Everything here is pure and deterministic;
floating point never enters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import divisors_supported, is_prime, isqrt_exact, valuation
from .errors import BadReduction, DomainError, PointNotOnCurve

Rat = Fraction

# Mazur: the order of a rational torsion point divides 10 or equals 12.
TORSION_ORDER_BOUND = 12


@dataclass(frozen=True)
class EllipticCurve:
    """Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6."""

    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    discriminant: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        for v in (self.a1, self.a2, self.a3, self.a4, self.a6):
            if not isinstance(v, int):
                raise DomainError("Weierstrass coefficients must be integers")
        b2, b4, b6, b8 = self.b_invariants()
        disc = -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
        if disc == 0:
            raise DomainError("singular model: discriminant is zero")
        object.__setattr__(self, "discriminant", disc)

    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.a1, self.a2, self.a3, self.a4, self.a6
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    def c_invariants(self) -> tuple[int, int]:
        b2, b4, b6, _ = self.b_invariants()
        c4 = b2 * b2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        return c4, c6

    @property
    def j_invariant(self) -> Rat:
        c4, _ = self.c_invariants()
        return Fraction(c4**3, self.discriminant)

    def rhs(self, x: Rat) -> Rat:
        """x^3 + a2 x^2 + a4 x + a6."""
        return x**3 + self.a2 * x * x + self.a4 * x + self.a6

    def y_discriminant(self, x: Rat) -> Rat:
        """Discriminant of the y-quadratic at abscissa x: (a1 x + a3)^2 + 4 rhs(x)."""
        t = self.a1 * x + self.a3
        return t * t + 4 * self.rhs(x)

    def contains(self, P: CurvePoint) -> bool:
        if P.is_origin:
            return True
        x, y = P.x, P.y
        return y * y + self.a1 * x * y + self.a3 * y == self.rhs(x)

    def __repr__(self):
        return f"EllipticCurve({self.a1},{self.a2},{self.a3},{self.a4},{self.a6})"


class MordellCurve(EllipticCurve):
    """The curve y^2 = x^3 + D; discriminant -432 D^2, j = 0."""

    def __init__(self, D: int):
        if D == 0:
            raise DomainError("Mordell coefficient must be nonzero")
        super().__init__(0, 0, 0, 0, D)
        object.__setattr__(self, "D", D)

    def __repr__(self):
        return f"MordellCurve({self.D})"


@dataclass(frozen=True, order=True)
class CurvePoint:
    """Exact projective rational point: the origin, or an affine pair."""

    sort_key: tuple = field(init=False, repr=False)
    x: Rat | None = None
    y: Rat | None = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise DomainError("affine point needs both coordinates")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))
        # origin sorts first; affine points by (x, y)
        key = (0,) if self.x is None else (1, self.x, self.y)
        object.__setattr__(self, "sort_key", key)

    @property
    def is_origin(self) -> bool:
        return self.x is None

    @classmethod
    def origin(cls) -> "CurvePoint":
        return cls()

    @classmethod
    def affine(cls, x, y) -> "CurvePoint":
        return cls(Fraction(x), Fraction(y))

    def __repr__(self):
        return "O" if self.is_origin else f"({self.x}, {self.y})"


ORIGIN = CurvePoint.origin()


@dataclass(frozen=True)
class PlaceSetQ:
    """A finite set of rational primes together with the infinite place."""

    primes: tuple[int, ...] = ()
    include_infinity: bool = True

    def __post_init__(self):
        ps = tuple(sorted(set(self.primes)))
        for p in ps:
            if not is_prime(p):
                raise DomainError(f"{p} is not prime")
        object.__setattr__(self, "primes", ps)

    @property
    def size(self) -> int:
        """#S, counting the infinite place if present."""
        return len(self.primes) + (1 if self.include_infinity else 0)

    @property
    def finite_product(self) -> int:
        """Product of the finite places of S, seen as an integer ideal."""
        out = 1
        for p in self.primes:
            out *= p
        return out


# ---------------------------------------------------------------------------
# group law
# ---------------------------------------------------------------------------


def _require_on_curve(E: EllipticCurve, P: CurvePoint):
    if not E.contains(P):
        raise PointNotOnCurve(f"{P} not on {E}")


def negate(E: EllipticCurve, P: CurvePoint) -> CurvePoint:
    if P.is_origin:
        return ORIGIN
    return CurvePoint.affine(P.x, -P.y - E.a1 * P.x - E.a3)


def add(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    """P + Q in the group law, exact rational arithmetic."""
    _require_on_curve(E, P)
    _require_on_curve(E, Q)
    return _add_unchecked(E, P, Q)


def _add_unchecked(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    if P.is_origin:
        return Q
    if Q.is_origin:
        return P
    a1, a2, a3 = E.a1, E.a2, E.a3
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + a1 * x2 + a3 == 0:
            return ORIGIN
        lam = (3 * x1 * x1 + 2 * a2 * x1 + E.a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + a1 * lam - a2 - x1 - x2
    y3 = -(lam + a1) * x3 - nu - a3
    return CurvePoint.affine(x3, y3)


def subtract(E: EllipticCurve, P: CurvePoint, Q: CurvePoint) -> CurvePoint:
    return add(E, P, negate(E, Q))


def multiply(E: EllipticCurve, P: CurvePoint, n: int) -> CurvePoint:
    """n*P by double-and-add; multiply(E, P, 0) is the origin."""
    _require_on_curve(E, P)
    if n < 0:
        P, n = negate(E, P), -n
    R, Q = ORIGIN, P
    while n:
        if n & 1:
            R = _add_unchecked(E, R, Q)
        n >>= 1
        if n:
            Q = _add_unchecked(E, Q, Q)
    return R


def is_torsion(E: EllipticCurve, P: CurvePoint) -> tuple[bool, int | None]:
    """(True, order) if P is torsion, else (False, None).

    Multiples are exhausted up to Mazur's uniform bound, so this is a
    decision procedure over Q, not a heuristic.
    """
    _require_on_curve(E, P)
    if P.is_origin:
        return True, 1
    Q = P
    for n in range(2, TORSION_ORDER_BOUND + 1):
        Q = _add_unchecked(E, Q, P)
        if Q.is_origin:
            return True, n
    return False, None


# ---------------------------------------------------------------------------
# reduction modulo p
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class FpPoint:
    """Point of E(F_p): the origin, or a coordinate pair mod p."""

    sort_key: tuple = field(init=False, repr=False)
    x: int | None = None
    y: int | None = None

    def __post_init__(self):
        key = (0,) if self.x is None else (1, self.x, self.y)
        object.__setattr__(self, "sort_key", key)

    @property
    def is_origin(self) -> bool:
        return self.x is None

    def __repr__(self):
        return "O~" if self.is_origin else f"({self.x}, {self.y} mod p)"


FP_ORIGIN = FpPoint()


def reduce_mod_p(E: EllipticCurve, P: CurvePoint, p: int) -> FpPoint:
    """Image of P in E(F_p); requires good reduction (p not dividing disc)."""
    if E.discriminant % p == 0:
        raise BadReduction(f"p={p} divides the discriminant")
    _require_on_curve(E, P)
    if P.is_origin:
        return FP_ORIGIN
    # clear denominators projectively: (x : y : 1) ~ (x d : y d : d)
    d = math.lcm(P.x.denominator, P.y.denominator)
    X, Y, Z = int(P.x * d), int(P.y * d), d
    g = math.gcd(math.gcd(X, Y), Z)
    X, Y, Z = X // g, Y // g, Z // g
    if Z % p == 0:
        # good reduction forces the image onto the origin (X == 0 mod p too)
        return FP_ORIGIN
    zi = pow(Z, -1, p)
    return FpPoint(X * zi % p, Y * zi % p)


def fp_add(E: EllipticCurve, p: int, P: FpPoint, Q: FpPoint) -> FpPoint:
    """Group law on E(F_p), mirroring the rational formulas mod p."""
    if P.is_origin:
        return Q
    if Q.is_origin:
        return P
    a1, a2, a3, a4 = E.a1 % p, E.a2 % p, E.a3 % p, E.a4 % p
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if (y1 + y2 + a1 * x2 + a3) % p == 0:
            return FP_ORIGIN
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) * pow(2 * y1 + a1 * x1 + a3, -1, p) % p
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, p) % p
    nu = (y1 - lam * x1) % p
    x3 = (lam * lam + a1 * lam - a2 - x1 - x2) % p
    y3 = (-(lam + a1) * x3 - nu - a3) % p
    return FpPoint(x3, y3)


def fp_points(E: EllipticCurve, p: int) -> list[FpPoint]:
    """All points of E(F_p) by direct scan (desk scale: p small)."""
    if E.discriminant % p == 0:
        raise BadReduction(f"p={p} divides the discriminant")
    pts = [FP_ORIGIN]
    for x in range(p):
        for y in range(p):
            if (y * y + E.a1 * x * y + E.a3 * y - (x**3 + E.a2 * x * x + E.a4 * x + E.a6)) % p == 0:
                pts.append(FpPoint(x, y))
    return pts


# ---------------------------------------------------------------------------
# integral and S-integral point searches
# ---------------------------------------------------------------------------


def _y_roots_at_integer_x(E: EllipticCurve, x: int) -> list[int]:
    dy = int(E.y_discriminant(Fraction(x)))
    if dy < 0:
        return []
    s = isqrt_exact(dy)
    if s is None:
        return []
    t = E.a1 * x + E.a3
    roots = []
    for sgn in ((s, -s) if s else (0,)):
        num = -t + sgn
        if num % 2 == 0:
            roots.append(num // 2)
    return roots


def integral_points_bounded(E: EllipticCurve, x_bound: int) -> list[CurvePoint]:
    """All integral (x, y) on E with |x| <= x_bound, ascending by (x, y).

    Plain scan over x testing the y-quadratic for a perfect-square
    discriminant; no elliptic-logarithm sieving, by design.
    """
    if x_bound < 1:
        raise DomainError("x_bound must be >= 1")
    out = []
    for x in range(-x_bound, x_bound + 1):
        for y in _y_roots_at_integer_x(E, x):
            out.append(CurvePoint.affine(x, y))
    return sorted(out)


def s_integral_points_bounded(
    E: EllipticCurve, S: PlaceSetQ, height_bound: float
) -> list[CurvePoint]:
    """All S-integral points whose naive x-height is <= height_bound.

    Denominators supported on S are enumerated up to e^height_bound, and
    the numerator range is bounded the same way, exactly realizing
    h(a/b) = log max(|a|, b) <= height_bound.
    """
    if not S.include_infinity:
        raise DomainError("S must contain the infinite place")
    H = int(math.floor(math.exp(height_bound) * (1 + 1e-12)))
    out = []
    for d in divisors_supported(list(S.primes), H):
        for a in range(-H, H + 1):
            if d > 1 and math.gcd(a, d) != 1:
                continue
            x = Fraction(a, d)
            dy = E.y_discriminant(x)
            if dy < 0:
                continue
            sn = isqrt_exact(dy.numerator)
            sd = isqrt_exact(dy.denominator)
            if sn is None or sd is None:
                continue
            t = Fraction(sn, sd)
            for sgn in ((t, -t) if t else (Fraction(0),)):
                y = (-(E.a1 * x + E.a3) + sgn) / 2
                if _denominator_supported(y, S.primes):
                    out.append(CurvePoint.affine(x, y))
    return sorted(set(out))


def _denominator_supported(y: Rat, primes: tuple[int, ...]) -> bool:
    d = y.denominator
    for p in primes:
        while d % p == 0:
            d //= p
    return d == 1


# ---------------------------------------------------------------------------
# division polynomial values
# ---------------------------------------------------------------------------


def psi_value(E: EllipticCurve, P: CurvePoint, n: int) -> Rat:
    """Value of the n-th division polynomial at an affine point, exactly.

    Evaluated through the x-only family f_n (where psi_n = f_n * psi_2 for
    even n), so the recurrence never divides by psi_2 and stays valid at
    2-torsion points.
    """
    if P.is_origin:
        raise DomainError("division polynomial value needs an affine point")
    if n < 1:
        raise DomainError("n must be >= 1")
    b2, b4, b6, b8 = E.b_invariants()
    x, y = P.x, P.y
    B6 = 4 * x**3 + b2 * x * x + 2 * b4 * x + b6  # psi_2^2 as a polynomial in x
    psi2 = 2 * y + E.a1 * x + E.a3

    f = {
        0: Fraction(0),
        1: Fraction(1),
        2: Fraction(1),
        3: 3 * x**4 + b2 * x**3 + 3 * b4 * x * x + 3 * b6 * x + b8,
        4: 2 * x**6 + b2 * x**5 + 5 * b4 * x**4 + 10 * b6 * x**3 + 10 * b8 * x * x
        + (b2 * b8 - b4 * b6) * x + (b4 * b8 - b6 * b6),
    }

    def g(m: int) -> Rat:
        if m in f:
            return f[m]
        if m % 2:
            k = (m - 1) // 2
            if k % 2 == 0:
                f[m] = g(k + 2) * g(k) ** 3 * B6 * B6 - g(k - 1) * g(k + 1) ** 3
            else:
                f[m] = g(k + 2) * g(k) ** 3 - g(k - 1) * g(k + 1) ** 3 * B6 * B6
        else:
            k = m // 2
            f[m] = g(k) * (g(k + 2) * g(k - 1) ** 2 - g(k - 2) * g(k + 1) ** 2)
        return f[m]

    val = g(n)
    return val if n % 2 else val * psi2


# ---------------------------------------------------------------------------
# misc helpers used by the height machinery
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _disc_support_cached(disc: int) -> tuple[int, ...]:
    from .arith import prime_support

    return tuple(prime_support(disc))


def bad_primes(E: EllipticCurve) -> tuple[int, ...]:
    return _disc_support_cached(E.discriminant)


def x_valuation(P: CurvePoint, p: int) -> int | None:
    """v_p(x(P)), None when x(P) = 0."""
    if P.is_origin:
        raise DomainError("origin has no x-coordinate")
    if P.x == 0:
        return None
    return valuation(P.x, p)
