"""Exact integer arithmetic on 2x2 matrices plus the number-theoretic helpers.

Everything here is pure and works on Python ints, so there is no overflow anywhere.
A normalizer element M/sqrt(det M) is stored as the *primitive* integer matrix M with a
canonical global sign (see :func:`canonicalize`); -I lies in Gamma0(N), so the sign of a
coset representative carries no information.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .errors import CapExceeded, OrientationReversing, SingularMatrix

DEFAULT_FACTOR_CAP = 10**9


@dataclass(frozen=True, slots=True)
class Mat2:
    """Raw integer 2x2 matrix [[a, b], [c, d]] (scratch type, never normalized)."""

    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def content(self) -> int:
        return content(self)

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


IDENTITY = Mat2(1, 0, 0, 1)


@dataclass(frozen=True, slots=True)
class ProjectiveMatrix:
    """Primitive integer matrix with positive determinant and canonical sign.

    Represents (1/sqrt(det)) * [[a, b], [c, d]] in SL2(R) up to sign.  Build instances
    with :func:`canonicalize`; the constructor only checks the invariants.
    """

    a: int
    b: int
    c: int
    d: int
    det: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != self.det or self.det <= 0:
            raise ValueError(f"inconsistent determinant {self.det} for {self.entries()}")
        if math.gcd(math.gcd(self.a, self.b), math.gcd(self.c, self.d)) != 1:
            raise ValueError(f"matrix {self.entries()} is not primitive")
        if _first_nonzero(self.a, self.b, self.c, self.d) < 0:
            raise ValueError(f"matrix {self.entries()} does not carry the canonical sign")

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def as_mat2(self) -> Mat2:
        return Mat2(self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    @classmethod
    def parse(cls, text: str) -> "ProjectiveMatrix":
        """Parse ``"a,b,c,d"`` and canonicalize it."""
        parts = [p.strip() for p in str(text).split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected four comma-separated integers, got {text!r}")
        try:
            a, b, c, d = (int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"non-integer entry in {text!r}") from exc
        return canonicalize(Mat2(a, b, c, d))


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ``((p1, e1), (p2, e2), ...)`` with p1 < p2 < ..."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def prime_powers(self) -> tuple[int, ...]:
        return tuple(p**e for p, e in self.factors)


@dataclass(frozen=True)
class SqfDecomp:
    """N = sigma**2 * q with q squarefree."""

    sigma: int
    q: int


def _first_nonzero(*xs: int) -> int:
    for x in xs:
        if x:
            return x
    return 0


def content(x: Mat2) -> int:
    return math.gcd(math.gcd(x.a, x.b), math.gcd(x.c, x.d))


def det(x: Mat2 | ProjectiveMatrix) -> int:
    return x.a * x.d - x.b * x.c


def mul(x: Mat2 | ProjectiveMatrix, y: Mat2 | ProjectiveMatrix) -> Mat2:
    return Mat2(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def adjugate(x: Mat2 | ProjectiveMatrix) -> Mat2:
    """[[d, -b], [-c, a]]; x * adjugate(x) = det(x) * I."""
    return Mat2(x.d, -x.b, -x.c, x.a)


def canonicalize(x: Mat2) -> ProjectiveMatrix:
    """Divide out the content and fix the sign so the first nonzero entry is positive."""
    n = det(x)
    if n == 0:
        raise SingularMatrix(f"matrix {x.entries()} has determinant 0")
    if n < 0:
        raise OrientationReversing(f"matrix {x.entries()} has negative determinant {n}")
    g = content(x)
    if _first_nonzero(x.a, x.b, x.c, x.d) < 0:
        g = -g
    return ProjectiveMatrix(x.a // g, x.b // g, x.c // g, x.d // g, n // (g * g))


def pmul(x: ProjectiveMatrix, y: ProjectiveMatrix) -> ProjectiveMatrix:
    """Product of two normalizer representatives, canonicalized."""
    return canonicalize(mul(x, y))


def pinv(x: ProjectiveMatrix) -> ProjectiveMatrix:
    """Inverse in PSL2(R): the adjugate has the same determinant."""
    return canonicalize(adjugate(x))


PROJECTIVE_IDENTITY = canonicalize(IDENTITY)


# ---------------------------------------------------------------------------
# Number theory
# ---------------------------------------------------------------------------


def factorize(n: int, *, cap: int = DEFAULT_FACTOR_CAP) -> Factorization:
    """Complete factorization by trial division (2, 3, then 6k +/- 1)."""
    n = int(n)
    if n < 1:
        raise ValueError(f"cannot factor {n}; expected a positive integer")
    if n > cap:
        raise CapExceeded(f"{n} exceeds the factorization cap {cap}")
    out: list[tuple[int, int]] = []
    rest = n
    for p in (2, 3):
        e = 0
        while rest % p == 0:
            rest //= p
            e += 1
        if e:
            out.append((p, e))
    p = 5
    while p * p <= rest:
        for cand in (p, p + 2):
            e = 0
            while rest % cand == 0:
                rest //= cand
                e += 1
            if e:
                out.append((cand, e))
        p += 6
    if rest > 1:
        out.append((rest, 1))
    return Factorization(n, tuple(out))


def valuation(n: int, p: int) -> int:
    """v_p(n) for n >= 1."""
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def squarefree_decompose(n: int, *, cap: int = DEFAULT_FACTOR_CAP) -> SqfDecomp:
    sigma = 1
    q = 1
    for p, e in factorize(n, cap=cap).factors:
        sigma *= p ** (e // 2)
        if e % 2:
            q *= p
    return SqfDecomp(sigma, q)


def divisors(n: int, *, cap: int = DEFAULT_FACTOR_CAP) -> list[int]:
    divs = [1]
    for p, e in factorize(n, cap=cap).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def exact_divisors(n: int, *, cap: int = DEFAULT_FACTOR_CAP) -> list[int]:
    """All m | n with gcd(m, n/m) = 1, ascending (products of full prime powers)."""
    out = [1]
    for pe in factorize(n, cap=cap).prime_powers():
        out = out + [m * pe for m in out]
    return sorted(out)


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) > 0 and a*x + b*y = g."""
    if a == 0 and b == 0:
        raise ValueError("ext_gcd(0, 0) is undefined")
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        k = old_r // r
        old_r, r = r, old_r - k * r
        old_x, x = x, old_x - k * x
        old_y, y = y, old_y - k * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def is_perfect_square(n: int) -> int | None:
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def gcd_all(values: list[int]) -> int:
    return reduce(math.gcd, values, 0)
