"""Named elements of Norm(Gamma0(N)) and the divisibility-pattern membership test.

A real matrix M lies in the normalizer iff some scalar multiple of it has the shape

    [[ v*delta*Delta**2 * r,   u            ],
     [ N * s,                  v*delta*Delta**2 * l ]] / sqrt(v**2 * Delta**2 * delta)

with delta | q (squarefree part of N = sigma**2 * q), Delta | sigma/v and r, u, s, l integers.
For a primitive integer representative p of determinant n the scale is
lambda = sqrt(v**2 * Delta**2 * delta / n), which must be a positive integer.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from typing import Iterator

from .errors import CapExceeded, NotExactDivisor, NotInNormalizer, ShiftNotInNormalizer, UnknownGenerator
from .exact import (
    DEFAULT_FACTOR_CAP,
    PROJECTIVE_IDENTITY,
    Mat2,
    ProjectiveMatrix,
    canonicalize,
    divisors,
    factorize,
    is_perfect_square,
    squarefree_decompose,
)
from .gamma0 import psi, v_params

log = logging.getLogger(__name__)

_W_NAME = re.compile(r"^w(\d+)$")
_S_NAME = re.compile(r"^S(\d+)$")


@dataclass(frozen=True)
class Theorem1Witness:
    """(delta, Delta, lambda) certifying normalizer membership."""

    delta: int
    Delta: int
    lam: int


@dataclass(frozen=True)
class GeneratorSet:
    """Ordered, uniquely named normalizer elements for level N."""

    N: int
    names: tuple[str, ...]
    matrices: tuple[ProjectiveMatrix, ...]

    def __post_init__(self) -> None:
        if len(self.names) != len(self.matrices):
            raise ValueError("names and matrices must have the same length")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate generator names in {self.names}")

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[tuple[str, ProjectiveMatrix]]:
        return iter(zip(self.names, self.matrices))

    def get(self, name: str) -> ProjectiveMatrix:
        try:
            return self.matrices[self.names.index(name)]
        except ValueError:
            raise UnknownGenerator(f"no generator named {name!r} at level {self.N}") from None

    @classmethod
    def from_names(cls, N: int, names: list[str] | tuple[str, ...], *, cap: int = DEFAULT_FACTOR_CAP) -> "GeneratorSet":
        """Build a set from names of the form ``w<m>`` / ``S<k>``."""
        return cls(N, tuple(names), tuple(element_by_name(N, n, cap=cap) for n in names))


def atkin_lehner(N: int, m: int, *, cap: int = DEFAULT_FACTOR_CAP) -> ProjectiveMatrix:
    """Canonical representative of w_m: [[m, b], [N, m*d]] with m*d - b*(N/m) = 1.

    b is the least nonnegative residue of -(N/m)^-1 mod m; w_1 is the identity.
    """
    if N < 1 or m < 1:
        raise ValueError(f"level and divisor must be positive, got N={N}, m={m}")
    if N > cap:
        raise CapExceeded(f"level {N} exceeds the factorization cap {cap}")
    if N % m:
        raise NotExactDivisor(f"{m} does not divide {N}")
    cof = N // m
    if math.gcd(m, cof) != 1:
        raise NotExactDivisor(f"{m} is not an exact divisor of {N}: gcd({m}, {cof}) = {math.gcd(m, cof)}")
    if m == 1:
        return PROJECTIVE_IDENTITY
    b = (-pow(cof, -1, m)) % m
    d = (1 + cof * b) // m
    return canonicalize(Mat2(m, b, N, m * d))


def shift(N: int, vp: int) -> ProjectiveMatrix:
    """S_vp = [[1, 1/vp], [0, 1]], stored as [[vp, 1], [0, vp]]."""
    if vp < 1:
        raise ValueError(f"shift order must be positive, got {vp}")
    v = v_params(N).v
    if v % vp:
        raise ShiftNotInNormalizer(f"{vp} does not divide v({N})={v}")
    return canonicalize(Mat2(vp, 1, 0, vp))


def theorem1_member(p: ProjectiveMatrix, N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> Theorem1Witness | None:
    """First (delta asc, Delta asc) witness of the divisibility pattern, or None."""
    sqf = squarefree_decompose(N, cap=cap)
    v = v_params(N).v
    n = p.det
    for delta in divisors(sqf.q, cap=cap):
        for Delta in divisors(sqf.sigma // v, cap=cap):
            num = v * v * Delta * Delta * delta
            if num % n:
                continue
            lam = is_perfect_square(num // n)
            if not lam:
                continue
            mod = v * delta * Delta * Delta
            if (lam * p.a) % mod or (lam * p.d) % mod or (lam * p.c) % N:
                continue
            return Theorem1Witness(delta, Delta, lam)
    return None


def is_member(p: ProjectiveMatrix, N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> bool:
    return theorem1_member(p, N, cap=cap) is not None


def canonical_generators(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> GeneratorSet:
    """w_{p^e} for each prime power p^e || N (primes ascending), then S_{v(N)} when v(N) > 1."""
    names: list[str] = []
    mats: list[ProjectiveMatrix] = []
    for pe in factorize(N, cap=cap).prime_powers():
        names.append(f"w{pe}")
        mats.append(atkin_lehner(N, pe, cap=cap))
    v = v_params(N).v
    if v > 1:
        names.append(f"S{v}")
        mats.append(shift(N, v))
    for name, mat in zip(names, mats):
        if theorem1_member(mat, N, cap=cap) is None:
            raise NotInNormalizer(f"generator {name}={mat} failed the membership pattern at level {N}")
    log.debug("canonical generators for N=%d: %s", N, ", ".join(names))
    return GeneratorSet(N, tuple(names), tuple(mats))


def element_by_name(N: int, name: str, *, cap: int = DEFAULT_FACTOR_CAP) -> ProjectiveMatrix:
    """``w<m>`` is atkin_lehner(N, m); ``S<k>`` is shift(N, k)."""
    hit = _W_NAME.match(name)
    if hit:
        return atkin_lehner(N, int(hit.group(1)), cap=cap)
    hit = _S_NAME.match(name)
    if hit:
        return shift(N, int(hit.group(1)))
    raise UnknownGenerator(f"cannot interpret {name!r}: expected w<m> or S<k>")


def expected_quotient_order(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """|Norm(Gamma0(N))/Gamma0(N)| = psi(N)/psi(M) * 2**omega(M) with M = N/v(N)**2.

    Conjugating by diag(v, 1) carries the normalizer onto Gamma0(M)+, the group generated by
    Gamma0(M) and all Atkin-Lehner involutions of level M.
    """
    h = v_params(N).v
    M = N // (h * h)
    omega = len(factorize(M, cap=cap).factors)
    return psi(N, cap=cap) // psi(M, cap=cap) * 2**omega
