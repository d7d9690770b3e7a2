"""Gamma0(N): membership, coset equality, coset fingerprints, epsilon(N) and v(N).

Conventions
-----------
We work projectively: -I lies in Gamma0(N), so a coset is determined by a primitive
integer matrix up to sign.  Cosets are *right* cosets p * Gamma0(N); Gamma0(N) is normal
in its normalizer, so left and right cosets agree, but the fingerprint construction uses
the right-coset form (the first column moves by a unit mod N).

An independent membership oracle is built from the coset graph of Gamma0(N)\\SL2(Z) on
P^1(Z/N): Schreier generators of Gamma0(N), and a conjugation test against them.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded
from .exact import (
    DEFAULT_FACTOR_CAP,
    Mat2,
    ProjectiveMatrix,
    adjugate,
    canonicalize,
    content,
    factorize,
    mul,
    squarefree_decompose,
    valuation,
)

log = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 10**4

_S = Mat2(0, -1, 1, 0)
_T = Mat2(1, 1, 0, 1)


@dataclass(frozen=True)
class VParams:
    """v(N) = 2**mu * 3**w with mu = min(3, v2(N)//2) and w = min(1, v3(N)//2)."""

    N: int
    mu: int
    w: int
    v: int


@dataclass(frozen=True)
class Fingerprint:
    det: int
    col: tuple[int, int]


@dataclass(frozen=True)
class CosetElement:
    """One element of Norm(Gamma0(N))/Gamma0(N)."""

    N: int
    rep: ProjectiveMatrix
    fp: Fingerprint

    @classmethod
    def of(cls, rep: ProjectiveMatrix, N: int) -> "CosetElement":
        return cls(N, rep, fingerprint(rep, N))


def is_gamma0(p: ProjectiveMatrix, N: int) -> bool:
    """True iff p represents +/-gamma with gamma in Gamma0(N)."""
    return p.det == 1 and p.c % N == 0


def coset_equal(p1: ProjectiveMatrix, p2: ProjectiveMatrix, N: int) -> bool:
    """True iff p1 * p2^-1 lies in +/-Gamma0(N) (as real matrices).

    With Q = p1 * adj(p2) and g = content(Q): the real quotient is Q / sqrt(det1*det2),
    which is integral exactly when g**2 = det1*det2; its determinant is then 1.
    """
    q = mul(p1, adjugate(p2))
    g = content(q)
    if g * g != p1.det * p2.det:
        return False
    return (q.c // g) % N == 0


def _unit_lifts(u0: int, m: int, N: int) -> list[int]:
    """Units of Z/N congruent to u0 modulo m (m | N)."""
    return [u for u in range(u0 % m if m > 1 else 0, N, m) if math.gcd(u, N) == 1] if N > 1 else [0]


def _orbit_min_pair(x: int, y: int, N: int) -> tuple[int, int]:
    """Lexicographic minimum of (u*x mod N, u*y mod N) over units u of Z/N.

    The first coordinate's minimum is gcd(x, N); only the units realizing it are scanned.
    """
    if N == 1:
        return (0, 0)
    x %= N
    y %= N
    g = math.gcd(x, N)
    if g == N:
        return (0, math.gcd(y, N) % N)
    m = N // g
    u0 = pow(x // g, -1, m) if m > 1 else 0
    return (g, min((u * y) % N for u in _unit_lifts(u0, m, N)))


def fingerprint(p: ProjectiveMatrix, N: int) -> Fingerprint:
    """(det, unit-orbit minimum of the first column mod N); equal cosets share it."""
    return Fingerprint(p.det, _orbit_min_pair(p.a, p.c, N))


def epsilon(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """gcd of all a - d over matrices [[a, b], [Nc, d]] in Gamma0(N).

    Realizable values are a - (a^-1 mod N) - tN over units a, and
    gcd(a - a^-1, N) = gcd(a^2 - 1, N) since a is a unit.  By CRT the gcd splits over the
    prime powers of N, and for each prime power the scan stops as soon as it reaches 1.
    """
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    eps = 1
    for p, e in factorize(N, cap=cap).factors:
        pe = p**e
        g = pe
        for a in range(2, pe):
            if a % p:
                g = math.gcd(g, a * a - 1)
                if g == 1:
                    break
        eps *= g
    return eps


def epsilon_oracle(N: int, bound: int) -> int:
    """Brute force: gcd of a - d over Gamma0(N) matrices with |a|, |d| <= bound.

    A pair (a, d) occurs in some [[a, b], [Nc, d]] of determinant 1 iff a*d = 1 mod N
    (take c = 1, b = (ad - 1)/N).
    """
    g = 0
    for a in range(-bound, bound + 1):
        if math.gcd(a, N) != 1:
            continue
        d0 = pow(a, -1, N) if N > 1 else 0
        d = d0 + (-((bound + d0) // N)) * N
        while d <= bound:
            if d >= -bound:
                g = math.gcd(g, a - d)
            d += N
    return g


def epsilon_oracle_stable(N: int) -> int:
    """Grow the bound (N+1, 2N+2, ...) until two consecutive oracle values agree."""
    bound = N + 1
    prev = epsilon_oracle(N, bound)
    while True:
        bound *= 2
        cur = epsilon_oracle(N, bound)
        if cur == prev:
            return cur
        prev = cur


def v_params(N: int) -> VParams:
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    mu = min(3, valuation(N, 2) // 2)
    w = min(1, valuation(N, 3) // 2)
    return VParams(N, mu, w, 2**mu * 3**w)


def v_from_definition(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """gcd(sigma, epsilon): the defining description of v(N)."""
    return math.gcd(squarefree_decompose(N, cap=cap).sigma, epsilon(N, cap=cap))


def psi(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """Index of Gamma0(N) in SL2(Z): N * prod_{p | N} (1 + 1/p)."""
    out = N
    for p, _ in factorize(N, cap=cap).factors:
        out = out // p * (p + 1)
    return out


# ---------------------------------------------------------------------------
# Coset graph on P^1(Z/N) and Schreier generators
# ---------------------------------------------------------------------------


def p1_normalize(c: int, d: int, N: int) -> tuple[int, int]:
    """Canonical representative of the point (c : d) of P^1(Z/N)."""
    return _orbit_min_pair(c, d, N)


@dataclass(frozen=True)
class CosetGraph:
    """Right action of S = [[0,-1],[1,0]] and T = [[1,1],[0,1]] on P^1(Z/N)."""

    N: int
    points: tuple[tuple[int, int], ...]
    s_action: tuple[int, ...]
    t_action: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.points)


def _check_oracle_cap(N: int, cap: int) -> None:
    if N < 1:
        raise ValueError(f"level must be positive, got {N}")
    if N > cap:
        raise CapExceeded(f"level {N} exceeds the oracle cap {cap}")


def _step(pt: tuple[int, int], gen: Mat2, N: int) -> tuple[int, int]:
    c, d = pt
    return p1_normalize(c * gen.a + d * gen.c, c * gen.b + d * gen.d, N)


@lru_cache(maxsize=64)
def _build_graph(N: int) -> tuple[CosetGraph, tuple[Mat2, ...], tuple[Mat2, ...]]:
    """BFS over P^1(Z/N) from (0:1); returns the graph, coset reps and Schreier generators."""
    start = p1_normalize(0, 1, N)
    index = {start: 0}
    points = [start]
    reps = [Mat2(1, 0, 0, 1)]
    s_act: list[int] = []
    t_act: list[int] = []
    schreier: list[Mat2] = []
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for gen, table in ((_S, s_act), (_T, t_act)):
            nxt = _step(points[i], gen, N)
            moved = mul(reps[i], gen)
            j = index.get(nxt)
            if j is None:
                j = len(points)
                index[nxt] = j
                points.append(nxt)
                reps.append(moved)
                queue.append(j)
            else:
                # rep_i * gen * rep_j^-1 lies in Gamma0(N); reps have determinant 1
                g = mul(moved, adjugate(reps[j]))
                if (g.b, g.c) != (0, 0) or abs(g.a) != 1:
                    schreier.append(g)
            table.append(j)
    # both action tables are filled in BFS order, which is index order
    graph = CosetGraph(N, tuple(points), tuple(s_act), tuple(t_act))
    log.debug("coset graph N=%d: %d cosets, %d Schreier generators", N, len(points), len(schreier))
    return graph, tuple(reps), tuple(schreier)


def coset_graph(N: int, *, cap: int = DEFAULT_ORACLE_CAP) -> CosetGraph:
    _check_oracle_cap(N, cap)
    return _build_graph(N)[0]


def schreier_generators(N: int, *, cap: int = DEFAULT_ORACLE_CAP) -> list[ProjectiveMatrix]:
    """A finite generating set of Gamma0(N) (up to sign)."""
    _check_oracle_cap(N, cap)
    gens = _build_graph(N)[2]
    if not gens:
        # N = 1: the graph has a single vertex and the loops are S and T themselves
        return [canonicalize(_S), canonicalize(_T)]
    return [canonicalize(g) for g in gens]


def conjugation_normalizes(p: ProjectiveMatrix, N: int, *, cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """p g p^-1 and p^-1 g p lie in +/-Gamma0(N) for every Schreier generator g."""
    gens = schreier_generators(N, cap=cap)
    p_inv = canonicalize(adjugate(p))
    for g in gens:
        if not coset_equal(canonicalize(mul(p, g)), p, N):
            return False
        if not coset_equal(canonicalize(mul(p_inv, g)), p_inv, N):
            return False
    return True
