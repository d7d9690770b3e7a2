"""Predicted factor structures, their verification, the direct-product claim and w = w_m * Omega.

Two predictions are encoded as relation tables:

* ``claim8``: the original direct-product statement, per prime factor.
* ``barsfi``: the corrected product statement, including the relations stated *not* to hold
  (entries with ``expected=False``).

Tables are keyed by the case of lambda = v2(N) (or kappa = v3(N)); ``{w}`` and ``{S}`` in a
template are the factor's Atkin-Lehner involution and shift names.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from typing import Sequence

from .errors import DecompositionFailed, NotInNormalizer, ShiftNotInNormalizer
from .exact import DEFAULT_FACTOR_CAP, ProjectiveMatrix, exact_divisors, factorize, squarefree_decompose
from .gamma0 import epsilon, v_params
from .group_engine import (
    DEFAULT_BUDGET,
    QuotientGroup,
    center,
    close,
    commutes,
    eval_word,
    exponent,
    internal_direct_product,
    inverse,
    locate,
    op,
    resolve,
    span,
)
from .normalizer import canonical_generators
from .report import BarsSample, ClaimVerdict, Commutation, FactorVerdict, RelationVerdict, Report
from .words import Word, parse_word

log = logging.getLogger(__name__)

SOURCES = ("claim8", "barsfi")

_SQUARE = "{w}^2"
_CUBE_PRODUCT = "({w} {S})^3"
_FOURTH_PRODUCT = "({w} {S})^4"
_COMMUTE = "{S} ({w} {S} {w}) {S}^-1 ({w} {S} {w})^-1"
_EXOTIC = "{w} {S} {w} {S} {w} {S}^3 {w} {S}^3"

# (relation template, expected) rows and the claimed order; "{u}" is the shift order
_THREE_PART: dict[str, tuple[tuple[tuple[str, bool], ...], int | None]] = {
    "kappa1": (((_SQUARE, True),), 2),
    "kappa2": (((_SQUARE, True), ("{S}^3", True), (_CUBE_PRODUCT, True)), 12),
    "kappa3+": (((_SQUARE, True), ("{S}^3", True), (_COMMUTE, True)), 18),
}

_TWO_PART_CLAIM: dict[str, tuple[tuple[tuple[str, bool], ...], int | None]] = {
    "lambda1": (((_SQUARE, True),), 2),
    "c2": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True)), 6),
    "c4": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True)), 24),
    "c6": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True)), 96),
    "d": (((_SQUARE, True), ("{S}^{u}", True), (_COMMUTE, True)), None),  # order 2u^2, filled in below
}

_TWO_PART_CORRECTED: dict[str, tuple[tuple[tuple[str, bool], ...], int | None]] = {
    "lambda1": (((_SQUARE, True),), 2),
    "c2": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True)), 6),
    "c4": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True)), 24),
    "c6": (((_SQUARE, True), ("{S}^{u}", True), (_CUBE_PRODUCT, True), (_COMMUTE, False)), 96),
    "d3": (((_SQUARE, True), ("{S}^{u}", True), (_FOURTH_PRODUCT, True), (_COMMUTE, True)), 8),
    "d5": (((_SQUARE, True), ("{S}^{u}", True), (_FOURTH_PRODUCT, True), (_COMMUTE, False)), None),
    "d7": (((_SQUARE, True), ("{S}^{u}", True), (_FOURTH_PRODUCT, True), (_COMMUTE, False)), None),
    "lambda8": (
        ((_SQUARE, True), ("{S}^{u}", True), (_EXOTIC, True), (_CUBE_PRODUCT, False), (_COMMUTE, False)),
        None,
    ),
    "lambda9+odd": (((_SQUARE, True), ("{S}^{u}", True), (_COMMUTE, True), (_FOURTH_PRODUCT, False)), None),
    "lambda10+even": (((_SQUARE, True), ("{S}^{u}", True), (_COMMUTE, True), (_CUBE_PRODUCT, False)), None),
}


@dataclass(frozen=True)
class Relation:
    label: str
    word: Word
    expected: bool = True


@dataclass(frozen=True)
class FactorDescriptor:
    prime: int
    generators: tuple[str, ...]
    relations: tuple[Relation, ...]
    order: int | None
    source: str


@dataclass(frozen=True)
class StructureDescriptor:
    N: int
    source: str
    factors: tuple[FactorDescriptor, ...]
    direct_product: bool

    def factor(self, prime: int) -> FactorDescriptor | None:
        for f in self.factors:
            if f.prime == prime:
                return f
        return None


def _relations(rows: Sequence[tuple[str, bool]], **names: object) -> tuple[Relation, ...]:
    out = []
    for template, expected in rows:
        text = template.format(**names)
        out.append(Relation(text, parse_word(text), expected))
    return tuple(out)


def _two_part_case(lam: int, source: str) -> str:
    if lam == 1:
        return "lambda1"
    if source == "claim8":
        return f"c{lam}" if lam in (2, 4, 6) else "d"
    if lam <= 7:
        return f"c{lam}" if lam % 2 == 0 else f"d{lam}"
    if lam == 8:
        return "lambda8"
    return "lambda9+odd" if lam % 2 else "lambda10+even"


def predicted_structure(N: int, source: str = "barsfi", *, cap: int = DEFAULT_FACTOR_CAP) -> StructureDescriptor:
    """Transcribe the per-prime case analysis for ``source`` into relation words."""
    if source not in SOURCES:
        raise ValueError(f"unknown structure source {source!r}; expected one of {SOURCES}")
    factors: list[FactorDescriptor] = []
    for p, e in factorize(N, cap=cap).factors:
        w = f"w{p**e}"
        if p == 2:
            u = 2 ** min(3, e // 2)
            rows, order = (_TWO_PART_CLAIM if source == "claim8" else _TWO_PART_CORRECTED)[_two_part_case(e, source)]
            if source == "claim8" and e > 1 and e not in (2, 4, 6):
                order = 2 * u * u
            gens = (w,) if e == 1 else (w, f"S{u}")
            rels = _relations(rows, w=w, S=f"S{u}", u=u)
        elif p == 3:
            rows, order = _THREE_PART["kappa1" if e == 1 else "kappa2" if e == 2 else "kappa3+"]
            gens = (w,) if e == 1 else (w, "S3")
            rels = _relations(rows, w=w, S="S3")
        else:
            rows, order = ((_SQUARE, True),), 2
            gens = (w,)
            rels = _relations(rows, w=w)
        factors.append(FactorDescriptor(p, gens, rels, order, source))
    return StructureDescriptor(N, source, tuple(factors), source == "claim8")


def full_quotient(N: int, *, budget: int = DEFAULT_BUDGET, cap: int = DEFAULT_FACTOR_CAP) -> QuotientGroup:
    return close(canonical_generators(N, cap=cap), budget=budget)


def _verify_factor(G: QuotientGroup, f: FactorDescriptor) -> FactorVerdict:
    rels = tuple(
        RelationVerdict(r.label, str(r.word), r.expected, eval_word(G, r.word) == 0) for r in f.relations
    )
    return FactorVerdict(f.prime, f.generators, rels, f.order, len(span(G, f.generators)))


def verify_structure(
    N: int,
    source: str = "barsfi",
    G: QuotientGroup | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_FACTOR_CAP,
) -> tuple[FactorVerdict, ...]:
    """Check every relation, non-relation and claimed order of ``source`` in the full quotient."""
    if G is None:
        G = full_quotient(N, budget=budget, cap=cap)
    desc = predicted_structure(N, source, cap=cap)
    return tuple(_verify_factor(G, f) for f in desc.factors)


def check_claim_AL(
    N: int,
    G: QuotientGroup | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_FACTOR_CAP,
) -> ClaimVerdict:
    """Direct-product claim; checks run as relations, orders, commuting, then intersection."""
    if G is None:
        G = full_quotient(N, budget=budget, cap=cap)
    desc = predicted_structure(N, "claim8", cap=cap)
    verdicts = [_verify_factor(G, f) for f in desc.factors]

    for f in verdicts:
        for r in f.relations:
            if not r.ok:
                return ClaimVerdict(False, "relations", (r.label,), f"relation {r.label} = 1 fails in the {f.prime}-factor")
    for f in verdicts:
        if f.claimed_order is not None and f.claimed_order != f.computed_order:
            return ClaimVerdict(
                False,
                "orders",
                (f"<{', '.join(f.generators)}>",),
                f"{f.prime}-factor has order {f.computed_order}, claimed {f.claimed_order}",
            )

    gen_idx = [[resolve(G, name) for name in f.generators] for f in desc.factors]
    for a in range(len(desc.factors)):
        for b in range(a + 1, len(desc.factors)):
            for x_name, x in zip(desc.factors[a].generators, gen_idx[a]):
                for y_name, y in zip(desc.factors[b].generators, gen_idx[b]):
                    if not commutes(G, x, y):
                        return ClaimVerdict(False, "commuting", (x_name, y_name), f"{x_name} does not commute with {y_name}")

    subgroups = [span(G, f.generators).keys() for f in desc.factors]
    dp = internal_direct_product(G, subgroups, factor_gens=gen_idx)
    if not dp.holds:
        stage = "intersection" if dp.stage == "intersection" else "product"
        witness = tuple(str(G.words[i]) for i in dp.witness)
        return ClaimVerdict(False, stage, witness, dp.detail)
    return ClaimVerdict(True)


def commutation_table(G: QuotientGroup, desc: StructureDescriptor) -> tuple[Commutation, ...]:
    """Pairwise commutation between generators of distinct factors."""
    out: list[Commutation] = []
    for a in range(len(desc.factors)):
        for b in range(a + 1, len(desc.factors)):
            for x in desc.factors[a].generators:
                for y in desc.factors[b].generators:
                    out.append(Commutation(x, y, commutes(G, resolve(G, x), resolve(G, y))))
    return tuple(out)


# ---------------------------------------------------------------------------
# w = w_m * Omega
# ---------------------------------------------------------------------------


def omega_names(N: int, *, cap: int = DEFAULT_FACTOR_CAP) -> tuple[str, ...]:
    """S_{v(N)}, w_{2^a}, w_{3^b}: the generators of the Omega part."""
    fac = factorize(N, cap=cap)
    names: list[str] = []
    v = v_params(N).v
    if v > 1:
        names.append(f"S{v}")
    for p in (2, 3):
        e = fac.exponent(p)
        if e:
            names.append(f"w{p**e}")
    return tuple(names)


class Decomposer:
    """Writes elements of the full quotient as w_m * Omega with gcd(m, 6) = 1."""

    def __init__(self, G: QuotientGroup, *, cap: int = DEFAULT_FACTOR_CAP) -> None:
        self.G = G
        self.omega = span(G, omega_names(G.N, cap=cap))
        self.candidates = [
            (m, 0 if m == 1 else resolve(G, f"w{m}", cap=cap))
            for m in exact_divisors(G.N, cap=cap)
            if math.gcd(m, 6) == 1
        ]

    def decompose_index(self, i: int) -> tuple[int, Word]:
        for m, wm in self.candidates:
            rest = op(self.G, inverse(self.G, wm), i)
            word = self.omega.get(rest)
            if word is not None:
                return m, word
        raise DecompositionFailed(f"no w_m * Omega form for element {self.G.words[i]} at level {self.G.N}")

    def decompose(self, p: ProjectiveMatrix) -> tuple[int, Word]:
        i = locate(self.G, p)
        if i is None:
            raise NotInNormalizer(f"{p} is not an element of the quotient at level {self.G.N}")
        return self.decompose_index(i)


def bars_decompose(N: int, p: ProjectiveMatrix, G: QuotientGroup | None = None, **kw: int) -> tuple[int, Word]:
    """(m, omega) with p = w_m * omega in the quotient; m is the least such exact divisor."""
    if G is None:
        G = full_quotient(N, **kw)
    return Decomposer(G).decompose(p)


# ---------------------------------------------------------------------------
# Commutation rules between w_{p^n} and S_3, S_4, S_8
# ---------------------------------------------------------------------------


def commutation_rule(N: int, pn: int, shift_order: int) -> int:
    """Predicted k in w_{p^n} S_h = S_h^k w_{p^n}: k = p^n mod h."""
    if shift_order not in (3, 4, 8):
        raise ValueError(f"shift order must be 3, 4 or 8, got {shift_order}")
    if math.gcd(pn, shift_order) != 1:
        raise ValueError(f"{pn} is not coprime to {shift_order}")
    v = v_params(N).v
    if v % shift_order:
        raise ShiftNotInNormalizer(f"{shift_order} does not divide v({N})={v}")
    return pn % shift_order


def verify_commutation_rule(G: QuotientGroup, pn: int, shift_order: int) -> bool:
    k = commutation_rule(G.N, pn, shift_order)
    lhs = eval_word(G, f"w{pn} S{shift_order}")
    rhs = eval_word(G, f"S{shift_order}^{k} w{pn}")
    return lhs == rhs


# ---------------------------------------------------------------------------
# Report
# ---------------------------------------------------------------------------

MAX_BARS_SAMPLES = 8


def build_report(
    N: int,
    G: QuotientGroup | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    cap: int = DEFAULT_FACTOR_CAP,
) -> Report:
    t0 = time.perf_counter()
    if G is None:
        G = full_quotient(N, budget=budget, cap=cap)
    t_close = time.perf_counter() - t0

    sqf = squarefree_decompose(N, cap=cap)
    desc = predicted_structure(N, "barsfi", cap=cap)
    factors = tuple(_verify_factor(G, f) for f in desc.factors)
    claim = check_claim_AL(N, G, cap=cap)
    decomposer = Decomposer(G, cap=cap)
    samples = []
    for i in range(min(MAX_BARS_SAMPLES, len(G))):
        m, word = decomposer.decompose_index(i)
        samples.append(BarsSample(str(G.words[i]), m, str(word)))

    report = Report(
        N=N,
        sigma=sqf.sigma,
        q=sqf.q,
        v=v_params(N).v,
        epsilon=epsilon(N, cap=cap),
        order=len(G),
        generators=G.gens.names,
        center_order=len(center(G)),
        exponent=exponent(G),
        factors=factors,
        commutations=commutation_table(G, desc),
        claim_al=claim,
        bars_samples=tuple(samples),
        timing={"close_s": round(t_close, 6), "total_s": round(time.perf_counter() - t0, 6)},
    )
    log.info("report N=%d: order %d, claim_AL %s", N, report.order, claim.holds)
    return report
