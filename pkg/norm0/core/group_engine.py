"""Enumerate Norm(Gamma0(N))/Gamma0(N) (or a subgroup) and answer group queries on it.

``close`` runs a BFS from the identity, right-multiplying by each generator; new cosets are
detected with fingerprint buckets plus exact :func:`coset_equal` inside a bucket.  Only
|G| * k exact products are formed.  The full Cayley table is then derived from the generator
edge table along the BFS tree: element j = parent(j) * g, so column j of the table is
``edges[column parent(j), g]``.

All queries after construction are integer-table lookups (numpy).
"""

from __future__ import annotations

import logging
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded, NotASubgroup, Norm0Error, UnknownGenerator
from .exact import DEFAULT_FACTOR_CAP, PROJECTIVE_IDENTITY, ProjectiveMatrix, pmul
from .gamma0 import CosetElement, Fingerprint, coset_equal, fingerprint
from .normalizer import GeneratorSet, element_by_name
from .words import Word, parse_word

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**5


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """Enumerated finite group; element 0 is the identity.

    ``cayley[i, j]`` is the index of element_i * element_j and ``words[i]`` is a shortest word
    in the generator names evaluating to element i.
    """

    N: int
    elements: tuple[CosetElement, ...]
    cayley: np.ndarray
    inv: np.ndarray
    gens: GeneratorSet
    gen_index: tuple[int, ...]
    words: tuple[Word, ...]
    _buckets: dict[Fingerprint, list[int]] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        for arr in (self.cayley, self.inv):
            arr.flags.writeable = False
        if not self._buckets:
            buckets: dict[Fingerprint, list[int]] = {}
            for i, el in enumerate(self.elements):
                buckets.setdefault(el.fp, []).append(i)
            object.__setattr__(self, "_buckets", buckets)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def from_tables(
        cls,
        N: int,
        reps: Sequence[ProjectiveMatrix],
        cayley: Sequence[Sequence[int]],
        gens: GeneratorSet,
        words: Sequence[str],
    ) -> "QuotientGroup":
        """Rebuild a group from stored tables (cache payloads); validates shape and axioms cheaply."""
        n = len(reps)
        table = np.asarray(cayley, dtype=np.int64)
        if table.shape != (n, n) or len(words) != n or n == 0:
            raise ValueError(f"inconsistent table shapes: {table.shape} for {n} elements")
        if table.min() < 0 or table.max() >= n:
            raise ValueError("Cayley table entries out of range")
        if not (table[0] == np.arange(n)).all() or not (table[:, 0] == np.arange(n)).all():
            raise ValueError("element 0 is not the identity")
        if not all((np.sort(row) == np.arange(n)).all() for row in table):
            raise ValueError("Cayley table rows are not permutations")
        elements = tuple(CosetElement.of(p, N) for p in reps)
        gen_index = []
        for _, mat in gens:
            hit = _locate(elements, _bucket_map(elements), mat, N)
            if hit is None:
                raise ValueError(f"generator {mat} is not among the stored elements")
            gen_index.append(hit)
        inv = np.argmax(table == 0, axis=1)
        return cls(N, elements, table, inv, gens, tuple(gen_index), tuple(parse_word(w) for w in words))


def _bucket_map(elements: Sequence[CosetElement]) -> dict[Fingerprint, list[int]]:
    buckets: dict[Fingerprint, list[int]] = {}
    for i, el in enumerate(elements):
        buckets.setdefault(el.fp, []).append(i)
    return buckets


def _locate(
    elements: Sequence[CosetElement], buckets: dict[Fingerprint, list[int]], p: ProjectiveMatrix, N: int
) -> int | None:
    for i in buckets.get(fingerprint(p, N), ()):
        if coset_equal(elements[i].rep, p, N):
            return i
    return None


def close(gens: GeneratorSet, *, budget: int = DEFAULT_BUDGET) -> QuotientGroup:
    """BFS closure of ``gens``; element order is BFS layer, then generator order."""
    N = gens.N
    elements: list[CosetElement] = [CosetElement.of(PROJECTIVE_IDENTITY, N)]
    buckets: dict[Fingerprint, list[int]] = {elements[0].fp: [0]}
    words: list[Word] = [Word()]
    parent = [-1]
    via = [-1]
    edges: list[list[int]] = []
    names = gens.names
    i = 0
    while i < len(elements):
        row: list[int] = []
        for k, (name, g) in enumerate(gens):
            prod = pmul(elements[i].rep, g)
            j = _locate(elements, buckets, prod, N)
            if j is None:
                if len(elements) >= budget:
                    raise BudgetExceeded(f"closure at level {N} exceeded the budget of {budget} elements")
                j = len(elements)
                el = CosetElement.of(prod, N)
                elements.append(el)
                buckets.setdefault(el.fp, []).append(j)
                words.append(words[i].append(names[k]))
                parent.append(i)
                via.append(k)
            row.append(j)
        edges.append(row)
        i += 1

    n = len(elements)
    edge_arr = np.asarray(edges, dtype=np.int64).reshape(n, len(gens))
    table = np.empty((n, n), dtype=np.int64)
    table[:, 0] = np.arange(n)
    for j in range(1, n):
        table[:, j] = edge_arr[table[:, parent[j]], via[j]]
    inv = np.argmax(table == 0, axis=1)
    gen_index = tuple(int(edge_arr[0, k]) for k in range(len(gens)))
    log.info("closed group at N=%d: %d elements from %d generators", N, n, len(gens))
    return QuotientGroup(N, tuple(elements), table, inv, gens, gen_index, tuple(words), buckets)


# ---------------------------------------------------------------------------
# Elementary queries
# ---------------------------------------------------------------------------


def identity(G: QuotientGroup) -> int:
    return 0


def op(G: QuotientGroup, i: int, j: int) -> int:
    return int(G.cayley[i, j])


def inverse(G: QuotientGroup, i: int) -> int:
    return int(G.inv[i])


def power(G: QuotientGroup, i: int, k: int) -> int:
    if k < 0:
        i, k = inverse(G, i), -k
    out = 0
    base = i
    while k:
        if k & 1:
            out = op(G, out, base)
        base = op(G, base, base)
        k >>= 1
    return out


def element_order(G: QuotientGroup, i: int) -> int:
    k, x = 1, i
    while x != 0:
        x = op(G, x, i)
        k += 1
    return k


def orders(G: QuotientGroup) -> list[int]:
    return [element_order(G, i) for i in range(len(G))]


def commutes(G: QuotientGroup, i: int, j: int) -> bool:
    return bool(G.cayley[i, j] == G.cayley[j, i])


def center(G: QuotientGroup) -> frozenset[int]:
    mask = np.all(G.cayley == G.cayley.T, axis=1)
    return frozenset(int(i) for i in np.flatnonzero(mask))


def is_abelian(G: QuotientGroup) -> bool:
    return bool((G.cayley == G.cayley.T).all())


def exponent(G: QuotientGroup) -> int:
    return math.lcm(*orders(G))


def order_profile(G: QuotientGroup) -> dict[int, int]:
    """Number of elements of each order, keyed by order ascending."""
    return dict(sorted(Counter(orders(G)).items()))


# ---------------------------------------------------------------------------
# Names and words
# ---------------------------------------------------------------------------


def locate(G: QuotientGroup, p: ProjectiveMatrix) -> int | None:
    return _locate(G.elements, G._buckets, p, G.N)


def resolve(G: QuotientGroup, name: str, *, cap: int = DEFAULT_FACTOR_CAP) -> int:
    """Generator names first, then ``w<m>`` / ``S<k>`` built from the normalizer."""
    if name in G.gens.names:
        return G.gen_index[G.gens.names.index(name)]
    try:
        mat = element_by_name(G.N, name, cap=cap)
    except UnknownGenerator:
        raise
    except Norm0Error as exc:
        raise UnknownGenerator(f"{name} is not available at level {G.N}: {exc}") from exc
    hit = locate(G, mat)
    if hit is None:
        raise UnknownGenerator(f"{name} is not an element of this group at level {G.N}")
    return hit


def eval_word(G: QuotientGroup, w: Word | str) -> int:
    """Left-to-right product of generator powers."""
    word = parse_word(w) if isinstance(w, str) else w
    out = 0
    cache: dict[str, int] = {}
    for name, k in word.letters:
        if name not in cache:
            cache[name] = resolve(G, name)
        out = op(G, out, power(G, cache[name], k))
    return out


def is_relation(G: QuotientGroup, w: Word | str) -> bool:
    return eval_word(G, w) == 0


def rep_of(G: QuotientGroup, i: int) -> ProjectiveMatrix:
    return G.elements[i].rep


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------


def subgroup(G: QuotientGroup, seeds: Iterable[int]) -> frozenset[int]:
    """Closure of ``seeds`` under the group law (finite, so inverses come for free)."""
    gens = sorted(set(int(s) for s in seeds))
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = op(G, x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def span(G: QuotientGroup, names: Sequence[str]) -> dict[int, Word]:
    """Subgroup generated by named elements, with a shortest word per member."""
    seeds = [(name, resolve(G, name)) for name in names]
    found: dict[int, Word] = {0: Word()}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for name, g in seeds:
            y = op(G, x, g)
            if y not in found:
                found[y] = found[x].append(name)
                queue.append(y)
    return found


def is_closed(G: QuotientGroup, subset: Iterable[int]) -> bool:
    idx = np.fromiter(sorted(set(subset)), dtype=np.int64)
    if idx.size == 0 or 0 not in idx:
        return False
    return bool(np.isin(G.cayley[np.ix_(idx, idx)], idx).all())


@dataclass(frozen=True)
class DirectProductVerdict:
    """Outcome of the internal direct product test.

    ``stage`` names the first failing check ("commuting", "order", "intersection") and
    ``witness`` holds the offending element indices.
    """

    holds: bool
    stage: str | None = None
    witness: tuple[int, ...] = ()
    detail: str = ""


def internal_direct_product(
    G: QuotientGroup,
    factors: Sequence[Iterable[int]],
    *,
    factor_gens: Sequence[Sequence[int]] | None = None,
) -> DirectProductVerdict:
    """Is G the internal direct product of ``factors``?

    Commutation is tested on ``factor_gens`` when given (generators commuting implies the
    generated subgroups commute elementwise), otherwise on all element pairs.
    """
    sets = [frozenset(int(x) for x in f) for f in factors]
    for k, f in enumerate(sets):
        if not is_closed(G, f):
            raise NotASubgroup(f"factor {k} ({len(f)} elements) is not closed under the group law")
    probes = [sorted(set(g)) for g in factor_gens] if factor_gens is not None else [sorted(f) for f in sets]

    for a in range(len(probes)):
        for b in range(a + 1, len(probes)):
            for x in probes[a]:
                for y in probes[b]:
                    if not commutes(G, x, y):
                        return DirectProductVerdict(
                            False, "commuting", (x, y), f"elements {x} and {y} of factors {a} and {b} do not commute"
                        )

    total = math.prod(len(f) for f in sets)
    if total != len(G):
        return DirectProductVerdict(False, "order", (), f"factor orders multiply to {total}, group order is {len(G)}")

    for k, f in enumerate(sets):
        others = subgroup(G, (x for j, g in enumerate(sets) if j != k for x in g))
        common = sorted((f & others) - {0})
        if common:
            return DirectProductVerdict(
                False, "intersection", (common[0],), f"factor {k} meets the other factors in {len(common) + 1} elements"
            )
    return DirectProductVerdict(True)


def regular_representation(G: QuotientGroup) -> list[tuple[int, ...]]:
    """One permutation per generator: point i+1 goes to op(g, i)+1."""
    return [tuple(int(x) + 1 for x in G.cayley[g, :]) for g in G.gen_index]
