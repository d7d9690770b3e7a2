"""Report types for one level N, with canonical JSON and CSV row helpers.

Every type is a frozen dataclass with ``to_dict`` / ``from_dict``; ``Report.to_json`` emits the
human-facing form (indent 2, field order preserved) and ``Report.canonical_json`` the
hashing form (sorted keys, compact separators).
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import asdict, dataclass, field
from typing import Any

REPORT_SCHEMA = "norm0-report/1"

CSV_COLUMNS = ("N", "sigma", "q", "v", "epsilon", "order", "claim_AL", "note")


@dataclass(frozen=True)
class RelationVerdict:
    label: str
    word: str
    expected: bool
    observed: bool

    @property
    def ok(self) -> bool:
        return self.expected == self.observed

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "RelationVerdict":
        return cls(str(d["label"]), str(d["word"]), bool(d["expected"]), bool(d["observed"]))


@dataclass(frozen=True)
class FactorVerdict:
    prime: int
    generators: tuple[str, ...]
    relations: tuple[RelationVerdict, ...]
    claimed_order: int | None
    computed_order: int

    @property
    def ok(self) -> bool:
        if not all(r.ok for r in self.relations):
            return False
        return self.claimed_order is None or self.claimed_order == self.computed_order

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "FactorVerdict":
        claimed = d.get("claimed_order")
        return cls(
            int(d["prime"]),
            tuple(str(g) for g in d["generators"]),
            tuple(RelationVerdict.from_dict(r) for r in d["relations"]),
            None if claimed is None else int(claimed),
            int(d["computed_order"]),
        )


@dataclass(frozen=True)
class ClaimVerdict:
    """Direct-product claim outcome; ``stage`` is the first failing check."""

    holds: bool
    stage: str | None = None
    witness: tuple[str, ...] = ()
    detail: str = ""

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ClaimVerdict":
        stage = d.get("stage")
        return cls(
            bool(d["holds"]),
            None if stage is None else str(stage),
            tuple(str(w) for w in d.get("witness") or ()),
            str(d.get("detail") or ""),
        )


@dataclass(frozen=True)
class Commutation:
    a: str
    b: str
    commute: bool

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Commutation":
        return cls(str(d["a"]), str(d["b"]), bool(d["commute"]))


@dataclass(frozen=True)
class BarsSample:
    """element = w_m * omega with omega a word in S_v, w_{2^a}, w_{3^b}."""

    element: str
    m: int
    omega: str

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "BarsSample":
        return cls(str(d["element"]), int(d["m"]), str(d["omega"]))


@dataclass(frozen=True)
class Report:
    N: int
    sigma: int
    q: int
    v: int
    epsilon: int
    order: int
    generators: tuple[str, ...]
    center_order: int
    exponent: int
    factors: tuple[FactorVerdict, ...]
    commutations: tuple[Commutation, ...]
    claim_al: ClaimVerdict
    bars_samples: tuple[BarsSample, ...]
    timing: dict[str, float] = field(default_factory=dict)
    schema: str = REPORT_SCHEMA

    @property
    def structure_ok(self) -> bool:
        return all(f.ok for f in self.factors)

    def to_dict(self) -> dict[str, Any]:
        return _jsonable(asdict(self))

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "Report":
        schema = str(d.get("schema") or "")
        if schema != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {schema!r}")
        return cls(
            N=int(d["N"]),
            sigma=int(d["sigma"]),
            q=int(d["q"]),
            v=int(d["v"]),
            epsilon=int(d["epsilon"]),
            order=int(d["order"]),
            generators=tuple(str(g) for g in d["generators"]),
            center_order=int(d["center_order"]),
            exponent=int(d["exponent"]),
            factors=tuple(FactorVerdict.from_dict(f) for f in d["factors"]),
            commutations=tuple(Commutation.from_dict(c) for c in d["commutations"]),
            claim_al=ClaimVerdict.from_dict(d["claim_al"]),
            bars_samples=tuple(BarsSample.from_dict(b) for b in d["bars_samples"]),
            timing={str(k): float(v) for k, v in (d.get("timing") or {}).items()},
            schema=schema,
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"), ensure_ascii=True)

    def deterministic_hash(self) -> str:
        """sha256 of the canonical JSON without timing."""
        body = self.to_dict()
        body.pop("timing", None)
        blob = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def csv_row(self) -> dict[str, Any]:
        note = "" if self.claim_al.holds else _witness_note(self.claim_al)
        return {
            "N": self.N,
            "sigma": self.sigma,
            "q": self.q,
            "v": self.v,
            "epsilon": self.epsilon,
            "order": self.order,
            "claim_AL": "true" if self.claim_al.holds else "false",
            "note": note,
        }

    def to_text(self) -> str:
        lines = [
            f"N = {self.N}",
            f"  sigma = {self.sigma}, q = {self.q}, epsilon = {self.epsilon}, v = {self.v}",
            f"  |Norm(Gamma0(N))/Gamma0(N)| = {self.order}",
            f"  generators: {', '.join(self.generators) or '(none)'}",
            f"  center order = {self.center_order}, exponent = {self.exponent}",
        ]
        for f in self.factors:
            claimed = "-" if f.claimed_order is None else str(f.claimed_order)
            lines.append(
                f"  factor p={f.prime} <{', '.join(f.generators)}>: order {f.computed_order} (claimed {claimed})"
                f" [{'ok' if f.ok else 'MISMATCH'}]"
            )
            for r in f.relations:
                mark = "ok" if r.ok else "MISMATCH"
                lines.append(f"    {r.label} = 1 : expected {_tf(r.expected)}, observed {_tf(r.observed)} [{mark}]")
        for c in self.commutations:
            lines.append(f"  {c.a} and {c.b} {'commute' if c.commute else 'do not commute'}")
        lines.append(f"  claim_AL: {_tf(self.claim_al.holds)}")
        if not self.claim_al.holds:
            lines.append(f"    {_witness_note(self.claim_al)}")
        for b in self.bars_samples:
            lines.append(f"  {b.element} = w{b.m} * ({b.omega})")
        return "\n".join(lines) + "\n"


def _tf(x: bool) -> str:
    return "true" if x else "false"


def _witness_note(claim: ClaimVerdict) -> str:
    parts = [claim.stage or "failed"]
    if claim.witness:
        parts.append("witness " + " / ".join(claim.witness))
    if claim.detail:
        parts.append(claim.detail)
    return "; ".join(parts)


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value
