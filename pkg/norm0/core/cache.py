"""On-disk cache of enumerated groups and their reports, one JSON file per level.

Payload (schema ``norm0-cache/1``)::

    {"schema", "N", "generators": [{"name", "matrix"}], "elements", "words", "cayley",
     "report", "sha256"}

``sha256`` covers the canonical JSON of everything else.  A payload that fails any check
raises :class:`CacheCorrupt` internally; :meth:`StructureCache.load` logs it and returns
None so callers recompute.  Writes go to a temp file in the same directory, then
``os.replace`` (last writer wins).
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .errors import CacheCorrupt
from .exact import Mat2, canonicalize
from .group_engine import QuotientGroup
from .normalizer import GeneratorSet
from .report import Report

log = logging.getLogger(__name__)

CACHE_SCHEMA = "norm0-cache/1"
DEFAULT_CACHE_DIR = ".norm0-cache"


@dataclass(frozen=True)
class CacheEntry:
    group: QuotientGroup
    report: Report


def _digest(body: dict[str, Any]) -> str:
    blob = json.dumps(body, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def payload_for(G: QuotientGroup, report: Report) -> dict[str, Any]:
    body: dict[str, Any] = {
        "schema": CACHE_SCHEMA,
        "N": G.N,
        "generators": [{"name": n, "matrix": list(m.entries())} for n, m in G.gens],
        "elements": [list(el.rep.entries()) for el in G.elements],
        "words": [str(w) for w in G.words],
        "cayley": G.cayley.tolist(),
        "report": report.to_dict(),
    }
    body["sha256"] = _digest(body)
    return body


def entry_from_payload(payload: Any, N: int) -> CacheEntry:
    """Validate and rebuild; any failure becomes CacheCorrupt."""
    try:
        if not isinstance(payload, dict):
            raise CacheCorrupt("payload is not a JSON object")
        body = dict(payload)
        stored = body.pop("sha256", None)
        if body.get("schema") != CACHE_SCHEMA:
            raise CacheCorrupt(f"unexpected schema {body.get('schema')!r}")
        if int(body["N"]) != N:
            raise CacheCorrupt(f"payload is for level {body['N']}, expected {N}")
        if stored != _digest(body):
            raise CacheCorrupt("checksum mismatch")
        gens = GeneratorSet(
            N,
            tuple(str(g["name"]) for g in body["generators"]),
            tuple(canonicalize(Mat2(*(int(x) for x in g["matrix"]))) for g in body["generators"]),
        )
        reps = [canonicalize(Mat2(*(int(x) for x in e))) for e in body["elements"]]
        group = QuotientGroup.from_tables(N, reps, body["cayley"], gens, [str(w) for w in body["words"]])
        report = Report.from_dict(body["report"])
        if report.N != N or report.order != len(group):
            raise CacheCorrupt("report does not match the stored group")
        return CacheEntry(group, report)
    except CacheCorrupt:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise CacheCorrupt(f"invalid cache payload: {exc}") from exc


class StructureCache:
    def __init__(self, root: str | os.PathLike[str] = DEFAULT_CACHE_DIR) -> None:
        self.root = Path(root)

    def path_for(self, N: int) -> Path:
        return self.root / f"N{N}.json"

    def load(self, N: int) -> CacheEntry | None:
        path = self.path_for(N)
        if not path.exists():
            log.debug("cache miss for N=%d (%s)", N, path)
            return None
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
            entry = entry_from_payload(payload, N)
        except (OSError, json.JSONDecodeError, CacheCorrupt) as exc:
            log.warning("ignoring corrupt cache file %s: %s", path, exc)
            return None
        log.debug("cache hit for N=%d", N)
        return entry

    def store(self, G: QuotientGroup, report: Report) -> Path:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self.path_for(G.N)
        text = json.dumps(payload_for(G, report), separators=(",", ":"))
        with tempfile.NamedTemporaryFile(
            "w", encoding="utf-8", dir=self.root, prefix=f".N{G.N}.", suffix=".tmp", delete=False
        ) as tmp:
            tmp.write(text)
            tmp_name = tmp.name
        try:
            os.replace(tmp_name, path)
        except OSError:
            Path(tmp_name).unlink(missing_ok=True)
            raise
        log.debug("cached N=%d at %s", G.N, path)
        return path
