"""Cayley table exports: JSON, a GAP permutation-group script, and a Graphviz DOT graph."""

from __future__ import annotations

import json
import warnings
from typing import Any

from .group_engine import QuotientGroup, regular_representation

CAYLEY_SCHEMA = "norm0-cayley/1"
DOT_NODE_CAP = 500

_PALETTE = ("red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan")


def cayley_payload(G: QuotientGroup) -> dict[str, Any]:
    return {
        "schema": CAYLEY_SCHEMA,
        "N": G.N,
        "order": len(G),
        "generators": [{"name": n, "index": i} for n, i in zip(G.gens.names, G.gen_index)],
        "elements": [list(el.rep.entries()) for el in G.elements],
        "words": [str(w) for w in G.words],
        "table": G.cayley.tolist(),
    }


def to_json(G: QuotientGroup) -> str:
    return json.dumps(cayley_payload(G), indent=2) + "\n"


def cycles(perm: tuple[int, ...]) -> str:
    """Cycle notation of a 1-based permutation given as images; ``()`` for the identity."""
    seen = set()
    parts: list[str] = []
    for start in range(1, len(perm) + 1):
        if start in seen or perm[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        x = perm[start - 1]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = perm[x - 1]
        parts.append("(" + ",".join(str(c) for c in cyc) + ")")
    return "".join(parts) or "()"


def to_gap(G: QuotientGroup) -> str:
    """Regular permutation representation as a GAP script that checks the group order."""
    lines = [
        f"# Norm(Gamma0({G.N}))/Gamma0({G.N}) in its regular representation, degree {len(G)}",
    ]
    names = []
    for name, perm in zip(G.gens.names, regular_representation(G)):
        ident = f"g_{name}"
        names.append(ident)
        lines.append(f"{ident} := {cycles(perm)};")
    gens = ", ".join(names) if names else "()"
    lines.append(f"G := Group({gens});")
    lines.append(f"if Size(G) <> {len(G)} then Error(\"unexpected group order\"); fi;")
    return "\n".join(lines) + "\n"


def to_dot(G: QuotientGroup, *, node_cap: int = DOT_NODE_CAP) -> str:
    """Cayley graph: one node per element, one colored edge set per generator."""
    n = len(G)
    if n > node_cap:
        warnings.warn(f"Cayley graph has {n} nodes; exporting only the first {node_cap}", stacklevel=2)
        n = node_cap
    lines = [f'digraph "G{G.N}" {{', "  node [shape=circle, fontsize=9];"]
    for i in range(n):
        lines.append(f'  {i} [label="{i}", tooltip="{G.words[i]}"];')
    for k, (name, g) in enumerate(zip(G.gens.names, G.gen_index)):
        color = _PALETTE[k % len(_PALETTE)]
        for i in range(n):
            j = int(G.cayley[i, g])
            if j < n:
                lines.append(f'  {i} -> {j} [color={color}, label="{name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
