"""Structured report documents for the command-line surface.

Every numeric result carries its provenance: values computed here are
tagged "computed"; values recorded from the reference examples are tagged
"reference" and compared, yielding a status of match, mismatch, or flagged
(a recorded reference value known to be internally inconsistent is never
"matched", only flagged with an explanation).
"""

from __future__ import annotations

import hashlib
import json
import time
from typing import Any

from .autsearch import automorphism_group
from .codes import (
    LinearCode,
    classify,
    css_from_pair,
    css_parameters,
    minimum_distance,
)
from .gf2 import BitMatrix
from .logical import fourier_report, phase_action
from .matgroups import MatrixGroup, sl_order
from .perms import PermGroup
from .structure import GateGroupAnalysis, analyze_gate_group

SCHEMA = "autgates-report-v1"


def make_document(command: str, inputs: dict[str, str], results: dict,
                  claims: list[dict] | None = None, meta: bool = True) -> dict:
    doc: dict[str, Any] = {
        "schema": SCHEMA,
        "command": command,
        "inputs": inputs,
        "results": results,
        "claims": claims or [],
    }
    if meta:
        doc["meta"] = {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S")}
    return doc


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def claim(name: str, computed, reference, note: str = "") -> dict:
    if computed == reference:
        status = "match"
    elif note:
        status = "flagged"
    else:
        status = "mismatch"
    entry = {
        "name": name,
        "computed": _jsonable(computed),
        "reference": _jsonable(reference),
        "status": status,
    }
    if note:
        entry["note"] = note
    return entry


def _jsonable(v):
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, BitMatrix):
        return v.to_strings()
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, int):
        return v if abs(v) < 2**53 else str(v)
    return str(v)


def render_text(doc: dict) -> str:
    lines = [f"== {doc['command']} =="]
    for key, val in doc["inputs"].items():
        lines.append(f"input {key}: {val}")
    lines.append("")
    lines.extend(_render_block(doc["results"], indent=0))
    if doc["claims"]:
        lines.append("")
        lines.append("reference comparison:")
        for c in doc["claims"]:
            line = (
                f"  [{c['status']:>8}] {c['name']}: computed {c['computed']}"
            )
            if c["status"] != "match":
                line += f" vs reference {c['reference']}"
            if c.get("note"):
                line += f"  ({c['note']})"
            lines.append(line)
    return "\n".join(lines) + "\n"


def _render_block(results: dict, indent: int) -> list[str]:
    pad = " " * indent
    lines = []
    for key, val in results.items():
        if isinstance(val, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_render_block(val, indent + 2))
        elif isinstance(val, list) and val and isinstance(val[0], str) and len(val) > 4:
            lines.append(f"{pad}{key}:")
            lines.extend(f"{pad}  {row}" for row in val)
        else:
            lines.append(f"{pad}{key}: {val}")
    return lines


# ---------------------------------------------------------------------------
# Per-command result builders (thin wrappers over the library)


def info_results(C: LinearCode) -> dict:
    cls = classify(C)
    results = {
        "n": C.n,
        "k": C.k,
        "generator": C.generator.to_strings(),
        "self_orthogonal": cls.self_orthogonal,
        "doubly_even": cls.doubly_even,
        "contains_all_one": cls.contains_all_one,
    }
    if 1 <= C.k and min(C.k, C.n - C.k) <= 24:
        results["minimum_distance"] = minimum_distance(C)
    return results


def aut_results(C: LinearCode, group: PermGroup) -> dict:
    return {
        "n": C.n,
        "k": C.k,
        "order": _jsonable(group.order()),
        "num_generators": len(group.generators),
        "generators": [str(g) for g in group.generators],
        "base": list(group.base()),
    }


def css_results(css) -> dict:
    params = css_parameters(css)
    four = fourier_report(css)
    out = {
        "n": params.n,
        "k": params.k,
        "d": params.d,
        "fourier_applicable": four.applicable,
        "fourier_effect": four.effect,
    }
    if classify(css.c2).doubly_even and css.k <= 12:
        residues = phase_action(css)
        out["phase_residues_mod4"] = {
            "constant_per_coset": True,
            "residue_counts": {
                str(r): residues.count(r) for r in sorted(set(residues))
            },
        }
    else:
        out["phase_gate"] = (
            "inner code not doubly even: transversal phase gate is not "
            "diagonal on the logical basis"
        )
    return out


def analysis_results(an: GateGroupAnalysis) -> dict:
    k = an.css.k
    return {
        "css": {"n": an.css.n, "k": k},
        "aut_order": _jsonable(an.aut_order),
        "logical_image_order": _jsonable(an.single_block_order),
        "algebra_dimension": an.algebra.dimension,
        "algebra_full": an.algebra.dimension == k * k,
        "invariant_block_dimensions": an.block_dimensions,
        "two_block_group_order": _jsonable(an.g12_order),
        "two_block_certificate": an.g12_certificate,
        "block2_stabilizer_order": _jsonable(an.block2_stabilizer_order),
        "per_block_group_orders": [_jsonable(o) for o in an.stabilizer_block_orders],
    }
