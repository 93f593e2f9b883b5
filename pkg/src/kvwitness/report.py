"""Report trees and their canonical serialisation.

A report is a plain tree of dicts, lists, strings, ints and bools.  Rationals
are stored as strings (``str(Fraction)``, e.g. ``"-3/5"`` or ``"4"``) so the JSON
never contains floats.  Serialisation sorts keys, which makes the output
byte-identical for identical inputs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from . import __version__
from .contraction import canonical_pullback, classify_singularities, discrepancies
from .lattice import Divisor
from .pencil import base_locus, build_standard_pencil, field, format_point, label_points, scan_pencil
from .pencil.core import SingularityType
from .rr import WitnessReport, canonical_degree, intersection_audit, run_witness_pipeline, search_witness_divisors
from .scenario import BuiltScenario, Scenario

ORDINARY_CUSP_MULTIPLICITIES = [2, 1, 1]


def jsonable(x: Any) -> Any:
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Divisor):
        return {n: str(c) for n, c in x.items()}
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    if hasattr(x, "value") and isinstance(x.value, str):  # enums
        return x.value
    raise TypeError(f"cannot serialise {type(x).__name__}")


def to_json(report: dict) -> str:
    return json.dumps(jsonable(report), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_text(report: dict) -> str:
    lines = []

    def walk(node, prefix):
        if isinstance(node, dict):
            for k in sorted(node):
                walk(node[k], f"{prefix}/{k}" if prefix else str(k))
        elif isinstance(node, list) and any(isinstance(v, (dict, list)) for v in node):
            for i, v in enumerate(node):
                walk(v, f"{prefix}/{i}")
        else:
            if isinstance(node, list):
                node = ", ".join(str(v) for v in node)
            elif isinstance(node, bool):
                node = "true" if node else "false"
            lines.append(f"{prefix} = {node}")

    walk(jsonable(report), "")
    return "\n".join(lines) + "\n"


def audit_section(built: BuiltScenario) -> dict:
    stages = intersection_audit(built)
    return {"order": [s["stage"] for s in stages], "stages": {s["stage"]: s for s in stages}}


def contraction_section(built: BuiltScenario) -> dict:
    c = built.contraction
    sing = classify_singularities(c)
    disc = discrepancies(c)
    out: dict[str, Any] = {
        "curves": list(c.contracted),
        "negative_definite": True,
        "source_rank": c.source.rank,
        "target_rank": c.target_rank,
        "singularities": [{"type": p.type, "curves": list(p.curves)} for p in sing],
        "singularity_types": [p.type for p in sing],
        "discrepancies": disc.values,
        "klt": disc.klt,
        "canonical_pullback": canonical_pullback(c),
    }
    w = built.scenario.witness
    if w is not None and w.canonical_test_curve and c.target_rank == 1:
        deg = canonical_degree(c, w.canonical_test_curve)
        out["canonical_degree"] = {
            "curve": w.canonical_test_curve,
            "value": deg,
            "anti_ample": deg < 0,
            "del_pezzo": deg < 0 and disc.klt,
        }
    return out


def witness_section(r: WitnessReport) -> dict:
    g = r.leray_gate
    return {
        "ample": r.ample,
        "test_curve": r.test_curve,
        "ample_degree": r.ample_degree,
        "ample_sign": r.ample_sign,
        "b_degree": -r.ample_degree,
        "pullbacks": r.pullbacks,
        "pullback_B": r.pullback_b,
        "floor": r.floored,
        "floor_table": r.floor_table,
        "floor_strict_table": r.floor_strict_table,
        "floor_square": r.floor_square,
        "canonical_dot_floor": r.canonical_dot_floor,
        "leray_gate": {
            "boundary": g.boundary,
            "total_boundary": g.total_boundary,
            "table": g.table,
            "nef": g.nef,
            "boundary_in_range": g.boundary_in_range,
            "klt": g.klt,
            "passed": g.passed,
            "bigness": "automatic: every divisor is big relative to a birational morphism",
        },
        "chi": r.chi,
        "verdict": r.verdict,
        "narrative": [
            {"step": s.name, "claim": s.claim, "holds": s.holds, "basis": s.basis} for s in r.narrative
        ],
    }


def pencil_section(p: int, ext_degree: int) -> dict:
    spec = build_standard_pencil(p)
    F = field(p, ext_degree)
    rows = scan_pencil(spec, ext_degree)
    members = {}
    for row in rows:
        members[row.label] = [{"point": format_point(F, pt), "type": kind} for pt, kind in row.points]
    cusps = [r.label for r in rows if any(k is SingularityType.CUSP for _, k in r.points)]
    unique_cusps = [
        r.label for r in rows if len(r.points) == 1 and r.points[0][1] is SingularityType.CUSP
    ]
    bl = base_locus(spec)
    BF = field(p, bl.ext_degree)
    names = label_points(spec, [pt for pt, _ in bl.points], BF)
    modulus = field(p, ext_degree).modulus
    return {
        "p": p,
        "ext_degree": ext_degree,
        "points_checked": F.q**2 + F.q + 1,
        "modulus": list(modulus),
        "generators": {"c0": str(spec.c0), "cinf": str(spec.cinf)},
        "member_order": [r.label for r in rows],
        "members": members,
        "cusp_members": cusps,
        "single_cusp_members": unique_cusps,
        "base_locus": {
            "ext_degree": bl.ext_degree,
            "points": {n: m for n, (_, m) in zip(names, bl.points)},
            "total": bl.total,
            "complete": bl.total == spec.c0.degree * spec.cinf.degree,
        },
    }


def bridge_section(built: BuiltScenario, pencil: dict) -> dict:
    """Does the lattice's cusp resolution match an ordinary cusp found by the pencil scan?"""
    cfg = built.scenario.pencil
    records = {r.new_class_name: r for r in built.surface.history}
    mults = [int(records[n].center_multiplicities.get(cfg.cusp_curve, 0)) for n in cfg.cusp_resolution]
    return {
        "cusp_curve": cfg.cusp_curve,
        "lattice_multiplicities": mults,
        "ordinary_cusp_multiplicities": ORDINARY_CUSP_MULTIPLICITIES,
        "pencil_cusp_members": pencil["single_cusp_members"],
        "consistent": mults == ORDINARY_CUSP_MULTIPLICITIES and len(pencil["single_cusp_members"]) == 1,
    }


def build_report(built: BuiltScenario, *, ext_degree: int | None = None, explore: bool = False) -> dict:
    sc = built.scenario
    report: dict[str, Any] = {
        "engine": {"name": "kvwitness", "version": __version__},
        "scenario": sc.name,
        "audit": audit_section(built),
    }
    if built.contraction is not None:
        report["contraction"] = contraction_section(built)
        if sc.witness is not None:
            report["witness"] = witness_section(run_witness_pipeline(built))
    if sc.pencil is not None:
        pencil = pencil_section(sc.pencil.p, ext_degree or sc.pencil.ext_degree)
        report["pencil"] = pencil
        if sc.pencil.cusp_curve and sc.pencil.cusp_resolution:
            report["bridge"] = bridge_section(built, pencil)
    if explore and built.contraction is not None and sc.witness is not None:
        hits = [
            {"ample": c.ample, "chi": c.chi, "verdict": c.verdict}
            for c in search_witness_divisors(built)
            if c.verdict.value == "H1_NONZERO_CERTIFIED"
        ]
        report["exploratory"] = {
            "note": "exploratory sweep over A in {-1,0,1}-combinations of uncontracted curves; not certified claims",
            "certified_candidates": hits,
        }
    return report


# ---------------------------------------------------------------- audit mode

@dataclass
class Mismatch:
    path: str
    expected: Any
    computed: Any
    note: str = ""


_MISSING = "<missing>"


def lookup(tree: Any, path: str) -> Any:
    """Follow a '/'-separated path through an already-jsonable tree."""
    node = tree
    for part in path.split("/"):
        if isinstance(node, dict) and part in node:
            node = node[part]
        elif isinstance(node, list) and part.isdigit() and int(part) < len(node):
            node = node[int(part)]
        else:
            return _MISSING
    return node


def _as_rational(v: Any) -> Fraction | None:
    if isinstance(v, bool):
        return None
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError):
            return None
    return None


def values_match(expected: Any, computed: Any) -> bool:
    a, b = _as_rational(expected), _as_rational(computed)
    if a is not None and b is not None:
        return a == b
    if isinstance(expected, dict) and isinstance(computed, dict):
        return expected.keys() == computed.keys() and all(values_match(expected[k], computed[k]) for k in expected)
    if isinstance(expected, list) and isinstance(computed, list):
        return len(expected) == len(computed) and all(values_match(x, y) for x, y in zip(expected, computed))
    return expected == computed


def check_expectations(scenario: Scenario, report: dict) -> list[Mismatch]:
    tree = jsonable(report)
    out = []
    for e in scenario.expectations:
        got = lookup(tree, e.path)
        if got is _MISSING or not values_match(e.value, got):
            out.append(Mismatch(e.path, e.value, got, e.note))
    return out
