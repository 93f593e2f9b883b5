"""Scenario files: a surface build, a contraction, divisors and golden values.

Scenarios are JSON.  Rationals are written as strings (``"3/5"``, ``"-1"``) or
integers, never as JSON floats.  See ``docs/scenario-format.md`` for the schema.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from .contraction import ContractionModel, plan_contraction
from .errors import ParseError, SchemaError
from .lattice import (
    CANONICAL,
    BlowUpRecord,
    Divisor,
    SurfaceModel,
    blow_up,
    new_projective_plane,
    register_plane_curve,
)

INITIAL_STAGE = "P2"
EMBEDDED_SCENARIO = "char5_counterexample.json"


@dataclass(frozen=True)
class CurveDecl:
    name: str
    degree: int
    prime: bool = True


@dataclass(frozen=True)
class WitnessSpec:
    """Which divisor plays the role of A, and the curves used for the sign tests."""

    ample: str
    test_curve: str
    canonical_test_curve: str | None = None


@dataclass(frozen=True)
class PencilConfig:
    p: int
    ext_degree: int = 2
    cusp_curve: str | None = None
    cusp_resolution: tuple[str, ...] = ()


@dataclass(frozen=True)
class Expectation:
    path: str
    value: Any
    note: str = ""


@dataclass(frozen=True)
class Scenario:
    name: str
    curves: tuple[CurveDecl, ...]
    blowups: tuple[BlowUpRecord, ...]
    contraction: tuple[str, ...] = ()
    divisors: Mapping[str, Divisor] = field(default_factory=dict)
    witness: WitnessSpec | None = None
    relative_boundary: Divisor = field(default_factory=Divisor)
    pencil: PencilConfig | None = None
    expectations: tuple[Expectation, ...] = ()
    description: str = ""

    def build(self) -> "BuiltScenario":
        s = new_projective_plane()
        for c in self.curves:
            s = register_plane_curve(s, c.name, c.degree, c.prime)
        stages = [(INITIAL_STAGE, s)]
        for rec in self.blowups:
            s = blow_up(s, rec)
            if rec.stage:
                stages.append((rec.stage, s))
        if stages[-1][1] is not s:
            stages.append(("final", s))
        contraction = plan_contraction(s, self.contraction) if self.contraction else None
        return BuiltScenario(self, s, tuple(stages), contraction)


@dataclass(frozen=True)
class BuiltScenario:
    scenario: Scenario
    surface: SurfaceModel
    stages: tuple[tuple[str, SurfaceModel], ...]
    contraction: ContractionModel | None

    def divisor(self, name: str) -> Divisor:
        try:
            return self.scenario.divisors[name]
        except KeyError:
            raise SchemaError(f"unknown divisor {name!r}", "$.divisors") from None


# ---------------------------------------------------------------- parsing

_TOP_KEYS = {"name", "description", "surface", "contraction", "divisors", "witness",
             "relative_boundary", "pencil", "expectations"}


def _expect_type(value, typ, path: str, what: str):
    if not isinstance(value, typ) or (typ is int and isinstance(value, bool)):
        raise SchemaError(f"expected {what}", path)
    return value


def _check_keys(obj: Mapping, allowed: set[str], required: set[str], path: str) -> None:
    extra = sorted(set(obj) - allowed)
    if extra:
        raise SchemaError(f"unknown key(s) {extra}", path)
    missing = sorted(required - set(obj))
    if missing:
        raise SchemaError(f"missing key(s) {missing}", path)


def _rational(value, path: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError("rationals must be integers or 'n/d' strings", path)
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError(f"not a rational: {value!r}", path) from None


def _divisor(obj, path: str) -> Divisor:
    _expect_type(obj, dict, path, "an object mapping curve names to coefficients")
    return Divisor({k: _rational(v, f"{path}.{k}") for k, v in obj.items()})


def scenario_from_dict(data: Mapping[str, Any]) -> Scenario:
    _expect_type(data, dict, "$", "a JSON object")
    _check_keys(data, _TOP_KEYS, {"name", "surface"}, "$")
    name = _expect_type(data["name"], str, "$.name", "a string")

    surf = _expect_type(data["surface"], dict, "$.surface", "an object")
    _check_keys(surf, {"curves", "blowups"}, {"curves", "blowups"}, "$.surface")
    known: set[str] = set()
    curves = []
    for i, c in enumerate(_expect_type(surf["curves"], list, "$.surface.curves", "a list")):
        p = f"$.surface.curves[{i}]"
        _expect_type(c, dict, p, "an object")
        _check_keys(c, {"name", "degree", "prime"}, {"name", "degree"}, p)
        cname = _expect_type(c["name"], str, f"{p}.name", "a string")
        if cname in known or cname == CANONICAL:
            raise SchemaError(f"curve name {cname!r} is duplicated or reserved", f"{p}.name")
        degree = _expect_type(c["degree"], int, f"{p}.degree", "an integer")
        if degree < 1:
            raise SchemaError("degree must be positive", f"{p}.degree")
        prime = _expect_type(c.get("prime", True), bool, f"{p}.prime", "a boolean")
        known.add(cname)
        curves.append(CurveDecl(cname, degree, prime))

    blowups = []
    basis = {"h"}
    for i, b in enumerate(_expect_type(surf["blowups"], list, "$.surface.blowups", "a list")):
        p = f"$.surface.blowups[{i}]"
        _expect_type(b, dict, p, "an object")
        _check_keys(b, {"class", "curve", "center", "stage"}, {"class", "center"}, p)
        cls = _expect_type(b["class"], str, f"{p}.class", "a string")
        if cls in basis:
            raise SchemaError(f"basis class {cls!r} is duplicated", f"{p}.class")
        center = _expect_type(b["center"], dict, f"{p}.center", "an object")
        for cname, m in center.items():
            if cname not in known:
                raise SchemaError(f"centre references unknown curve {cname!r}", f"{p}.center.{cname}")
            m = _expect_type(m, int, f"{p}.center.{cname}", "a non-negative integer")
            if m < 0:
                raise SchemaError("multiplicities must be non-negative", f"{p}.center.{cname}")
        curve = b.get("curve")
        if curve is not None:
            _expect_type(curve, str, f"{p}.curve", "a string")
        stage = b.get("stage")
        if stage is not None:
            _expect_type(stage, str, f"{p}.stage", "a string")
        rec = BlowUpRecord(cls, center, curve, stage)
        if rec.curve_name in known or rec.curve_name == CANONICAL:
            raise SchemaError(f"exceptional curve name {rec.curve_name!r} is duplicated", p)
        known.add(rec.curve_name)
        basis.add(cls)
        blowups.append(rec)

    def check_names(names, path):
        for n in names:
            if n not in known and n != CANONICAL:
                raise SchemaError(f"unknown curve {n!r}", f"{path}.{n}")

    contraction = tuple(_expect_type(data.get("contraction", []), list, "$.contraction", "a list"))
    for i, n in enumerate(contraction):
        if not isinstance(n, str) or n not in known:
            raise SchemaError(f"unknown curve {n!r}", f"$.contraction[{i}]")

    divisors = {}
    for dname, terms in _expect_type(data.get("divisors", {}), dict, "$.divisors", "an object").items():
        d = _divisor(terms, f"$.divisors.{dname}")
        check_names(d, f"$.divisors.{dname}")
        divisors[dname] = d

    witness = None
    if "witness" in data:
        w = _expect_type(data["witness"], dict, "$.witness", "an object")
        _check_keys(w, {"ample", "test_curve", "canonical_test_curve"}, {"ample", "test_curve"}, "$.witness")
        if w["ample"] not in divisors:
            raise SchemaError(f"unknown divisor {w['ample']!r}", "$.witness.ample")
        for key in ("test_curve", "canonical_test_curve"):
            if key in w and w[key] not in known:
                raise SchemaError(f"unknown curve {w[key]!r}", f"$.witness.{key}")
        witness = WitnessSpec(w["ample"], w["test_curve"], w.get("canonical_test_curve"))

    boundary = _divisor(data.get("relative_boundary", {}), "$.relative_boundary")
    check_names(boundary, "$.relative_boundary")
    for n, c in boundary.items():
        if not 0 <= c < 1:
            raise SchemaError(f"boundary coefficient {c} is outside [0, 1)", f"$.relative_boundary.{n}")

    pencil = None
    if data.get("pencil") is not None:
        pc = _expect_type(data["pencil"], dict, "$.pencil", "an object")
        _check_keys(pc, {"p", "ext_degree", "cusp_curve", "cusp_resolution"}, {"p"}, "$.pencil")
        cusp_curve = pc.get("cusp_curve")
        if cusp_curve is not None and cusp_curve not in known:
            raise SchemaError(f"unknown curve {cusp_curve!r}", "$.pencil.cusp_curve")
        res = tuple(pc.get("cusp_resolution", ()))
        for n in res:
            if n not in basis:
                raise SchemaError(f"unknown basis class {n!r}", "$.pencil.cusp_resolution")
        pencil = PencilConfig(
            _expect_type(pc["p"], int, "$.pencil.p", "an integer"),
            _expect_type(pc.get("ext_degree", 2), int, "$.pencil.ext_degree", "an integer"),
            cusp_curve,
            res,
        )

    expectations = []
    for i, e in enumerate(_expect_type(data.get("expectations", []), list, "$.expectations", "a list")):
        p = f"$.expectations[{i}]"
        _expect_type(e, dict, p, "an object")
        _check_keys(e, {"path", "value", "note"}, {"path", "value"}, p)
        if isinstance(e["value"], float):
            raise SchemaError("expected values must not be JSON floats", f"{p}.value")
        expectations.append(Expectation(
            _expect_type(e["path"], str, f"{p}.path", "a string"),
            e["value"],
            _expect_type(e.get("note", ""), str, f"{p}.note", "a string"),
        ))

    return Scenario(
        name=name,
        description=_expect_type(data.get("description", ""), str, "$.description", "a string"),
        curves=tuple(curves),
        blowups=tuple(blowups),
        contraction=contraction,
        divisors=divisors,
        witness=witness,
        relative_boundary=boundary,
        pencil=pencil,
        expectations=tuple(expectations),
    )


def parse_scenario(text: str) -> Scenario:
    if not text.strip():
        raise ParseError("empty scenario file", 1, 1)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return scenario_from_dict(data)


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def embedded_scenario_text() -> str:
    return resources.files("kvwitness.data").joinpath(EMBEDDED_SCENARIO).read_text(encoding="utf-8")


def load_embedded_scenario() -> Scenario:
    return parse_scenario(embedded_scenario_text())


# ---------------------------------------------------------------- writing

def _divisor_to_dict(d: Divisor) -> dict[str, str]:
    return {n: str(c) for n, c in d.items()}


def scenario_to_dict(sc: Scenario) -> dict[str, Any]:
    out: dict[str, Any] = {"name": sc.name}
    if sc.description:
        out["description"] = sc.description
    blowups = []
    for r in sc.blowups:
        b: dict[str, Any] = {"class": r.new_class_name, "center": dict(r.center_multiplicities)}
        if r.curve_name != BlowUpRecord(r.new_class_name).curve_name:
            b["curve"] = r.curve_name
        if r.stage:
            b["stage"] = r.stage
        blowups.append(b)
    out["surface"] = {
        "curves": [
            {"name": c.name, "degree": c.degree, **({} if c.prime else {"prime": False})} for c in sc.curves
        ],
        "blowups": blowups,
    }
    if sc.contraction:
        out["contraction"] = list(sc.contraction)
    if sc.divisors:
        out["divisors"] = {k: _divisor_to_dict(v) for k, v in sc.divisors.items()}
    if sc.witness:
        w = {"ample": sc.witness.ample, "test_curve": sc.witness.test_curve}
        if sc.witness.canonical_test_curve:
            w["canonical_test_curve"] = sc.witness.canonical_test_curve
        out["witness"] = w
    if len(sc.relative_boundary):
        out["relative_boundary"] = _divisor_to_dict(sc.relative_boundary)
    if sc.pencil:
        pc: dict[str, Any] = {"p": sc.pencil.p, "ext_degree": sc.pencil.ext_degree}
        if sc.pencil.cusp_curve:
            pc["cusp_curve"] = sc.pencil.cusp_curve
        if sc.pencil.cusp_resolution:
            pc["cusp_resolution"] = list(sc.pencil.cusp_resolution)
        out["pencil"] = pc
    if sc.expectations:
        out["expectations"] = [
            {"path": e.path, "value": e.value, **({"note": e.note} if e.note else {})} for e in sc.expectations
        ]
    return out


def dump_scenario(sc: Scenario) -> str:
    return json.dumps(scenario_to_dict(sc), indent=2, ensure_ascii=False) + "\n"
