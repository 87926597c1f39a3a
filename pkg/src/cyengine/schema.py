"""Session documents: JSON schema, validation and construction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

import jsonschema

from .coefficients import BaseComponent, BaseRing, LetterRegistry, format_fraction, to_fraction
from .errors import SchemaError

SCALAR = {"oneOf": [{"type": "integer"},
                    {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
NAME = {"type": "string", "minLength": 1}
ACTION = {"type": "object",
          "additionalProperties": {"type": "object", "additionalProperties": SCALAR}}

SESSION_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "SessionDocument",
    "type": "object",
    "required": ["dimension", "truncation", "base", "generators", "eta", "potential", "task"],
    "additionalProperties": False,
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "truncation": {"type": "integer", "minimum": 0},
        "base": {
            "type": "array", "minItems": 1,
            "items": {
                "type": "object",
                "required": ["name", "dim", "structure_constants", "trace"],
                "additionalProperties": False,
                "properties": {
                    "name": NAME,
                    "dim": {"type": "integer", "minimum": 1},
                    "basis": {"type": "array", "items": NAME},
                    "structure_constants": {"type": "array", "items": {
                        "type": "array", "items": {"type": "array", "items": SCALAR}}},
                    "trace": {"type": "array", "items": SCALAR},
                },
            },
        },
        "frozen": {"type": "array", "items": NAME},
        "generators": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "from", "to", "degree"],
                "additionalProperties": False,
                "properties": {
                    "name": NAME, "from": NAME, "to": NAME,
                    "degree": {"type": "integer"},
                    "left": ACTION, "right": ACTION,
                },
            },
        },
        "eta": {"type": "array", "items": {
            "type": "object", "required": ["letter1", "letter2", "coefficient"],
            "additionalProperties": False,
            "properties": {"letter1": NAME, "letter2": NAME, "coefficient": SCALAR}}},
        "potential": {"$ref": "#/definitions/potential"},
        "potential_frozen": {"$ref": "#/definitions/potential"},
        "z_names": {"type": "object", "additionalProperties": NAME},
        "task": {
            "type": "object", "required": ["name"],
            "properties": {
                "name": {"enum": ["build_preprojective", "check_d_squared", "h_dim",
                                  "jacobian_presentation", "gl_morphism"]},
                "degree": {"type": "integer"},
                "N": {"type": "integer", "minimum": 0},
                "frozen_letters": {"type": "array", "items": NAME},
            },
        },
        "seed": {"type": "integer"},
    },
    "definitions": {
        "potential": {"type": "array", "items": {
            "type": "object", "required": ["coeff", "cyclic_word"],
            "additionalProperties": False,
            "properties": {"coeff": SCALAR,
                           "cyclic_word": {"type": "array", "items": NAME, "minItems": 1}}}},
    },
}


def validate(doc: dict) -> None:
    try:
        jsonschema.validate(doc, SESSION_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"{path or '<root>'}: {exc.message}") from None


def _s(x) -> str:
    return format_fraction(to_fraction(x))


def normalize(doc: dict) -> dict:
    """Canonical form: scalars as "p/q" strings; idempotent."""
    validate(doc)
    out = {
        "dimension": doc["dimension"],
        "truncation": doc["truncation"],
        "base": [{
            "name": c["name"], "dim": c["dim"],
            "basis": list(c.get("basis") or (["1"] + [f"e{m}" for m in range(1, c["dim"])])),
            "structure_constants": [[[_s(x) for x in v] for v in row]
                                    for row in c["structure_constants"]],
            "trace": [_s(x) for x in c["trace"]],
        } for c in doc["base"]],
        "generators": [{
            "name": g["name"], "from": g["from"], "to": g["to"], "degree": g["degree"],
            **({side: {k: {y: _s(c) for y, c in v.items()} for k, v in g[side].items()}
                for side in ("left", "right") if g.get(side)}),
        } for g in doc["generators"]],
        "eta": [{"letter1": e["letter1"], "letter2": e["letter2"],
                 "coefficient": _s(e["coefficient"])} for e in doc["eta"]],
        "potential": [{"coeff": _s(t["coeff"]), "cyclic_word": list(t["cyclic_word"])}
                      for t in doc["potential"]],
        "task": dict(doc["task"]),
    }
    for key in ("frozen", "z_names", "seed"):
        if key in doc:
            out[key] = doc[key]
    if "potential_frozen" in doc:
        out["potential_frozen"] = [{"coeff": _s(t["coeff"]), "cyclic_word": list(t["cyclic_word"])}
                                   for t in doc["potential_frozen"]]
    validate(out)
    return out


@dataclass
class Session:
    doc: dict
    ring: BaseRing

    @property
    def d(self) -> int:
        return self.doc["dimension"]

    @property
    def N(self) -> int:
        return self.doc["truncation"]

    def comp(self, name: str) -> int:
        return self.ring.index(name)

    def letter_specs(self) -> List[dict]:
        return [{"name": g["name"], "source": self.comp(g["from"]), "target": self.comp(g["to"]),
                 "degree": g["degree"], "left": g.get("left"), "right": g.get("right")}
                for g in self.doc["generators"]]

    def registry(self) -> LetterRegistry:
        reg = LetterRegistry(self.ring)
        for s in self.letter_specs():
            reg.add(s["name"], s["source"], s["target"], s["degree"],
                    left=s["left"], right=s["right"])
        reg.resolve_actions()
        return reg

    def eta(self, reg: LetterRegistry):
        return [(to_fraction(e["coefficient"]), reg.index(e["letter1"]), reg.index(e["letter2"]))
                for e in self.doc["eta"]]

    def eta_names(self):
        return [(e["coefficient"], e["letter1"], e["letter2"]) for e in self.doc["eta"]]

    def potential(self, key: str = "potential"):
        return [(t["coeff"], t["cyclic_word"]) for t in self.doc.get(key, [])]

    def z_names(self) -> Optional[Dict[int, str]]:
        names = self.doc.get("z_names")
        if not names:
            return None
        return {self.comp(k): v for k, v in names.items()}


def load_session(doc: dict) -> Session:
    doc = normalize(doc)
    comps = []
    for c in doc["base"]:
        if len(c["trace"]) != c["dim"] or len(c["basis"]) != c["dim"]:
            raise SchemaError(f"component {c['name']}: trace/basis length differs from dim")
        mult = c["structure_constants"]
        if len(mult) != c["dim"] or any(len(r) != c["dim"] or any(len(v) != c["dim"] for v in r)
                                        for r in mult):
            raise SchemaError(f"component {c['name']}: structure constants must be dim^3")
        comps.append(BaseComponent(c["name"], mult, c["trace"], c["basis"]))
    names = [c.name for c in comps]
    if len(set(names)) != len(names):
        raise SchemaError("component names must be distinct")
    frozen = []
    for nm in doc.get("frozen", []):
        if nm not in names:
            raise SchemaError(f"unknown frozen component {nm!r}")
        frozen.append(names.index(nm))
    return Session(doc, BaseRing(comps, frozen))
