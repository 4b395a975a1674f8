"""Analysis reports: a plain-data dataclass, its JSON schema and a text renderer."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import jsonschema

SCHEMA_VERSION = "1.0"

_verdict = {"type": "boolean"}
_str_list = {"type": "array", "items": {"type": "string"}}
_int_list = {"type": "array", "items": {"type": "integer"}}
_witness = {
    "type": "object",
    "required": ["labels", "cycle"],
    "additionalProperties": False,
    "properties": {"labels": _str_list, "cycle": {"type": "string"}},
}
_nullable_obj = lambda props, required: {
    "oneOf": [{"type": "null"}, {"type": "object", "required": required,
                                  "additionalProperties": False, "properties": props}]}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "additionalProperties": False,
    "required": ["schema_version", "name", "group", "basis_kind", "generators", "verdicts",
                 "larc", "cycle", "graph", "submanifold", "cross_check", "skipped", "notes"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "group": {"type": "object"},
        "basis_kind": {"type": "string"},
        "generators": _str_list,
        "verdicts": {"type": "object", "additionalProperties": _verdict},
        "larc": _nullable_obj({
            "controllable": _verdict, "rank": {"type": "integer"},
            "full_dim": {"type": "integer"}, "field": {"enum": ["real", "complex"]},
        }, ["controllable", "rank", "full_dim", "field"]),
        "cycle": _nullable_obj({
            "controllable": _verdict,
            "witness": {"oneOf": [{"type": "null"}, _witness]},
            "witnesses": {"type": "array", "items": _witness},
            "witness_count": {"oneOf": [{"type": "null"}, {"type": "integer"}]},
            "truncated": _verdict,
        }, ["controllable", "witness", "witnesses", "witness_count", "truncated"]),
        "graph": _nullable_obj({
            "controllable": _verdict,
            "vertices": {"type": "integer"},
            "edges": {"type": "array", "items": _int_list},
            "components": {"type": "array", "items": _int_list},
            "closure_steps": {"type": "integer"},
            "closure_added": {"type": "array", "items": {"type": "array", "items": _int_list}},
        }, ["controllable", "vertices", "edges", "components", "closure_steps", "closure_added"]),
        "submanifold": _nullable_obj({
            "orbits": {"type": "array", "items": _int_list},
            "dimension": {"type": "integer"},
            "summands": _str_list,
            "minimal_subset": _str_list,
            "permutation": {"type": "string"},
        }, ["orbits", "dimension", "summands", "minimal_subset", "permutation"]),
        "cross_check": {
            "type": "object",
            "required": ["status", "details"],
            "additionalProperties": False,
            "properties": {"status": {"enum": ["agree", "MISMATCH"]}, "details": _str_list},
        },
        "skipped": {"type": "object", "additionalProperties": {"type": "string"}},
        "notes": _str_list,
        "timing": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


@dataclass
class AnalysisReport:
    name: str
    group: dict
    basis_kind: str
    generators: list
    verdicts: dict = field(default_factory=dict)
    larc: Optional[dict] = None
    cycle: Optional[dict] = None
    graph: Optional[dict] = None
    submanifold: Optional[dict] = None
    cross_check: dict = field(default_factory=lambda: {"status": "agree", "details": []})
    skipped: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    timing: Optional[dict] = None
    schema_version: str = SCHEMA_VERSION

    @property
    def mismatch(self) -> bool:
        return self.cross_check["status"] == "MISMATCH"

    @property
    def controllable(self) -> Optional[bool]:
        values = set(self.verdicts.values())
        return values.pop() if len(values) == 1 else None

    def exit_code(self) -> int:
        if self.mismatch:
            return 3
        return 0 if self.controllable else 1

    def to_dict(self) -> dict:
        data = asdict(self)
        if data["timing"] is None:
            del data["timing"]
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "AnalysisReport":
        validate_report(data)
        return cls(**data)

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        return cls.from_dict(json.loads(text))


def validate_report(data: dict):
    jsonschema.validate(data, REPORT_SCHEMA)


def _fmt_sets(blocks) -> str:
    return ", ".join("{" + ",".join(str(v) for v in b) + "}" for b in blocks)


def render_text(r: AnalysisReport) -> str:
    lines = [f"system: {r.name}", f"group: {json.dumps(r.group, sort_keys=True)}  basis: {r.basis_kind}",
             f"generators ({len(r.generators)}): {', '.join(r.generators) or '(none)'}"]
    if r.larc:
        lines.append(f"larc: rank {r.larc['rank']} / {r.larc['full_dim']} over {r.larc['field']}"
                     f" -> {'controllable' if r.larc['controllable'] else 'not controllable'}")
    if r.graph:
        g = r.graph
        lines.append(f"graph: {'connected' if g['controllable'] else 'disconnected'};"
                     f" components {_fmt_sets(g['components'])}; closure steps {g['closure_steps']}")
        for step, added in enumerate(g["closure_added"], 1):
            edges = " ".join(f"v{i}v{j}" for i, j in added)
            lines.append(f"  step {step}: + {edges}")
    if r.cycle:
        c = r.cycle
        lines.append(f"cycle: {'cycle found' if c['controllable'] else 'no cycle'}")
        if c["witness"]:
            lines.append(f"  witness {{{', '.join(c['witness']['labels'])}}} -> {c['witness']['cycle']}")
        if c["witness_count"] is not None:
            more = " (list truncated)" if c["truncated"] else ""
            lines.append(f"  witness subsets: {c['witness_count']}{more}")
            for w in c["witnesses"]:
                lines.append(f"    {{{', '.join(w['labels'])}}}  {w['cycle']}")
    if r.submanifold:
        s = r.submanifold
        lines.append(f"submanifold: orbits {_fmt_sets(s['orbits'])}; dimension {s['dimension']}")
        lines.append(f"  minimal subset {{{', '.join(s['minimal_subset'])}}} -> {s['permutation']}")
        for text in s["summands"]:
            lines.append(f"  summand {text}")
    for backend, why in sorted(r.skipped.items()):
        lines.append(f"skipped {backend}: {why}")
    for note in r.notes:
        lines.append(f"note: {note}")
    lines.append(f"cross-check: {r.cross_check['status']}")
    for d in r.cross_check["details"]:
        lines.append(f"  {d}")
    if r.timing:
        lines.append("timing: " + ", ".join(f"{k} {v:.4f}s" for k, v in sorted(r.timing.items())))
    verdict = r.controllable
    lines.append("verdict: " + ("MISMATCH" if r.mismatch else
                                "controllable" if verdict else "not controllable"))
    return "\n".join(lines) + "\n"
