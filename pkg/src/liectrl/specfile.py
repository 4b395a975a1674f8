"""System description files: JSON in, validated ``SystemSpec`` out.

Format::

    {
      "name": "path-so5",
      "group": {"type": "SO", "n": 5},          # or {"type": "SL3C"}, {"type": "FORMATION", "N": 4}
      "basis_kind": "standard_son",             # son_split | sl3c | formation | raw
      "generators": [[1, 2], [2, 3]],
      "options": {"backends": ["larc", "graph"], "trace_closure": true, "max_witnesses": 10}
    }

Generators are index pairs for ``standard_son``, labels for ``son_split``
(A1..B3) and ``sl3c`` (H1, H2, X1..Y3), coupling edges for ``formation``,
and objects ``{"label": ..., "omega": [[coef, i, j], ...]}`` or
``{"label": ..., "matrix": [[...], ...]}`` for ``raw``. Scalars in
matrices may be integers or strings such as ``"1/2"`` or ``"1-2i"``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import jsonschema

from .lie_core import (ExactMatrix, GeneratorSet, InvalidIndexError, omega,
                       omega_label)
from .scalars import to_scalar

BACKENDS = ("larc", "cycle", "graph")

APPLICABLE = {
    "standard_son": ("larc", "cycle", "graph"),
    "raw": ("larc",),
    "son_split": ("larc", "cycle", "graph"),
    "sl3c": ("larc", "cycle"),
    "formation": ("larc", "graph"),
}

GROUP_KINDS = {
    "SO": ("standard_son", "raw", "son_split"),
    "SL3C": ("sl3c", "raw"),
    "FORMATION": ("formation",),
}

ANALYZE_MAX_N = 12

SPEC_SCHEMA = {
    "type": "object",
    "required": ["name", "group", "basis_kind", "generators"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string", "minLength": 1},
        "group": {
            "type": "object",
            "required": ["type"],
            "properties": {
                "type": {"enum": list(GROUP_KINDS)},
                "n": {"type": "integer"},
                "N": {"type": "integer"},
            },
            "additionalProperties": False,
        },
        "basis_kind": {"enum": list(APPLICABLE)},
        "generators": {"type": "array"},
        "options": {
            "type": "object",
            "additionalProperties": False,
            "properties": {
                "backends": {"type": "array", "items": {"enum": list(BACKENDS)}, "uniqueItems": True},
                "trace_closure": {"type": "boolean"},
                "max_witnesses": {"type": "integer", "minimum": 0},
                "field": {"enum": ["real", "complex"]},
            },
        },
    },
}


class SpecError(ValueError):
    """Invalid system description; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where
        self.message = message


@dataclass(frozen=True)
class SpecOptions:
    backends: Optional[tuple] = None
    trace_closure: bool = False
    max_witnesses: int = 10
    field: Optional[str] = None


@dataclass(frozen=True)
class SystemSpec:
    name: str
    group: dict
    basis_kind: str
    generators: GeneratorSet
    raw_generators: list = field(compare=False, repr=False, default_factory=list)
    options: SpecOptions = SpecOptions()

    @property
    def n(self) -> int:
        return self.generators.dim

    def to_dict(self) -> dict:
        opts = {"trace_closure": self.options.trace_closure,
                "max_witnesses": self.options.max_witnesses}
        if self.options.backends is not None:
            opts["backends"] = list(self.options.backends)
        if self.options.field is not None:
            opts["field"] = self.options.field
        return {"name": self.name, "group": dict(self.group), "basis_kind": self.basis_kind,
                "generators": self.raw_generators, "options": opts}


def _path(parts) -> str:
    out = "spec"
    for p in parts:
        out += f"[{p}]" if isinstance(p, int) else f".{p}"
    return out


def _pair(item, where: str, n: int) -> tuple[int, int]:
    if (not isinstance(item, list) or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)):
        raise SpecError(where, f"expected an index pair [i, j], got {item!r}")
    i, j = item
    if not (1 <= i < j <= n):
        raise SpecError(where, f"invalid index pair ({i}, {j}); need 1 <= i < j <= {n}")
    return i, j


def _raw_generator(item, where: str, n: int):
    if not isinstance(item, dict) or "label" not in item or not isinstance(item["label"], str):
        raise SpecError(where, "raw generator needs a string 'label'")
    has_m, has_o = "matrix" in item, "omega" in item
    if has_m == has_o or set(item) - {"label", "matrix", "omega"}:
        raise SpecError(where, "raw generator needs exactly one of 'matrix' or 'omega'")
    try:
        if has_o:
            terms = item["omega"]
            if not isinstance(terms, list) or not terms:
                raise SpecError(f"{where}.omega", "expected a nonempty list of [coef, i, j]")
            m = ExactMatrix.zero(n)
            for k, term in enumerate(terms):
                if not isinstance(term, list) or len(term) != 3:
                    raise SpecError(f"{where}.omega[{k}]", f"expected [coef, i, j], got {term!r}")
                coef, i, j = term
                if not (isinstance(i, int) and isinstance(j, int)):
                    raise SpecError(f"{where}.omega[{k}]", "indices must be integers")
                m = m + omega(n, i, j) * to_scalar(coef)
        else:
            rows = item["matrix"]
            if not isinstance(rows, list) or len(rows) != n or any(
                    not isinstance(r, list) or len(r) != n for r in rows):
                raise SpecError(f"{where}.matrix", f"expected a {n}x{n} list of rows")
            m = ExactMatrix.from_rows([[to_scalar(v) for v in r] for r in rows])
    except InvalidIndexError as exc:
        raise SpecError(where, str(exc)) from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(where, str(exc)) from None
    return item["label"], m


def parse_spec_data(data, allow_large: bool = False) -> SystemSpec:
    try:
        jsonschema.validate(data, SPEC_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise SpecError(_path(exc.absolute_path), exc.message) from None
    from .decomp import formation_a, formation_label, split_generators, sl3_generators

    group = data["group"]
    kind = data["basis_kind"]
    gtype = group["type"]
    if kind not in GROUP_KINDS[gtype]:
        raise SpecError("spec.basis_kind", f"{kind!r} does not fit group type {gtype!r}")
    gens_data = data["generators"]

    def check_dups(keys):
        seen = set()
        for k, key in enumerate(keys):
            if key in seen:
                raise SpecError(f"spec.generators[{k}]", f"duplicate generator {key!r}")
            seen.add(key)

    if gtype == "SO":
        n = group.get("n")
        if n is None:
            raise SpecError("spec.group.n", "SO group needs n")
        if n < 1:
            raise SpecError("spec.group.n", f"n must be at least 1, got {n}")
        if n > ANALYZE_MAX_N and not allow_large:
            raise SpecError("spec.group.n", f"n={n} exceeds the cap {ANALYZE_MAX_N}; pass --allow-large")
        if kind == "son_split" and n != 4:
            raise SpecError("spec.group.n", "the split basis lives in so(4); n must be 4")
    elif gtype == "FORMATION":
        n = group.get("N")
        if n is None:
            raise SpecError("spec.group.N", "FORMATION group needs N")
        if n < 2:
            raise SpecError("spec.group.N", f"formation control needs N >= 2, got {n}")
        if n > ANALYZE_MAX_N and not allow_large:
            raise SpecError("spec.group.N", f"N={n} exceeds the cap {ANALYZE_MAX_N}; pass --allow-large")
    else:
        n = 3

    if kind in ("standard_son", "formation"):
        pairs = [_pair(item, f"spec.generators[{k}]", n) for k, item in enumerate(gens_data)]
        check_dups(pairs)
        if kind == "standard_son":
            gens = GeneratorSet.standard(n, pairs)
        else:
            gens = GeneratorSet(n, tuple((formation_label(n, i, j), formation_a(n, i, j))
                                         for i, j in pairs), "formation")
    elif kind in ("son_split", "sl3c"):
        for k, item in enumerate(gens_data):
            if not isinstance(item, str):
                raise SpecError(f"spec.generators[{k}]", f"expected a label string, got {item!r}")
        check_dups(gens_data)
        build = split_generators if kind == "son_split" else sl3_generators
        for k, item in enumerate(gens_data):
            try:
                build([item])
            except ValueError as exc:
                raise SpecError(f"spec.generators[{k}]", str(exc)) from None
        gens = build(gens_data)
    else:
        items = [_raw_generator(item, f"spec.generators[{k}]", n) for k, item in enumerate(gens_data)]
        check_dups([lab for lab, _ in items])
        gens = GeneratorSet(n, tuple(items), "raw")

    opts = data.get("options", {})
    backends = opts.get("backends")
    options = SpecOptions(
        backends=tuple(backends) if backends is not None else None,
        trace_closure=opts.get("trace_closure", False),
        max_witnesses=opts.get("max_witnesses", 10),
        field=opts.get("field"),
    )
    return SystemSpec(data["name"], dict(group), kind, gens, list(gens_data), options)


def parse_spec(text: str, allow_large: bool = False) -> SystemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"line {exc.lineno} column {exc.colno}", f"malformed JSON: {exc.msg}") from None
    return parse_spec_data(data, allow_large)


def load_spec(path: str, allow_large: bool = False) -> SystemSpec:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), allow_large)


def standard_spec(name: str, n: int, pairs, **options) -> dict:
    return {"name": name, "group": {"type": "SO", "n": n}, "basis_kind": "standard_son",
            "generators": [list(p) for p in pairs], "options": options}


def standard_labels(n: int, pairs) -> list[str]:
    return [omega_label(n, i, j) for i, j in pairs]
