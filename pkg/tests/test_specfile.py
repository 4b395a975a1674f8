import json
from fractions import Fraction

import pytest

from liectrl.lie_core import omega
from liectrl.specfile import SpecError, load_spec, parse_spec, parse_spec_data, standard_spec


def so(n, gens, **extra):
    d = {"name": "t", "group": {"type": "SO", "n": n}, "basis_kind": "standard_son", "generators": gens}
    d.update(extra)
    return d


def test_standard_spec_parses():
    s = parse_spec_data(standard_spec("p", 4, [(1, 2), (2, 3)], trace_closure=True))
    assert s.generators.pairs == ((1, 2), (2, 3))
    assert s.generators.labels == ("O12", "O23")
    assert s.options.trace_closure and s.options.max_witnesses == 10
    assert parse_spec_data(s.to_dict()).generators == s.generators


@pytest.mark.parametrize("data,where", [
    (so(3, [[2, 2]]), "spec.generators[0]"),
    (so(3, [[3, 1]]), "spec.generators[0]"),
    (so(3, [[1, 4]]), "spec.generators[0]"),
    (so(0, []), "spec.group.n"),
    (so(3, [[1, 2], [1, 2]]), "spec.generators[1]"),
    (so(3, [[1, "2"]]), "spec.generators[0]"),
    (dict(so(3, []), basis_kind="weird"), "spec.basis_kind"),
    (dict(so(3, []), basis_kind="sl3c"), "spec.basis_kind"),
    (dict(so(3, ["A1"]), basis_kind="son_split"), "spec.group.n"),
    (so(13, []), "spec.group.n"),
    ({"name": "x", "group": {"type": "SO"}, "basis_kind": "standard_son", "generators": []}, "spec.group.n"),
    (so(3, [], options={"backends": ["magic"]}), "spec.options.backends[0]"),
    ({"name": "f", "group": {"type": "FORMATION", "N": 1}, "basis_kind": "formation", "generators": []},
     "spec.group.N"),
    ({"name": "s", "group": {"type": "SL3C"}, "basis_kind": "sl3c", "generators": ["X9"]},
     "spec.generators[0]"),
])
def test_spec_errors_name_the_field(data, where):
    with pytest.raises(SpecError) as info:
        parse_spec_data(data)
    assert info.value.where == where


def test_large_n_allowed_with_flag():
    assert parse_spec_data(so(13, [[1, 2]]), allow_large=True).n == 13


def test_malformed_json_reports_position():
    with pytest.raises(SpecError) as info:
        parse_spec('{"name": "x",\n  "group": }')
    assert info.value.where == "line 2 column 12"


def test_raw_generators():
    data = {"name": "r", "group": {"type": "SO", "n": 3}, "basis_kind": "raw", "generators": [
        {"label": "C1", "omega": [[1, 1, 2], ["1/2", 2, 3]]},
        {"label": "C2", "matrix": [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]}]}
    s = parse_spec_data(data)
    mats = dict(s.generators)
    assert mats["C1"] == omega(3, 1, 2) + omega(3, 2, 3) * Fraction(1, 2)
    assert mats["C2"] == omega(3, 1, 3)


@pytest.mark.parametrize("gen", [
    {"label": "C"},
    {"label": "C", "omega": [[1, 1, 2]], "matrix": [[0]]},
    {"label": "C", "omega": [[1, 2, 2]]},
    {"label": "C", "matrix": [[0, 1], [1, 0]]},
    {"label": "C", "matrix": [[0, 0.5, 0], [0, 0, 0], [0, 0, 0]]},
    {"omega": [[1, 1, 2]]},
])
def test_raw_generator_errors(gen):
    data = {"name": "r", "group": {"type": "SO", "n": 3}, "basis_kind": "raw", "generators": [gen]}
    with pytest.raises(SpecError) as info:
        parse_spec_data(data)
    assert info.value.where.startswith("spec.generators[0]")


def test_raw_duplicate_labels():
    gen = {"label": "C", "omega": [[1, 1, 2]]}
    data = {"name": "r", "group": {"type": "SO", "n": 3}, "basis_kind": "raw", "generators": [gen, gen]}
    with pytest.raises(SpecError, match="duplicate"):
        parse_spec_data(data)


def test_complex_raw_matrix():
    data = {"name": "c", "group": {"type": "SL3C"}, "basis_kind": "raw", "generators": [
        {"label": "Z", "matrix": [["i", 0, 0], [0, "-i", 0], [0, 0, 0]]}]}
    m = dict(parse_spec_data(data).generators)["Z"]
    assert not m.is_real()


def test_bundled_specs_load(tmp_path):
    import pathlib
    root = pathlib.Path(__file__).resolve().parent.parent / "specs"
    files = sorted(root.glob("*.json"))
    assert len(files) == 10
    for f in files:
        assert load_spec(str(f)).name == f.stem
    p = tmp_path / "x.json"
    p.write_text(json.dumps(so(3, [[1, 2]])))
    assert load_spec(str(p)).n == 3
