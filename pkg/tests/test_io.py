from __future__ import annotations

import json

import pytest

from orbicoh.errors import SpecParseError, UnknownName, UnknownSubgroupId
from orbicoh.io import load_group, module_from_json, module_to_json, parse_coeff, parse_module, parse_prime
from orbicoh.modules import constant_module


def test_group_files(tmp_path):
    f = tmp_path / "v.json"
    f.write_text(json.dumps({"name": "v", "cayley": [[0, 1], [1, 0]]}))
    assert load_group(str(f)).order == 2
    g = tmp_path / "p.json"
    g.write_text(json.dumps({"name": "s3", "points": 3, "generators": [[1, 0, 2], [1, 2, 0]]}))
    assert load_group(str(g)).order == 6
    bad = tmp_path / "b.json"
    bad.write_text(json.dumps({"name": "x", "points": 4, "generators": [[1, 0, 2]]}))
    with pytest.raises(SpecParseError):
        load_group(str(bad))
    with pytest.raises(SpecParseError):
        load_group(str(tmp_path / "missing.json"))


def test_coeff_specs(klein4, tmp_path):
    assert parse_coeff(klein4, "trivial", 2).dim == 1
    assert parse_coeff(klein4, "regular", 2).dim == 4
    assert parse_coeff(klein4, "perm:S1", 2).dim == 2
    assert parse_coeff(klein4, "gset:S1,S2,S3", 2).dim == 6
    f = tmp_path / "rep.json"
    f.write_text(json.dumps({"generators": {"1": [[1, 1], [0, 1]], "2": [[1, 0], [0, 1]]}}))
    assert parse_coeff(klein4, f"file:{f}", 2).dim == 2
    with pytest.raises(SpecParseError):
        parse_coeff(klein4, "weird", 2)
    with pytest.raises(UnknownSubgroupId):
        parse_coeff(klein4, "perm:S17", 2)


def test_module_specs(kcat, tmp_path):
    assert parse_module(kcat, "constant", 2).dims == [1, 1, 1, 1]
    assert parse_module(kcat, "interval:S0,S1", 2).dims == [1, 1, 0, 0]
    assert parse_module(kcat, "fixed:regular", 2).dims == [4, 2, 2, 2]
    assert parse_module(kcat, "free:S1", 2).dims == [2, 2, 0, 0]
    with pytest.raises(SpecParseError):
        parse_module(kcat, "free:S4", 2)
    f = tmp_path / "m.json"
    f.write_text(json.dumps(module_to_json(constant_module(kcat, 3))))
    M = parse_module(kcat, f"file:{f}", 3)
    assert M.dims == [1, 1, 1, 1]
    data = module_to_json(M)
    data["dims"] = [1, 1]
    with pytest.raises(SpecParseError):
        module_from_json(kcat, data, 3)


def test_prime():
    assert parse_prime("3") == 3
    with pytest.raises(UnknownName):
        parse_prime("4")
