"""Readers for group, coefficient and module specifications."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from . import linalg as la
from .errors import SpecParseError, UnknownName
from .groups import FiniteGroup, builtin_group, group_from_cayley, group_from_permutations, subgroup_by_id
from .modules import (
    GammaModule,
    GroupRep,
    constant_module,
    fixed_point_module,
    free_module,
    gset_rep,
    interval_module,
    perm_rep,
)
from .orbit import OrbitCategory


def _read_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecParseError(f"cannot read {path}: {exc}") from None


def group_from_json(data: dict) -> FiniteGroup:
    name = data.get("name", "")
    if "cayley" in data:
        return group_from_cayley(data["cayley"], name=name)
    if "generators" in data:
        gens = data["generators"]
        if "points" in data and any(len(g) != data["points"] for g in gens):
            raise SpecParseError("generator length differs from the declared number of points")
        return group_from_permutations(gens, name=name)
    raise SpecParseError("group file needs 'cayley' or 'generators'")


def load_group(source: str) -> FiniteGroup:
    """A builtin name such as 'klein4', or a path to a group JSON file."""
    if source.endswith(".json") or Path(source).is_file():
        return group_from_json(_read_json(source))
    return builtin_group(source)


def rep_from_json(G: FiniteGroup, data: dict, p: int) -> GroupRep:
    """{"generators": {"<element>": matrix, ...}} completed by word enumeration."""
    try:
        images = {int(k): v for k, v in data["generators"].items()}
    except (KeyError, AttributeError, ValueError):
        raise SpecParseError("representation file needs a 'generators' object keyed by element index") from None
    return GroupRep.from_generators(G, p, images)


def parse_coeff(G: FiniteGroup, spec: str, p: int) -> GroupRep:
    """trivial | regular | perm:S<k> | gset:S<i>,S<j>,... | file:<path>"""
    head, _, rest = spec.partition(":")
    if head == "trivial" and not rest:
        return GroupRep.trivial(G, p)
    if head == "regular" and not rest:
        return GroupRep.regular(G, p)
    if head == "perm" and rest:
        return perm_rep(G, subgroup_by_id(G, rest), p)
    if head == "gset" and rest:
        return gset_rep(G, [subgroup_by_id(G, t) for t in rest.split(",")], p)
    if head == "file" and rest:
        return rep_from_json(G, _read_json(rest), p)
    raise SpecParseError(f"unknown coefficient spec {spec!r}")


def _object(C: OrbitCategory, token: str) -> int:
    sub = subgroup_by_id(C.group, token)
    try:
        return C.object_index(sub)
    except KeyError:
        raise SpecParseError(f"{token} is not in the family") from None


def parse_module(C: OrbitCategory, spec: str, p: int) -> GammaModule:
    """constant | interval:S3,S1 | fixed:<coeff> | free:S3 | file:<path>"""
    head, _, rest = spec.partition(":")
    if head == "constant" and not rest:
        return constant_module(C, p)
    if head == "interval" and rest:
        return interval_module(C, [_object(C, t) for t in rest.split(",")], p)
    if head == "fixed" and rest:
        return fixed_point_module(C, parse_coeff(C.group, rest, p))
    if head == "free" and rest:
        return free_module(C, _object(C, rest), p)
    if head == "file" and rest:
        return module_from_json(C, _read_json(rest), p)
    raise SpecParseError(f"unknown module spec {spec!r}")


def module_to_json(M: GammaModule) -> dict:
    return {
        "schema": 1,
        "objects": M.cat.object_ids(),
        "p": M.p,
        "dims": M.dims,
        "act": [a.tolist() for a in M.act],
    }


def module_from_json(C: OrbitCategory, data: dict, p: int) -> GammaModule:
    try:
        dims = [int(d) for d in data["dims"]]
        raw = data["act"]
    except (KeyError, TypeError, ValueError):
        raise SpecParseError("module file needs 'dims' and 'act'") from None
    if "objects" in data and data["objects"] != C.object_ids():
        raise SpecParseError(f"module objects {data['objects']} differ from {C.object_ids()}")
    if len(dims) != C.n_objects or len(raw) != len(C.morphisms):
        raise SpecParseError(f"expected {C.n_objects} dims and {len(C.morphisms)} matrices")
    act = []
    for f, m in enumerate(C.morphisms):
        shape = (dims[m.source], dims[m.target])
        a = np.array(raw[f], dtype=np.int64).reshape(shape) if all(shape) else la.zeros(*shape)
        act.append(a % p)
    return GammaModule(C, p, dims, act, check=True)


def parse_prime(text: str) -> int:
    try:
        la.PrimeField(int(text))
    except ValueError as exc:
        raise UnknownName(str(exc)) from None
    return int(text)
