"""Command-line front end.

Exit status: 0 on success, 2 on unparseable input (with usage), 1 when a
computation fails (the error's class name is printed).
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import linalg as la
from .errors import OrbicohError, SpecParseError, UnknownName, UnknownSubgroupId, WindowTooShort
from .groupcoh import cohomology_functors, group_cohomology_dims
from .groups import make_family, subgroup_by_id
from .homalg import dimension_cap, ext_dims
from .io import load_group, parse_coeff, parse_module, parse_prime, rep_from_json
from .modules import GroupRep, gset_rep
from .orbit import build_orbit_category, check_category, dump
from .relcoh import fsplit_check, gset_for_family, periodicity_report, relative_cohomology_dims, rg_side_pipeline, xsplit_check
from .spectral import e2_page
from .verify import DEFAULT_SEED, run_suites

PARSE_ERRORS = (SpecParseError, UnknownName, UnknownSubgroupId)


def _common(p: argparse.ArgumentParser, family: bool = True, coeff: bool = True) -> None:
    p.add_argument("--group", required=True, help="builtin name (klein4, cyclic:4, ...) or group JSON file")
    if family:
        p.add_argument("--family", default="cyclic", help="cyclic | all | all_proper | rank_at_most:k | list:S1,S2")
    p.add_argument("--char", default="2", help="characteristic p (prime)")
    if coeff:
        p.add_argument("--coeff", default="trivial", help="trivial | regular | perm:S<k> | gset:S<i>,.. | file:<path>")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    p.add_argument("--max-dim", type=int, default=None, help="per-object dimension cap (overrides ORBICOH_MAX_DIM)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbicoh", description="Ext over orbit categories and relative group cohomology")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("relcoh", help="relative cohomology dimensions and periodicity report")
    _common(p)
    p.add_argument("--max-deg", type=int, default=8)
    p.add_argument("--offset", type=int, default=2, help="stabilization offset for the periodicity search")
    p.add_argument("--rg-check", action="store_true", help="also run the independent GF(p)G-side pipeline")

    p = sub.add_parser("ext", help="Ext dimensions for an arbitrary module pair")
    _common(p, coeff=False)
    p.add_argument("--source", default="constant", help="module spec: constant | interval:S.. | fixed:<coeff> | free:S<k> | file:<path>")
    p.add_argument("--target", default="constant", help="module spec, as --source")
    p.add_argument("--max-deg", type=int, default=6)

    p = sub.add_parser("groupcoh", help="ordinary group cohomology of a subgroup")
    _common(p)
    p.add_argument("--subgroup", default=None, help="subgroup id S<k> (default: the whole group)")
    p.add_argument("--max-deg", type=int, default=6)
    p.add_argument("--functor", action="store_true", help="print H^q(?, M) over the family's orbit category")

    p = sub.add_parser("e2", help="E2 page and edge homomorphisms")
    _common(p)
    p.add_argument("--max-p", type=int, default=4)
    p.add_argument("--max-q", type=int, default=3)

    p = sub.add_parser("fsplit", help="F-split and X-split verdicts for a surjection of representations")
    _common(p, coeff=False)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--augment", help="augmentation GF(p)X -> GF(p) of the G-set X = gset:S<i>,S<j>,..")
    src.add_argument("--file", help='JSON {"source": rep, "target": rep, "pi": matrix}, reps as {"generators": ...}')

    p = sub.add_parser("orbitcat", help="morphism census of the orbit category")
    _common(p, coeff=False)
    p.add_argument("--composition", action="store_true", help="include the full composition table")

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)
    p.add_argument("--paper", action="store_true", help="also replay the recorded reference values")
    p.add_argument("--format", choices=["tsv", "json"], default="tsv")
    return ap


def _emit(args, rows: list[tuple], payload: dict) -> None:
    if args.format == "json":
        print(json.dumps({"schema": 1, "command": args.command, **payload}, indent=2))
        return
    for row in rows:
        if isinstance(row, str):
            print(row)
        else:
            print("\t".join(str(x) for x in row))


def _setup(args):
    G = load_group(args.group)
    p = parse_prime(args.char)
    F = make_family(G, args.family) if hasattr(args, "family") else None
    return G, F, p


def _ints(xs) -> str:
    return " ".join(str(int(x)) for x in xs)


def cmd_relcoh(args) -> None:
    G, F, p = _setup(args)
    M = parse_coeff(G, args.coeff, p)
    dims = relative_cohomology_dims(G, F, M, args.max_deg)
    rows = [
        ("group", G.name, "order", G.order),
        ("family", args.family, *F.ids()),
        ("char", p, "coeff", args.coeff, "dim", M.dim),
        f"dims: {_ints(dims)}",
    ]
    payload = {"group": G.name, "family": F.ids(), "p": p, "coeff": args.coeff, "dims": list(dims)}
    try:
        rep = periodicity_report(dims, args.offset)
    except WindowTooShort:
        rows.append(f"periodicity: not assessed (window {len(dims) - 1} too short for offset {args.offset})")
        payload["periodicity"] = None
    else:
        rows += [rep.line(), f"certificate: {rep.certificate}"]
        payload["periodicity"] = {
            "window": rep.window,
            "offset": rep.offset,
            "period": rep.period,
            "verdict": rep.verdict,
            "certificate": rep.certificate,
        }
    if args.rg_check:
        rg = rg_side_pipeline(G, F, M, args.max_deg)
        rows.append(f"rg-side: {_ints(rg)} ({'agrees' if rg == dims else 'DISAGREES'})")
        payload["rg_side"] = list(rg)
    _emit(args, rows, payload)


def cmd_ext(args) -> None:
    G, F, p = _setup(args)
    C = build_orbit_category(G, F)
    M, N = parse_module(C, args.source, p), parse_module(C, args.target, p)
    dims = ext_dims(M, N, args.max_deg)
    rows = [("objects", *C.object_ids()), ("source", args.source, *M.dims), ("target", args.target, *N.dims), f"dims: {_ints(dims)}"]
    _emit(args, rows, {"objects": C.object_ids(), "source": args.source, "target": args.target, "p": p, "dims": list(dims)})


def cmd_groupcoh(args) -> None:
    G, F, p = _setup(args)
    M = parse_coeff(G, args.coeff, p)
    H = subgroup_by_id(G, args.subgroup) if args.subgroup else G.whole
    dims = group_cohomology_dims(G, H, M, args.max_deg)
    sid = f"S{G.subgroup_id(H)}"
    rows = [("group", G.name, "subgroup", sid, "order", len(H)), f"dims: {_ints(dims)}"]
    payload = {"group": G.name, "subgroup": sid, "p": p, "coeff": args.coeff, "dims": list(dims)}
    if args.functor:
        C = build_orbit_category(G, F)
        funcs = cohomology_functors(C, M, args.max_deg)
        rows.append(("objects", *C.object_ids()))
        rows += [(f"H^{f.q}", *f.values.dims) for f in funcs]
        payload["functor"] = {"objects": C.object_ids(), "dims": [f.values.dims for f in funcs]}
    _emit(args, rows, payload)


def cmd_e2(args) -> None:
    G, F, p = _setup(args)
    M = parse_coeff(G, args.coeff, p)
    page = e2_page(G, F, M, args.max_p, args.max_q)
    rows = [page.banner, ("q\\p", *range(page.P + 1))]
    rows += [(q, *page.row(q)) for q in range(page.Q, -1, -1)]
    rows += [
        f"target H^n(G,M): {_ints(page.target_dims)}",
        f"horizontal edge ranks: {_ints(page.horizontal_ranks())}",
        f"vertical edge ranks: {_ints(page.vertical_ranks())}",
        f"vertical edge kernels: {_ints(page.vertical_kernels())}",
        f"relative essential: {_ints(page.relative_essential())}",
        f"subquotient bound: {'ok' if page.subquotient_ok() else 'VIOLATED'}",
    ]
    _emit(args, rows, {"group": G.name, "family": F.ids(), "p": p, "coeff": args.coeff, **page.to_json()})


def cmd_fsplit(args) -> None:
    G, F, p = _setup(args)
    if args.augment:
        head, _, rest = args.augment.partition(":")
        if head != "gset" or not rest:
            raise SpecParseError(f"--augment expects gset:S<i>,..., got {args.augment!r}")
        B = gset_rep(G, [subgroup_by_id(G, t) for t in rest.split(",")], p)
        Cr = GroupRep.trivial(G, p)
        pi = np.ones((1, B.dim), dtype=np.int64)
    else:
        try:
            with open(args.file) as fh:
                data = json.load(fh)
            B, Cr = rep_from_json(G, data["source"], p), rep_from_json(G, data["target"], p)
            pi = la.asmat(data["pi"], p)
        except (OSError, KeyError, ValueError) as exc:
            raise SpecParseError(f"cannot read {args.file}: {exc}") from None
    report = fsplit_check(B, Cr, pi, F)
    X = gset_for_family(G, F)
    xs = xsplit_check(B, Cr, pi, X)
    rows = [(sid, "split" if v.split else "not split", v.certificate) for sid, v in report.verdicts.items()]
    rows += [
        f"F-split: {'yes' if report.overall else 'no'}",
        f"X-split (X = {' + '.join(f'G/S{G.subgroup_id(h)}' for h in X)}): {'yes' if xs.split else 'no'}",
    ]
    payload = {
        "group": G.name,
        "family": F.ids(),
        "p": p,
        "verdicts": {
            sid: {"split": v.split, "witness": v.witness.tolist() if v.witness is not None else None, "certificate": v.certificate}
            for sid, v in report.verdicts.items()
        },
        "f_split": report.overall,
        "x_split": xs.split,
        "x": [f"S{G.subgroup_id(h)}" for h in X],
    }
    _emit(args, rows, payload)


def cmd_orbitcat(args) -> None:
    G, F, p = _setup(args)
    C = build_orbit_category(G, F)
    report = check_category(C)
    data = dump(C, args.composition)
    rows = [("objects", *data["objects"]), ("orders", *data["orders"])]
    rows += [(oid, *row) for oid, row in zip(data["objects"], data["census"])]
    rows += [f"morphisms: {data['morphisms']}", f"check: {'pass' if report.ok else report.failure}"]
    payload = {k: v for k, v in data.items() if k != "schema"}
    payload["check"] = "pass" if report.ok else report.failure
    _emit(args, rows, payload)


def cmd_verify(args) -> int:
    results = run_suites(args.seed, args.paper)
    _emit(
        args,
        [r.line() for r in results],
        {"seed": args.seed, "suites": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]},
    )
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "relcoh": cmd_relcoh,
    "ext": cmd_ext,
    "groupcoh": cmd_groupcoh,
    "e2": cmd_e2,
    "fsplit": cmd_fsplit,
    "orbitcat": cmd_orbitcat,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with dimension_cap(getattr(args, "max_dim", None)):
            status = COMMANDS[args.command](args)
    except PARSE_ERRORS as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 2
    except OrbicohError as exc:
        print(f"error: {exc.name}: {exc}", file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
