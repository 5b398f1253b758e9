"""Command-line interface: ``green-ideals <command> [options]``."""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__, green
from .catalog import build, catalog, load_group_file, subgroup_class_labels
from .errors import ResourceError, ValidationError
from .green import GreenFunctor
from .grp import CAPS, Group, set_caps
from .lattice import LatticeContext, bk_poset, build_poset, closed_sets
from .qburnside import BURNSIDE, is_B_group
from .shifted import ShiftedBurnside, is_MC_group_shifted, shifted_instance
from .slice import SLICE, t_slices
from .verify import idempotent_axioms, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_functor(spec: str) -> GreenFunctor:
    if spec == "burnside":
        return BURNSIDE
    if spec == "slice":
        return SLICE
    if spec.startswith("shifted:"):
        return shifted_instance(group(spec.split(":", 1)[1]))
    raise UsageError(f"unknown functor {spec!r}; use burnside, slice or shifted:<K>")


def group(name: str) -> Group:
    try:
        return build(name)
    except ValidationError as exc:
        raise UsageError(f"unknown group {name!r}: {exc}") from None


def selected_groups(args) -> list[Group]:
    if args.group:
        return [group(n) for n in args.group]
    return catalog(args.max_order)


def parallel_map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# rendering


def render(data: dict, rows: list[list[str]] | None, fmt: str, dot: str | None = None) -> str:
    if fmt == "json":
        return json.dumps(data, indent=2, sort_keys=False) + "\n"
    if fmt == "tsv":
        return "".join("\t".join(r) + "\n" for r in rows or [])
    if fmt == "dot":
        if dot is None:
            raise UsageError("--format dot is only available for the poset command")
        return dot
    raise UsageError(f"unknown format {fmt!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args) -> tuple[dict, list[list[str]], int]:
    out = []
    for G in selected_groups(args):
        out.append(
            {
                "name": G.name,
                "order": G.order,
                "subgroup_classes": len(G.subgroup_classes()),
                "slice_classes": len(G.slice_classes()),
            }
        )
    rows = [[r["name"], str(r["order"]), str(r["subgroup_classes"]), str(r["slice_classes"])] for r in out]
    return {"schema": 1, "groups": out}, rows, EXIT_OK


def cmd_idempotents(args) -> tuple[dict, list[list[str]], int]:
    inst = parse_functor(args.functor)
    groups = [group(n) for n in args.group] if args.group else catalog(args.max_order)
    out, rows = [], []
    for G in groups:
        ev = inst.evaluation(G)
        labels = ev.idempotent_labels()
        items = []
        for i, e in enumerate(ev.idempotents()):
            text = repr(inst.element(G, e))
            items.append({"index": i, "label": labels[i], "value": inst.element(G, e).to_json(), "text": text})
            rows.append([G.name, str(i), labels[i], text])
        ok = idempotent_axioms(inst, G)
        out.append({"group": G.name, "idempotents": items, "orthogonal": ok, "complete": ok})
    return {"schema": 1, "functor": inst.name, "groups": out}, rows, EXIT_OK


def cmd_bgroups(args) -> tuple[dict, list[list[str]], int]:
    out, rows = [], []
    for G in selected_groups(args):
        if is_B_group(G)[0]:
            out.append({"group": G.name, "idempotent": len(G.subgroup_classes()) - 1})
            rows.append([G.name])
    return {"schema": 1, "bound": args.max_order, "bgroups": out}, rows, EXIT_OK


def cmd_mc_groups(args) -> tuple[dict, list[list[str]], int]:
    inst = parse_functor(args.functor)
    groups = selected_groups(args)
    found = parallel_map(lambda G: green.mc_idempotents(inst, G), groups, args.jobs)
    out, rows = [], []
    for G, w in zip(groups, found):
        if w:
            labels = inst.evaluation(G).idempotent_labels()
            out.append({"group": G.name, "witnesses": [{"index": i, "label": labels[i]} for i in w]})
            rows.append([G.name, ",".join(labels[i] for i in w)])
    return {"schema": 1, "functor": inst.name, "bound": args.max_order, "mc_groups": out}, rows, EXIT_OK


def cmd_t_slices(args) -> tuple[dict, list[list[str]], int]:
    out, rows = [], []
    for G in selected_groups(args):
        names = subgroup_class_labels(G)
        for S in t_slices(G):
            pair = [G.name if G.order > 1 else "1", names[G.class_of(S)]]
            out.append({"group": G.name, "slice": pair})
            rows.append([G.name, f"({pair[0]},{pair[1]})"])
    return {"schema": 1, "t_slices": out}, rows, EXIT_OK


def cmd_bk_groups(args) -> tuple[dict, list[list[str]], int]:
    inst = parse_functor(args.functor)
    if not isinstance(inst, ShiftedBurnside):
        raise UsageError("bk-groups needs --functor shifted:<K>")
    K = inst.K
    groups = selected_groups(args)
    out, rows = [], []
    for L in groups:
        ok, X = is_MC_group_shifted(K, L)
        if ok:
            out.append({"group": L.name, "witness": list(X.elements)})
            rows.append([L.name, " ".join(map(str, X.elements))])
    bk, _, _ = bk_poset(K, args.max_order)
    data = {
        "schema": 1,
        "K": K.name,
        "bound": args.max_order,
        "mc_groups": out,
        "bk_groups": [n.to_json() for n in bk.nodes],
        "edges": [[a, b] for a in range(len(bk.nodes)) for b in range(len(bk.nodes)) if a != b and bk.rel[a][b]],
    }
    return data, rows, EXIT_OK


def cmd_poset(args) -> tuple[dict, list[list[str]], int, str]:
    inst = parse_functor(args.functor)
    P = build_poset(inst, args.max_order)
    rows = [[f"{P.nodes[a].group.name}:{P.nodes[a].index}", f"{P.nodes[b].group.name}:{P.nodes[b].index}"] for a, b in P.covers()]
    return P.to_json(), rows, EXIT_OK, P.to_dot()


def cmd_ideals(args) -> tuple[dict, list[list[str]], int]:
    inst = parse_functor(args.functor)
    P = build_poset(inst, args.max_order)
    ctx = LatticeContext(inst, P)
    out, rows = [], []
    for B in closed_sets(P, args.limit):
        I = ctx.psi(B)
        theta = ctx.theta(I)
        out.append({"closed_set": B.labels(), "theta": theta.labels(), "ideal": I.to_json()})
        rows.append([",".join(B.labels()) or "-", ";".join(f"{k}:{','.join(map(str, v))}" for k, v in I.to_json().items())])
    return {"schema": 1, "functor": inst.name, "bound": args.max_order, "ideals": out}, rows, EXIT_OK


def cmd_verify(args) -> tuple[dict, list[list[str]], int]:
    inst = parse_functor(args.functor)
    suites = [s.to_json() for s in run_all(inst, args.max_order)]
    failures = [f"{s['suite']}: {f}" for s in suites for f in s["failures"]]
    data = {
        "schema": 1,
        "functor": inst.name,
        "bound": args.max_order,
        "suite": [{"suite": s["suite"], "cases": s["cases"], "failures": s["failures"]} for s in suites],
        "cases": sum(s["cases"] for s in suites),
        "failures": failures,
    }
    rows = [[s["suite"], str(s["cases"]), str(len(s["failures"]))] for s in suites]
    return data, rows, EXIT_FAIL if failures else EXIT_OK


COMMANDS = {
    "catalog": (cmd_catalog, "list catalog groups with subgroup and slice class counts"),
    "idempotents": (cmd_idempotents, "primitive idempotents in the distinguished basis"),
    "bgroups": (cmd_bgroups, "B-groups of the Burnside functor"),
    "mc-groups": (cmd_mc_groups, "MC-groups of a functor, with witness idempotents"),
    "t-slices": (cmd_t_slices, "T-slices (G,S) of the slice Burnside functor"),
    "bk-groups": (cmd_bk_groups, "MC-groups of a shifted functor and the B_K-groups they give"),
    "poset": (cmd_poset, "the poset of MC-pairs under domination"),
    "ideals": (cmd_ideals, "closed sets of the poset and the ideals they correspond to"),
    "verify": (cmd_verify, "run the self-check suites"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--functor", default="burnside", help="burnside, slice or shifted:<K> (default burnside)")
    common.add_argument("--group", action="append", help="catalog group name (repeatable)")
    common.add_argument("--group-file", help="JSON file of extra groups given by permutation generators")
    common.add_argument("--max-order", type=int, default=8, help="largest group order scanned (default 8)")
    common.add_argument("--format", default="json", choices=["json", "tsv", "dot"])
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--caps", help="resource caps, e.g. order=128,product=4096")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for scans")
    common.add_argument("--limit", type=int, default=20, help="node limit for closed-set enumeration")
    parser = argparse.ArgumentParser(prog="green-ideals", description="Idempotents and ideals of Green biset functors.")
    parser.add_argument("--version", action="version", version=f"green-ideals {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def apply_caps(spec: str | None) -> None:
    if not spec:
        return
    vals = {}
    for part in spec.split(","):
        key, _, val = part.partition("=")
        if key not in ("order", "product") or not val.isdigit():
            raise UsageError(f"bad --caps entry {part!r}")
        vals[key] = int(val)
    set_caps(**vals)


def _cache_path(argv: list[str]) -> Path | None:
    root = os.environ.get("GREEN_IDEALS_CACHE")
    if not root:
        return None
    key = hashlib.sha256(json.dumps([__version__] + argv).encode()).hexdigest()
    return Path(root) / f"{key}.out"


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    saved_caps = dict(CAPS)
    try:
        apply_caps(args.caps)
        if args.group_file:
            load_group_file(args.group_file)
        if args.format == "dot" and args.command != "poset":
            raise UsageError("--format dot is only available for the poset command")
        cache = _cache_path(argv) if not args.group_file else None
        if cache is not None and cache.exists():
            code_text = cache.read_text()
            code, _, text = code_text.partition("\n")
            exit_code = int(code)
        else:
            fn = COMMANDS[args.command][0]
            result = fn(args)
            data, rows, exit_code = result[:3]
            dot = result[3] if len(result) > 3 else None
            text = render(data, rows, args.format, dot)
            if cache is not None:
                cache.parent.mkdir(parents=True, exist_ok=True)
                cache.write_text(f"{exit_code}\n{text}")
    except UsageError as exc:
        print(f"green-ideals: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValidationError as exc:
        print(f"green-ideals: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceError as exc:
        print(f"green-ideals: resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    finally:
        CAPS.update(saved_caps)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return exit_code


if __name__ == "__main__":
    sys.exit(main())
