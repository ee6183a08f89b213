"""``semichain`` command line.

Exit status: 0 success, 1 a check failed (or a search ran out of budget),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import order, ramsey, sgt, structure, verify
from .enumeration import canonical_form, enumerate_semigroups
from .sgcore import CayleyTable, MalformedTableError, NotASemigroupError
from .witness import ex_truncate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> CayleyTable:
    try:
        table = sgt.load(path)
        return table.require_semigroup()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except sgt.SgtParseError as exc:
        raise InputError(str(exc)) from None
    except (MalformedTableError, NotASemigroupError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit_json(data, dest: str | None) -> None:
    if dest is None:
        return
    text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    if dest == "-":
        sys.stdout.write(text)
    else:
        Path(dest).write_text(text)


def _names(table: CayleyTable, xs) -> str:
    return "{" + ", ".join(table.label(x) for x in xs) + "}"


def _parse_elements(table: CayleyTable, raw: str) -> list[int]:
    out = []
    for tok in raw.replace(",", " ").split():
        if table.labels is not None and tok in table.labels:
            out.append(table.labels.index(tok))
            continue
        try:
            x = int(tok)
        except ValueError:
            raise InputError(f"unknown element {tok!r}") from None
        if not 0 <= x < table.order:
            raise InputError(f"element {x} outside [0, {table.order})")
        out.append(x)
    if len(set(out)) != len(out):
        raise InputError("element list has repeats")
    return out


def cmd_analyze(args) -> int:
    table = _load(args.path)
    profiles = structure.power_profiles(table)
    fibers = structure.fiber_decomposition(table)
    hcls = structure.h_classes(table)
    chain = order.max_chain(table, args.budget)
    anti = order.max_antichain(table, args.budget)
    idem = list(structure.idempotents(table))

    print(f"order: {table.order}")
    print(f"idempotents: {_names(table, idem)}")
    print("power profiles (element: index, period, idempotent power):")
    for p in profiles:
        print(f"  {table.label(p.element)}: {p.index}, {p.period}, {table.label(p.idempotent_power)}")
    print("fibers:")
    for e, f in sorted(fibers.items()):
        print(f"  {table.label(e)}: size {len(f)} {_names(table, f)}")
    print("H-classes:")
    for h in hcls:
        print(f"  {_names(table, h.members)}")
    print(f"max chain: {len(chain)} witness {_names(table, chain)}")
    print(f"max antichain: {len(anti)} witness {_names(table, anti)}")

    _emit_json(
        {
            "order": table.order,
            "labels": list(table.labels) if table.labels else None,
            "idempotents": idem,
            "power_profiles": [
                {"element": p.element, "index": p.index, "period": p.period,
                 "idempotent_power": p.idempotent_power}
                for p in profiles
            ],
            "fiber_sizes": {str(e): len(f) for e, f in sorted(fibers.items())},
            "fibers": {str(e): f.to_list() for e, f in sorted(fibers.items())},
            "hclasses": [h.members.to_list() for h in hcls],
            "max_chain": len(chain),
            "max_chain_witness": chain.to_list(),
            "max_antichain": len(anti),
            "max_antichain_witness": anti.to_list(),
            "chain_graph": order.chain_graph(table).adjacency_lists(),
            "antichain_graph": order.antichain_graph(table).adjacency_lists(),
        },
        args.json,
    )
    return EXIT_OK


def cmd_enumerate(args) -> int:
    start = time.perf_counter()
    tables = list(enumerate_semigroups(args.order, args.symmetry, jobs=args.jobs))
    if args.sorted:
        tables.sort(key=lambda t: t.rows)
    elapsed = time.perf_counter() - start
    print(f"order {args.order}, symmetry {args.symmetry}: {len(tables)} classes ({elapsed:.2f}s)")
    if args.out and not args.count_only:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for t in tables:
            sgt.dump(t, out / f"{canonical_form(t, args.symmetry).digest()}.sgt")
    elif not args.count_only:
        for t in tables:
            sys.stdout.write(sgt.dumps(t))
    _emit_json({"order": args.order, "symmetry": args.symmetry, "count": len(tables)}, args.json)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        items = list(verify.iter_corpus(args.corpus))
    except ValueError as exc:
        raise InputError(str(exc)) from None
    start = time.perf_counter()
    reports = verify.run_suite(items, jobs=args.jobs, fail_fast=args.fail_fast, node_budget=args.budget)
    elapsed = time.perf_counter() - start
    summ = verify.summary(reports)
    for r in reports:
        if not r.passed or args.verbose:
            status = "ok" if r.passed else "FAIL"
            print(f"{status} {r.table_id}")
            for c in r.failures:
                print(f"  {c.name}: {json.dumps(c.witness)}")
    print(
        f"tables: {summ['tables']}  checks: {summ['checks']}  failures: {summ['failures']}  "
        f"({elapsed:.2f}s)"
    )
    _emit_json(verify.report_json(reports), args.json)
    return EXIT_FAIL if summ["failures"] else EXIT_OK


def cmd_example(args) -> int:
    if args.level < 1:
        raise InputError("level bound must be at least 1")
    table, _ = ex_truncate(args.level)
    text = sgt.dumps(table)
    if args.out:
        Path(args.out).write_text(text)
    elif not args.check:
        sys.stdout.write(text)
    if not args.check:
        return EXIT_OK
    results = verify.example_properties(args.level)
    for c in results:
        line = f"{'pass' if c.passed else 'FAIL'} {c.name}"
        if c.witness:
            line += f" {json.dumps(c.witness)}"
        print(line)
    _emit_json({"level": args.level, "checks": [vars(c) for c in results]}, args.json)
    return EXIT_OK if all(c.passed for c in results) else EXIT_FAIL


def cmd_clique(args) -> int:
    table = _load(args.path)
    graph = order.chain_graph(table) if args.mode == "chain" else order.antichain_graph(table)
    if args.edges:
        sys.stdout.write(graph.edge_list_text())
    try:
        best = order.max_clique(graph, args.budget)
    except order.CliqueBudgetExceeded as exc:
        print(f"budget exceeded; best {args.mode} so far: {len(exc.best)} {_names(table, exc.best)}")
        return EXIT_FAIL
    print(f"max {args.mode}: {len(best)} {_names(table, best)}")
    _emit_json({"mode": args.mode, "size": len(best), "members": best.to_list(),
                "graph": graph.adjacency_lists()}, args.json)
    return EXIT_OK


def cmd_ramsey_replay(args) -> int:
    table = _load(args.path)
    if args.elements is not None:
        xs = _parse_elements(table, args.elements)
    elif args.mode == "chi6":
        xs = list(structure.idempotents(table))
    else:
        raise InputError("chi5 needs --elements")
    try:
        col = ramsey.chi5(table, xs) if args.mode == "chi5" else ramsey.chi6(table, xs)
    except ValueError as exc:
        raise InputError(str(exc)) from None

    print(f"{args.mode} over {_names(table, xs)}")
    if col.item_count < 2:
        print("coloring: empty (fewer than two elements)")
    else:
        print("coloring (row n: colors of (n, n+1..N-1)):")
        for n, row in enumerate(col.rows[:-1]):
            print(f"  {n}: " + " ".join(map(str, row)))
    data = {"mode": args.mode, "elements": xs, "coloring": [list(r) for r in col.rows]}
    if col.item_count >= 1:
        mono = ramsey.greedy_monochromatic(col)
        print(f"monochromatic subset: color {mono.color}, indices {list(mono.indices)} "
              f"(guarantee {mono.guarantee})")
        data["monochromatic"] = {"color": mono.color, "indices": list(mono.indices),
                                 "guarantee": mono.guarantee}
        if args.mode == "chi6" and mono.color == 1 and len(mono.indices) >= 2:
            es = [xs[i] for i in mono.indices]
            chains = {}
            for k in range(len(es) - 1):
                z = ramsey.replay_zchain(table, es, k)
                chains[k] = z.to_list()
                print(f"  Z_{k} = {_names(table, z)} is a chain")
            data["zchains"] = chains
    _emit_json(data, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semichain", description="Chains and antichains in finite semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    def budget(sp):
        sp.add_argument("--budget", type=int, default=None,
                        help=f"clique search node budget (default ${order.BUDGET_ENV} or {order.DEFAULT_NODE_BUDGET})")

    a = sub.add_parser("analyze", help="structure report for one .sgt table")
    a.add_argument("path")
    a.add_argument("--json", metavar="OUT", help="write a JSON report ('-' for stdout)")
    budget(a)
    a.set_defaults(func=cmd_analyze)

    e = sub.add_parser("enumerate", help="all semigroups of a small order up to symmetry")
    e.add_argument("--order", type=int, required=True, choices=[1, 2, 3, 4])
    e.add_argument("--symmetry", choices=["iso", "iso-anti"], default="iso")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--out", metavar="DIR", help="write one .sgt file per class")
    e.add_argument("--sorted", action="store_true", help="emit in canonical order")
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--json", metavar="OUT")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("verify", help="run the invariant suite over a corpus")
    v.add_argument("--corpus", required=True, help="e.g. 'enum:1-3,stock:12,example:1-8,random:1000:6:0'")
    v.add_argument("--json", metavar="OUT")
    v.add_argument("--fail-fast", action="store_true")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--verbose", "-v", action="store_true")
    budget(v)
    v.set_defaults(func=cmd_verify)

    x = sub.add_parser("example", help="truncation of the level semilattice as .sgt")
    x.add_argument("level", type=int)
    x.add_argument("--out", metavar="FILE")
    x.add_argument("--check", action="store_true", help="check the finite forms of its properties")
    x.add_argument("--json", metavar="OUT")
    x.set_defaults(func=cmd_example)

    c = sub.add_parser("clique", help="maximum chain or antichain of a .sgt table")
    c.add_argument("path")
    c.add_argument("--mode", choices=["chain", "antichain"], required=True)
    c.add_argument("--edges", action="store_true", help="dump the compatibility graph as 'u v' lines")
    c.add_argument("--json", metavar="OUT")
    budget(c)
    c.set_defaults(func=cmd_clique)

    r = sub.add_parser("ramsey-replay", help="pair coloring and monochromatic extraction")
    r.add_argument("path")
    r.add_argument("--mode", choices=["chi5", "chi6"], required=True)
    r.add_argument("--elements", help="comma-separated indices or labels (chi6 defaults to all idempotents)")
    r.add_argument("--json", metavar="OUT")
    r.set_defaults(func=cmd_ramsey_replay)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if isinstance(exc.code, int) else EXIT_USAGE
    if getattr(args, "symmetry", None) == "iso-anti":
        args.symmetry = "iso_and_anti"
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except order.CliqueBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
