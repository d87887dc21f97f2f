"""Command-line front end.

Subcommands: ``group`` (order/structure summary), ``subgroups`` (lattice
enumeration with optional cache), ``graph`` (DOT/JSON export), ``analyze``
(component report), ``verify`` (claim suites).  Exit codes: 0 pass, 1 a
verification check failed, 2 parse/cache error, 3 order cap exceeded,
4 lattice cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .constructions import (
    GroupSpec,
    construct,
    parse_group_spec,
    spec_from_doc,
    spec_name,
    spec_to_doc,
)
from .errors import (
    CacheMismatch,
    InvalidSpec,
    LatticeCapExceeded,
    OrderCapExceeded,
)
from .graphs import (
    KIND_COMMENSURABILITY,
    KIND_CONTAINMENT,
    CommGraph,
    build_graph,
    components_and_diameters,
)
from .groups import DEFAULT_ORDER_CAP, GroupTable, derived_series, structure_flags
from .lattice import Lattice, _finish_lattice, enumerate_subgroups
from .verify import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    SUITE_NAMES,
    CorpusMember,
    run_suite,
)

EXIT_OK = 0
EXIT_VERDICT_FAIL = 1
EXIT_PARSE = 2
EXIT_ORDER_CAP = 3
EXIT_LATTICE_CAP = 4

ORDER_CAP_ENV = "COMMGRAPH_ORDER_CAP"

_KINDS = {"comm": KIND_COMMENSURABILITY, "cont": KIND_CONTAINMENT}

CACHE_FORMAT_VERSION = 1


# ---------------------------------------------------------------------------
# serialization


def export_dot(graph: CommGraph) -> str:
    """DOT text: one vertex line per lattice member labeled with its order
    and witness labels, then edges in ascending index order."""
    table = graph.lattice.parent
    lines = ["graph G {"]
    for idx, sub in enumerate(graph.lattice.subgroups):
        wits = ", ".join(table.labels[w] for w in sub.witnesses)
        lines.append(f'"S{idx}" [label="|H|={sub.order}: {wits}"];')
    for i, j in sorted(graph.edge_data):
        lines.append(f'"S{i}" -- "S{j}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _component_docs(graph: CommGraph) -> tuple[list[dict], int]:
    reports, connected = components_and_diameters(graph)
    docs = []
    for comp in reports:
        doc = {"vertices": comp.vertices, "diameter": comp.diameter,
               "class": comp.kind}
        if comp.center is not None:
            doc["center"] = comp.center
        docs.append(doc)
    return docs, connected


def graph_json_doc(spec: GroupSpec, graph: CommGraph) -> dict:
    comps, connected = _component_docs(graph)
    return {
        "spec": spec_to_doc(spec),
        "p": graph.p,
        "kind": graph.kind,
        "vertices": [{"id": i, "order": s.order, "witnesses": list(s.witnesses)}
                     for i, s in enumerate(graph.lattice.subgroups)],
        "edges": [[i, j, a, b]
                  for (i, j), (a, b) in sorted(graph.edge_data.items())],
        "components": comps,
        "connected_diameter": connected,
    }


def analyze_doc(spec: GroupSpec, graph: CommGraph) -> dict:
    comps, connected = _component_docs(graph)
    return {"spec": spec_to_doc(spec), "p": graph.p, "kind": graph.kind,
            "components": comps, "connected_diameter": connected}


def lattice_cache_doc(spec: GroupSpec, lat: Lattice) -> dict:
    return {
        "spec": spec_to_doc(spec),
        "order": lat.parent.order,
        "element_labels": list(lat.parent.labels),
        "subgroups": [{"order": s.order,
                       "members": [x for x in s.elements()]}
                      for s in lat.subgroups],
        "format_version": CACHE_FORMAT_VERSION,
    }


def load_lattice_cache(doc: dict, spec: GroupSpec, table: GroupTable) -> Lattice:
    """Rebuild a lattice from a cache document, validating it against the
    freshly constructed table."""
    if not isinstance(doc, dict) or doc.get("format_version") != CACHE_FORMAT_VERSION:
        raise CacheMismatch("unsupported cache format")
    if doc.get("spec") != spec_to_doc(spec):
        raise CacheMismatch("cache file describes a different group spec")
    if doc.get("order") != table.order:
        raise CacheMismatch("cache order does not match the constructed group")
    if doc.get("element_labels") != list(table.labels):
        raise CacheMismatch("cache element labels do not match")
    masks = []
    for entry in doc.get("subgroups", []):
        members = entry.get("members")
        if (not isinstance(members, list)
                or members != sorted(set(members))
                or any(not isinstance(x, int) or not 0 <= x < table.order
                       for x in members)):
            raise CacheMismatch("malformed member list in cache")
        mask = 0
        for x in members:
            mask |= 1 << x
        if mask.bit_count() != entry.get("order"):
            raise CacheMismatch("cached subgroup order mismatch")
        masks.append(mask)
    if len(set(masks)) != len(masks):
        raise CacheMismatch("duplicate subgroups in cache")
    try:
        lat = _finish_lattice(table, masks)
    except (AssertionError, ValueError) as exc:
        raise CacheMismatch(f"cache is not a valid lattice: {exc}") from None
    if [s.members for s in lat.subgroups] != masks:
        raise CacheMismatch("cache subgroups are not in canonical order")
    return lat


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# command helpers


def _order_cap(args) -> int:
    if args.order_cap is not None:
        return args.order_cap
    env = os.environ.get(ORDER_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            print(f"warning: ignoring non-integer {ORDER_CAP_ENV}={env!r}",
                  file=sys.stderr)
    return DEFAULT_ORDER_CAP


def _lattice_for(args, spec: GroupSpec, table: GroupTable) -> Lattice:
    """Lattice with optional file cache: read when present, else compute
    and write."""
    cache_path = getattr(args, "cache", None)
    if cache_path and os.path.exists(cache_path):
        with open(cache_path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
        return load_lattice_cache(doc, spec, table)
    lat = enumerate_subgroups(table)
    if cache_path:
        _write_text(cache_path, _dump_json(lattice_cache_doc(spec, lat)))
    return lat


def cmd_group(args) -> int:
    spec = parse_group_spec(args.spec)
    table = construct(spec, _order_cap(args))
    flags = structure_flags(table)
    series = derived_series(table)
    factorization = "*".join(
        (f"{p}^{e}" if e > 1 else str(p)) for p, e in table.order_factorization) or "1"
    if args.json:
        doc = {"spec": spec_to_doc(spec), "name": spec_name(spec),
               "order": table.order,
               "order_factorization": [[p, e] for p, e in table.order_factorization],
               "is_abelian": flags.is_abelian,
               "is_nilpotent": flags.is_nilpotent,
               "is_metabelian": flags.is_metabelian,
               "is_solvable": flags.is_solvable,
               "derived_series_orders": list(series.orders)}
        print(_dump_json(doc), end="")
    else:
        print(f"group {spec_name(spec)}")
        print(f"order {table.order} = {factorization}")
        print(f"abelian={flags.is_abelian} nilpotent={flags.is_nilpotent} "
              f"metabelian={flags.is_metabelian} solvable={flags.is_solvable}")
        print("derived series orders: "
              + " ".join(str(o) for o in series.orders))
    return EXIT_OK


def cmd_subgroups(args) -> int:
    spec = parse_group_spec(args.spec)
    table = construct(spec, _order_cap(args))
    lat = _lattice_for(args, spec, table)
    if args.json:
        _write_text(args.json, _dump_json(lattice_cache_doc(spec, lat)))
    print(f"group {spec_name(spec)}: order {table.order}, "
          f"{len(lat.subgroups)} subgroups")
    for order in sorted(lat.by_order):
        print(f"  order {order}: {len(lat.by_order[order])}")
    return EXIT_OK


def cmd_graph(args) -> int:
    spec = parse_group_spec(args.spec)
    table = construct(spec, _order_cap(args))
    lat = _lattice_for(args, spec, table)
    graph = build_graph(lat, args.p, _KINDS[args.kind])
    if args.dot:
        _write_text(args.dot, export_dot(graph))
    if args.json:
        _write_text(args.json, _dump_json(graph_json_doc(spec, graph)))
    print(f"{graph.kind} graph of {spec_name(spec)} at p={args.p}: "
          f"{graph.vertex_count} vertices, {graph.edge_count} edges")
    return EXIT_OK


def cmd_analyze(args) -> int:
    spec = parse_group_spec(args.spec)
    table = construct(spec, _order_cap(args))
    lat = _lattice_for(args, spec, table)
    graph = build_graph(lat, args.p, _KINDS[args.kind])
    doc = analyze_doc(spec, graph)
    text = _dump_json(doc)
    if args.json:
        _write_text(args.json, text)
    print(text, end="")
    return EXIT_OK


def _load_corpus_file(path: str) -> list[CorpusMember]:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    members_doc = doc.get("members") if isinstance(doc, dict) else None
    if not isinstance(members_doc, list) or not members_doc:
        raise InvalidSpec("corpus file needs a non-empty 'members' array")
    members = []
    for entry in members_doc:
        if not isinstance(entry, dict) or "spec" not in entry:
            raise InvalidSpec("each corpus member needs a 'spec'")
        spec = spec_from_doc(entry["spec"])
        name = entry.get("name") or spec_name(spec)
        members.append(CorpusMember(name, spec,
                                    bool(entry.get("enumerate", True))))
    return members


def cmd_verify(args) -> int:
    corpus = _load_corpus_file(args.corpus) if args.corpus else None
    names = list(SUITE_NAMES) if args.suite == "all" else [args.suite]
    reports = [run_suite(name, corpus=corpus, trials=args.trials,
                         seed=args.seed) for name in names]
    if args.suite == "all":
        doc = {"suite": "all", "seed": args.seed,
               "reports": [r.to_doc() for r in reports]}
    else:
        doc = reports[0].to_doc()
    if args.json:
        _write_text(args.json, _dump_json(doc))
    all_pass = True
    for rep in reports:
        status = "pass" if rep.passed else "FAIL"
        fails = sum(1 for r in rep.records if not r.passed)
        print(f"{rep.suite}: {status} ({len(rep.records)} checks, "
              f"{fails} failures, {rep.skips} skips, "
              f"{len(rep.warnings)} warnings)")
        for w in rep.warnings:
            print(f"  warning {w['code']}: {w}")
        print(f"  runtime: {rep.runtime_ms:.0f} ms", file=sys.stderr)
        all_pass = all_pass and rep.passed
    return EXIT_OK if all_pass else EXIT_VERDICT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _add_spec_argument(parser) -> None:
    parser.add_argument("spec", help="group spec document, e.g. '{\"sym\": 4}'")
    parser.add_argument("--order-cap", type=int, default=None,
                        help=f"max group order (default {DEFAULT_ORDER_CAP}; "
                             f"env {ORDER_CAP_ENV})")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="commgraph",
        description="Finite-group subgroup lattices and p-local "
                    "commensurability/containment graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="order, structure flags, derived series")
    _add_spec_argument(p_group)
    p_group.add_argument("--json", action="store_true",
                         help="print a JSON summary instead of text")
    p_group.set_defaults(func=cmd_group)

    p_subs = sub.add_parser("subgroups", help="enumerate the subgroup lattice")
    _add_spec_argument(p_subs)
    p_subs.add_argument("--cache", help="lattice cache file (read or write)")
    p_subs.add_argument("--json", help="write the lattice document to PATH")
    p_subs.set_defaults(func=cmd_subgroups)

    p_graph = sub.add_parser("graph", help="build a graph and export DOT/JSON")
    _add_spec_argument(p_graph)
    p_graph.add_argument("-p", type=int, required=True, help="prime p")
    p_graph.add_argument("--kind", choices=("comm", "cont"), default="comm")
    p_graph.add_argument("--dot", help="write DOT to PATH")
    p_graph.add_argument("--json", help="write graph JSON to PATH")
    p_graph.add_argument("--cache", help="lattice cache file (read or write)")
    p_graph.set_defaults(func=cmd_graph)

    p_an = sub.add_parser("analyze", help="component/diameter report")
    _add_spec_argument(p_an)
    p_an.add_argument("-p", type=int, required=True, help="prime p")
    p_an.add_argument("--kind", choices=("comm", "cont"), default="comm")
    p_an.add_argument("--json", help="also write the report to PATH")
    p_an.add_argument("--cache", help="lattice cache file (read or write)")
    p_an.set_defaults(func=cmd_analyze)

    p_ver = sub.add_parser("verify", help="run claim-verification suites")
    p_ver.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p_ver.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    p_ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_ver.add_argument("--corpus", help="JSON file overriding the corpus")
    p_ver.add_argument("--json", help="write the verdict report to PATH")
    p_ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidSpec, CacheMismatch, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OrderCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ORDER_CAP
    except LatticeCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LATTICE_CAP


if __name__ == "__main__":
    raise SystemExit(main())
