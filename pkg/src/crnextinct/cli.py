"""Command-line interface.

Subcommands: analyze, oracle, structure, invariants, forests, petri.
Exit codes: 0 completed (any verdict), 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .domination import maximal_admissible
from .engine import SearchConfig, analyze
from .forests import (
    ANY_EDGE,
    TRUE_REACTIONS,
    Balanced,
    build_balancing_system,
    decide_balance,
    enumerate_forests,
)
from .graphs import (
    enumerate_absorbing_sets,
    linkage_classes,
    reaction_graph,
    strong_linkage_classes,
    terminal_slcs,
)
from .invariants import is_conservative, is_subconservative, p_invariants, t_invariants
from .model import ReactionNetwork, format_complex, stoich_matrix
from .oracle import (
    StateCapExceeded,
    explore,
    extinction_on,
    guaranteed_extinction_on,
    recurrent_complexes,
    recurrent_states,
)
from .parser import ParseError, parse_complex, parse_crn, format_network
from .petri import PetriFormatError, petri_export, petri_import
from .report import emit_report

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3


class InputError(Exception):
    pass


def _load_network(path: str) -> ReactionNetwork:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return parse_crn(text).network
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _complex_list(net: ReactionNetwork, text: str) -> list[int]:
    indices = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            cpx = parse_complex(piece, net)
            indices.append(net.complex_index(cpx))
        except (ParseError, KeyError) as exc:
            raise InputError(f"complex {piece!r}: {exc}") from exc
    if not indices:
        raise InputError("empty complex list")
    return indices


def _parse_init(net: ReactionNetwork, text: str) -> tuple[int, ...]:
    counts = {name: 0 for name in net.species_names}
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        name, _, value = piece.partition("=")
        name = name.strip()
        if name not in counts:
            raise InputError(f"unknown species {name!r} in --init")
        try:
            count = int(value)
        except ValueError:
            raise InputError(f"bad count for {name!r} in --init") from None
        if count < 0:
            raise InputError(f"negative count for {name!r} in --init")
        counts[name] = count
    return tuple(counts[name] for name in net.species_names)


def _search_config(net: ReactionNetwork, args: argparse.Namespace) -> SearchConfig:
    kwargs: dict = {"forest_cap": args.forest_cap}
    dom = args.dom
    if dom == "maximal":
        kwargs["dom_strategy"] = "maximal"
    elif dom.startswith("all:"):
        kwargs["dom_strategy"] = "all-subsets"
        kwargs["dom_cap"] = _positive_int(dom[4:], "--dom all:N")
    else:
        raise InputError("--dom expects 'maximal' or 'all:N'")
    absorbing = args.absorbing
    if absorbing == "terminal":
        kwargs["absorbing_strategy"] = "terminal"
    elif absorbing.startswith("enumerate:"):
        kwargs["absorbing_strategy"] = "enumerate"
        kwargs["absorbing_cap"] = _positive_int(absorbing[10:], "--absorbing enumerate:N")
    elif absorbing.startswith("set:"):
        kwargs["absorbing_strategy"] = "explicit"
        kwargs["explicit_absorbing"] = frozenset(_complex_list(net, absorbing[4:]))
    else:
        raise InputError("--absorbing expects 'terminal', 'enumerate:N', or 'set:...'")
    kwargs["nontriviality"] = (
        ANY_EDGE if args.nontriviality == "any" else TRUE_REACTIONS
    )
    return SearchConfig(**kwargs)


def _positive_int(text: str, what: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise InputError(f"{what} needs an integer") from None
    if value < 1:
        raise InputError(f"{what} must be >= 1")
    return value


def _cmd_analyze(args: argparse.Namespace) -> int:
    net = _load_network(args.file)
    cfg = _search_config(net, args)
    verdict = analyze(net, cfg)
    sys.stdout.write(emit_report(net, verdict, cfg, "text").decode("utf-8"))
    if args.json:
        Path(args.json).write_bytes(emit_report(net, verdict, cfg, "json"))
    return EXIT_OK


def _cmd_oracle(args: argparse.Namespace) -> int:
    net = _load_network(args.file)
    root = _parse_init(net, args.init)
    graph = explore(net, root, hard_cap=args.state_cap)
    names = net.species_names
    flags = recurrent_states(graph)
    print(f"root: {root}")
    print(f"reachable states: {len(graph.states)}")
    print(f"recurrent states: {sum(flags)}")
    alive = recurrent_complexes(net, graph)
    for i, cpx in enumerate(net.complexes):
        label = "recurrent" if i in alive else "transient"
        print(f"complex {format_complex(cpx, names)}: {label}")
    if args.check_extinction:
        targets = _complex_list(net, args.check_extinction)
        local = extinction_on(net, graph, targets)
        print(f"extinction event on listed complexes from root: {local}")
        swept = guaranteed_extinction_on(
            net, targets, budget=args.budget, hard_cap=args.state_cap
        )
        print(
            f"extinction from every initial state with total <= {args.budget}: {swept}"
        )
    return EXIT_OK


def _cmd_structure(args: argparse.Namespace) -> int:
    net = _load_network(args.file)
    names = net.species_names
    g = reaction_graph(net)

    def fmt_blocks(blocks) -> str:
        return "; ".join(
            "{" + ", ".join(format_complex(net.complexes[i], names) for i in sorted(b)) + "}"
            for b in blocks
        )

    print(f"species ({net.m}): " + ", ".join(names))
    print(f"reactions ({net.r}):")
    for k, rxn in enumerate(net.reactions):
        print(
            f"  {k + 1}: {format_complex(rxn.source, names)} -> "
            f"{format_complex(rxn.target, names)}"
        )
    print(f"complexes ({net.n}):")
    for i, cpx in enumerate(net.complexes):
        print(f"  c{i}: {format_complex(cpx, names)}")
    print("linkage classes: " + fmt_blocks(linkage_classes(g)))
    print("strong linkage classes: " + fmt_blocks(strong_linkage_classes(g)))
    print("terminal SLCs: " + fmt_blocks(terminal_slcs(g)))
    sets = enumerate_absorbing_sets(g, args.cap)
    print(f"absorbing complex sets (first {len(sets)}):")
    for s in sets:
        print(
            "  {" + ", ".join(format_complex(net.complexes[i], names) for i in sorted(s)) + "}"
        )
    return EXIT_OK


def _cmd_invariants(args: argparse.Namespace) -> int:
    net = _load_network(args.file)
    gamma = stoich_matrix(net)
    print("stoichiometric matrix (rows = species):")
    for name, row in zip(net.species_names, gamma):
        print(f"  {name}: {list(row)}")
    cons = is_conservative(gamma)
    sub = is_subconservative(gamma)
    print(f"conservative: {cons.feasible}" + (f", witness c = {[str(c) for c in cons.witness]}" if cons.feasible else ""))
    print(f"subconservative: {sub.feasible}" + (f", witness c = {[str(c) for c in sub.witness]}" if sub.feasible else ""))
    print("P-invariant generators:")
    for ray in p_invariants(gamma).rays:
        print(f"  {list(ray)}")
    print("T-invariant generators (nonnegative kernel rays):")
    for ray in t_invariants(gamma).rays:
        print(f"  {list(ray)}")
    return EXIT_OK


def _cmd_forests(args: argparse.Namespace) -> int:
    net = _load_network(args.file)
    names = net.species_names
    dcrn = maximal_admissible(net)
    print("maximal admissible domination expansion:")
    if dcrn.dom_edges:
        for j, e in enumerate(dcrn.dom_edges):
            print(
                f"  D{j + 1}: {format_complex(net.complexes[e.src], names)} -> "
                f"{format_complex(net.complexes[e.dst], names)}"
            )
    else:
        print("  (no domination edges)")
    print(
        "absorbing set: {"
        + ", ".join(format_complex(net.complexes[i], names) for i in sorted(dcrn.absorbing))
        + "}"
    )
    forest_set = enumerate_forests(dcrn, cap=args.forest_cap)
    if forest_set.truncated:
        print(f"(enumeration truncated at {args.forest_cap})")
    for idx, forest in enumerate(forest_set.forests, start=1):
        outcome = decide_balance(build_balancing_system(dcrn, forest))
        if isinstance(outcome, Balanced):
            status = f"balanced, alpha = {list(outcome.alpha)}"
        else:
            status = f"unbalanced ({len(outcome.witnesses)} refutation(s))"
        print(f"forest {idx}: edges {{{', '.join(forest.edge_labels())}}}: {status}")
    return EXIT_OK


def _cmd_petri(args: argparse.Namespace) -> int:
    if args.direction == "export":
        net = _load_network(args.file)
        text = json.dumps(petri_export(net), indent=2) + "\n"
    else:
        try:
            doc = json.loads(Path(args.file).read_text(encoding="utf-8"))
        except OSError as exc:
            raise InputError(f"{args.file}: {exc.strerror or exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{args.file}: {exc}") from exc
        try:
            net = petri_import(doc)
        except (PetriFormatError, ValueError) as exc:
            raise InputError(f"{args.file}: {exc}") from exc
        text = format_network(net)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crnextinct",
        description="Structural extinction-event certificates for discrete reaction networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="search for a guaranteed extinction certificate")
    p.add_argument("file")
    p.add_argument("--dom", default="maximal", help="maximal | all:N")
    p.add_argument("--absorbing", default="terminal", help="terminal | enumerate:N | set:'c1,c2'")
    p.add_argument("--forest-cap", type=int, default=10000)
    p.add_argument("--nontriviality", choices=["true-reactions", "any"], default="true-reactions")
    p.add_argument("--json", help="write the JSON report to this path")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("oracle", help="explicit state-space exploration from a root state")
    p.add_argument("file")
    p.add_argument("--init", required=True, help='e.g. "X1=2,X2=0"')
    p.add_argument("--budget", type=int, default=6)
    p.add_argument("--state-cap", type=int, default=200000)
    p.add_argument("--check-extinction", help="comma-separated complexes")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("structure", help="complexes, linkage classes, absorbing sets")
    p.add_argument("file")
    p.add_argument("--cap", type=int, default=64)
    p.set_defaults(func=_cmd_structure)

    p = sub.add_parser("invariants", help="conservation verdicts and kernel generators")
    p.add_argument("file")
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("forests", help="exterior forests of the maximal admissible expansion")
    p.add_argument("file")
    p.add_argument("--forest-cap", type=int, default=64)
    p.set_defaults(func=_cmd_forests)

    p = sub.add_parser("petri", help="Petri-net JSON import/export")
    p.add_argument("direction", choices=["export", "import"])
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_petri)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except StateCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
