"""Command line front end.

Eight subcommands: generate, analyze, solve, profile, rank, verify,
simulate, witness.  Every command takes a graph as either a file path
(--graph) or a family recipe (--recipe), writes to stdout or --out, and
renders either a human text report (default) or a canonical JSON envelope
(--format structured).

The structured envelope always has the keys command / graph / spec /
results / events, is serialized with sorted keys, and contains no timing
or host data, so identical invocations produce identical bytes regardless
of worker count.  Text reports are for humans and carry no stability
promise.

Exit codes: 0 on success, 2 when a solve stops at its state budget (or a
witness search exhausts its candidate limit), 1 for any input problem.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .engine import (
    GameSpec,
    MonotonicityViolation,
    RandomRobber,
    Script,
    ScriptedCops,
    Variant,
    load_script,
    play_match,
    simulate_script,
)
from .families import (
    GeneratedGraph,
    generate,
    parse_recipe,
    random_copwin_graph,
    recipe_to_str,
)
from .graphs import (
    Graph,
    domination_number,
    dump_text,
    is_chordal,
    is_copwin,
    k_domination_number,
    load,
    metrics,
)
from .solver import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    SolvedCops,
    SolvedRobber,
    Winner,
    cop_number,
    profile,
    search_witness,
    solve,
)
from .strategies import t_ell_scripts, t_family_script, tree_one_visibility_script
from .treerank import height_bound, rank, verify_certificate

OK = 0
INPUT_ERROR = 1
INCONCLUSIVE = 2

_VARIANTS = tuple(v.value for v in Variant)


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on bad usage; 2 is reserved for budget stops here,
    so flag and recipe mistakes are remapped to exit 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(INPUT_ERROR, f"{self.prog}: error: {message}\n")


# -- shared plumbing ------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, required: bool = True) -> None:
    grp = p.add_argument_group("graph input")
    grp.add_argument("--recipe", help="family recipe, e.g. cycle:6 or tfamily:k=2,ell=1")
    grp.add_argument("--graph", help="path to a graph file (text or JSON form)")
    p.set_defaults(_input_required=required)


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument(
        "--format",
        choices=("text", "structured"),
        default="text",
        help="text for humans, structured for byte-stable JSON",
    )


def _add_solver(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="state budget per solve")
    p.add_argument("--workers", type=int, default=1, help="worker processes for solves")


def _graph_from_args(args: argparse.Namespace) -> tuple[Graph, GeneratedGraph | None]:
    if args.recipe and args.graph:
        raise ValueError("give either --recipe or --graph, not both")
    if args.recipe:
        member = generate(parse_recipe(args.recipe))
        return member.graph, member
    if args.graph:
        return load(Path(args.graph).read_text()), None
    if args._input_required:
        raise ValueError("a graph is required: pass --recipe or --graph")
    return None, None  # type: ignore[return-value]


def _graph_dict(g: Graph) -> dict:
    return {"key": g.key(), "n": g.n, "edges": [list(e) for e in g.edges]}


def _envelope(command: str, g: Graph | None, spec: dict | None, results: dict, events: list) -> dict:
    return {
        "command": command,
        "graph": _graph_dict(g) if g is not None else None,
        "spec": spec,
        "results": results,
        "events": events,
    }


def _spec_dict(ell: int, cops: int | None, variant: str) -> dict:
    return {"ell": ell, "cops": cops, "variant": variant}


def _emit(args: argparse.Namespace, payload: dict, text: str) -> None:
    if args.format == "structured":
        body = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        body = text if text.endswith("\n") else text + "\n"
    if getattr(args, "out", None):
        Path(args.out).write_text(body)
    else:
        sys.stdout.write(body)


def _resolve_script(name: str, g: Graph, member: GeneratedGraph | None) -> Script:
    """Builtin script names first, then a file path."""
    builders = {
        "tree1vis": lambda: tree_one_visibility_script(g),
        "tfamily": lambda: t_family_script(_require_member(member, "tfamily")),
        "tell_2cop": lambda: t_ell_scripts(_require_member(member, "subdivided"))["two_cop"],
        "tell_3cop": lambda: t_ell_scripts(_require_member(member, "subdivided"))[
            "three_cop_monotone"
        ],
    }
    if name in builders:
        return builders[name]()
    path = Path(name)
    if path.exists():
        return load_script(path.read_text())
    raise ValueError(f"unknown script {name!r}: not a builtin {sorted(builders)} or a file")


def _require_member(member: GeneratedGraph | None, kind: str) -> GeneratedGraph:
    if member is None:
        raise ValueError(f"builtin script needs a --recipe of the {kind} family")
    return member


# -- subcommands ----------------------------------------------------------------


def _cmd_generate(args: argparse.Namespace) -> int:
    if not args.recipe:
        raise ValueError("generate needs --recipe")
    member = generate(parse_recipe(args.recipe))
    g = member.graph
    results = {
        "recipe": recipe_to_str(member.recipe),
        "n": g.n,
        "edges": [list(e) for e in g.edges],
        "annotations": {k: v for k, v in sorted(member.annotations.items())},
    }
    payload = _envelope("generate", g, None, results, [])
    # text mode emits the plain graph serialization so the output can feed
    # straight back into --graph
    _emit(args, payload, dump_text(g))
    return OK


def _cmd_analyze(args: argparse.Namespace) -> int:
    g, _ = _graph_from_args(args)
    radii = args.ell or [1]
    met = metrics(g)
    results = {
        "n": g.n,
        "m": len(g.edges),
        "radius": met.radius,
        "diameter": met.diameter,
        "center": list(met.center),
        "is_tree": len(g.edges) == g.n - 1,
        "is_chordal": is_chordal(g),
        "is_copwin": is_copwin(g),
        "domination": domination_number(g),
        "ball_domination": {str(r): k_domination_number(g, r) for r in sorted(set(radii))},
    }
    lines = [
        f"graph {g.key()}  n={g.n} m={len(g.edges)}",
        f"radius {met.radius}  diameter {met.diameter}  center {' '.join(map(str, met.center))}",
        "tree {}  chordal {}  copwin {}".format(
            *("yes" if b else "no" for b in (results["is_tree"], results["is_chordal"], results["is_copwin"]))
        ),
        f"domination {results['domination']}",
    ]
    lines += [f"ball domination r={r}: {k}" for r, k in sorted(results["ball_domination"].items())]
    _emit(args, _envelope("analyze", g, None, results, []), "\n".join(lines))
    return OK


def _cmd_solve(args: argparse.Namespace) -> int:
    g, _ = _graph_from_args(args)
    variant = Variant(args.variant)
    if args.cops is None:
        k = cop_number(g, args.ell, variant, budget=args.budget, workers=args.workers)
    else:
        k = args.cops
    out = solve(g, GameSpec(args.ell, k, variant), budget=args.budget, workers=args.workers)
    results = dict(out.to_public_dict())
    if args.cops is None:
        results["number"] = k
    spec = _spec_dict(args.ell, k, variant.value)
    lines = []
    if args.cops is None:
        lines.append(f"cop number {k}")
    lines.append(f"winner {out.winner.value}  states {out.states}  depth {out.depth}")
    if out.placement:
        lines.append("placement " + " ".join(map(str, out.placement)))
    _emit(args, _envelope("solve", g, spec, results, []), "\n".join(lines))
    return INCONCLUSIVE if out.winner is Winner.INCONCLUSIVE else OK


def _cmd_profile(args: argparse.Namespace) -> int:
    g, _ = _graph_from_args(args)
    radii = tuple(args.ell or [1])
    parts = tuple(args.parts.split(",")) if args.parts else None
    kw = {"budget": args.budget, "workers": args.workers}
    prof = profile(g, radii, **kw) if parts is None else profile(g, radii, parts=parts, **kw)
    results = prof.as_dict()
    lines = [f"graph {g.key()}  n={g.n}"]
    for name in ("classical", "blind", "delayed", "domination"):
        if results.get(name) is not None:
            lines.append(f"{name} {results[name]}")
    for name in ("capture_at", "see_at", "monotone_at", "domination_at"):
        for r, v in sorted(results.get(name, {}).items()):
            lines.append(f"{name[:-3]} r={r}: {v}")
    _emit(args, _envelope("profile", g, None, results, []), "\n".join(lines))
    return OK


def _cmd_rank(args: argparse.Namespace) -> int:
    g, _ = _graph_from_args(args)
    k, cert = rank(g, args.ell)
    verified = verify_certificate(g, cert)
    hb = height_bound(g, args.ell)
    results = {
        "rank": k,
        "certificate": cert.to_dict(),
        "verified": verified,
        "height_bound": {
            "radius_reading": hb.radius_reading,
            "diameter_reading": hb.diameter_reading,
        },
    }
    lines = [
        f"rank {k}",
        f"certificate hub={cert.hub} branches={len(cert.branches)} verified={'yes' if verified else 'no'}",
        f"height bound radius={hb.radius_reading} diameter={hb.diameter_reading}",
    ]
    _emit(args, _envelope("rank", g, _spec_dict(args.ell, None, Variant.SEE.value), results, []), "\n".join(lines))
    return OK


def _cmd_verify(args: argparse.Namespace) -> int:
    g, member = _graph_from_args(args)
    script = _resolve_script(args.script, g, member)
    if args.cops is not None and args.cops != script.cops:
        raise ValueError(f"script uses {script.cops} cops, --cops says {args.cops}")
    variant = Variant(args.variant)
    spec = GameSpec(args.ell, script.cops, variant)
    try:
        rep = simulate_script(g, spec, script)
    except MonotonicityViolation as exc:
        results = {"script": {"cops": script.cops, "rounds": script.rounds}, "violation": str(exc)}
        payload = _envelope(
            "verify", g, _spec_dict(args.ell, script.cops, variant.value), results, []
        )
        _emit(args, payload, f"monotonicity violated: {exc}")
        return OK
    d = rep.to_dict()
    results = {"script": {"cops": script.cops, "rounds": script.rounds}, "report": d}
    events = sorted(
        [{"round": r, "type": "seen", "vertex": v} for r, v in rep.seen_events]
        + [{"round": r, "type": "recontaminated", "vertex": v} for r, v in rep.recontaminations]
        + [{"round": r, "type": "located", "vertex": v} for r, v in rep.located],
        key=lambda e: (e["round"], e["type"], e["vertex"]),
    )
    lines = [f"script cops={script.cops} rounds={script.rounds}"]
    lines.append(
        f"cleaned round={d['cleaned_at']}" if d["cleaned_at"] is not None else "not cleaned"
    )
    if d["seen_guaranteed_at"] is not None:
        lines.append(f"seen guaranteed round={d['seen_guaranteed_at']}")
    lines.append(f"monotone {'true' if d['monotone'] else 'false'}")
    if rep.recontaminations:
        lines.append(
            "recontaminated " + " ".join(f"{v}@{r}" for r, v in rep.recontaminations)
        )
    payload = _envelope("verify", g, _spec_dict(args.ell, script.cops, variant.value), results, events)
    _emit(args, payload, "\n".join(lines))
    return OK


def _cmd_simulate(args: argparse.Namespace) -> int:
    g, member = _graph_from_args(args)
    variant = Variant(args.variant)
    if args.script:
        script = _resolve_script(args.script, g, member)
        if args.cops is not None and args.cops != script.cops:
            raise ValueError(f"script uses {script.cops} cops, --cops says {args.cops}")
        spec = GameSpec(args.ell, script.cops, variant)
        cop_policy = ScriptedCops(script)
        outcome = None
    else:
        if args.cops is None:
            raise ValueError("simulate needs --cops (or --script)")
        spec = GameSpec(args.ell, args.cops, variant)
        outcome = solve(g, spec, budget=args.budget, workers=args.workers)
        if outcome.winner is Winner.INCONCLUSIVE:
            raise BudgetExceeded(f"solve stopped at {outcome.states} states")
        if outcome.winner is not Winner.COPS:
            raise ValueError(f"cops lose with {args.cops} cop(s) here; raise --cops")
        cop_policy = SolvedCops(outcome)
    if args.robber == "solved":
        if outcome is None:
            outcome = solve(g, spec, budget=args.budget, workers=args.workers)
            if outcome.winner is Winner.INCONCLUSIVE:
                raise BudgetExceeded(f"solve stopped at {outcome.states} states")
        robber_policy = SolvedRobber(outcome)
    else:
        robber_policy = RandomRobber(args.seed)
    trace = play_match(g, spec, cop_policy, robber_policy, max_rounds=args.rounds)
    d = trace.to_dict()
    results = {"outcome": d["outcome"], "rounds": d["rounds"]}
    lines = [f"outcome {d['outcome']} after {d['rounds']} round(s)"]
    for h in d["history"]:
        cops = " ".join(map(str, h["cops"]))
        lines.append(f"round {h['round']}: cops {cops}  robber {h['robber']}")
    payload = _envelope(
        "simulate", g, _spec_dict(args.ell, spec.cops, variant.value), results, d["history"]
    )
    _emit(args, payload, "\n".join(lines))
    return OK


def _cmd_witness(args: argparse.Namespace) -> int:
    """Search cop-win graphs for one where a single cop can always see the
    evader at the given radius but two cops are needed to capture."""
    ell = args.ell
    if ell < 1:
        raise ValueError("the gap needs a positive visibility radius")
    kw = {"budget": args.budget, "workers": args.workers}

    def profiler(h: Graph):
        # a dominating vertex pins the evader at radius 1, and capture
        # numbers fall as the radius grows, so no gap is possible
        if any(h.adj_closed[v] == h.full for v in range(h.n)):
            return None
        first = profile(h, (ell,), parts=("capture",), **kw)
        if first.capture_at.get(ell) != 2:
            return None
        return profile(h, (ell,), parts=("classical", "see", "capture"), **kw)

    def hit(p) -> bool:
        return p.classical == 1 and p.see_at.get(ell) == 1 and p.capture_at.get(ell) == 2

    single, _ = _graph_from_args(args)
    if single is not None:
        candidates = iter([single])
        limit = 1
    else:
        # needing two cops to capture is vanishingly rare below eight
        # vertices, so every draw uses the full admissible order
        def stream():
            i = 0
            while True:
                yield random_copwin_graph(args.max_n, seed=args.seed + i)
                i += 1

        candidates = stream()
        limit = args.limit
    res = search_witness(hit, candidates, limit=limit, profiler=profiler, **kw)
    found = res.graph is not None
    results = {
        "found": found,
        "tried": res.tried,
        "skipped": res.skipped,
        "witness": _graph_dict(res.graph) if found else None,
        "profile": res.profile.as_dict() if found else None,
    }
    spec = _spec_dict(ell, None, Variant.SEE.value)
    if found:
        p = res.profile
        lines = [
            f"witness found after {res.tried} candidate(s): {res.graph.key()} n={res.graph.n}",
            f"classical {p.classical}  see r={ell}: {p.see_at[ell]}  capture r={ell}: {p.capture_at[ell]}",
            dump_text(res.graph).rstrip("\n"),
        ]
    else:
        lines = [f"no witness in {res.tried} candidate(s) ({res.skipped} skipped)"]
    _emit(args, _envelope("witness", res.graph, spec, results, []), "\n".join(lines))
    return OK if found else INCONCLUSIVE


# -- wiring ---------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="lvcops", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("generate", help="emit a family member as a graph file")
    p.add_argument("--recipe", required=True, help="family recipe, e.g. spider:3,4")
    _add_output(p)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("analyze", help="structural report: metrics, classes, domination")
    _add_input(p)
    p.add_argument("--ell", type=int, action="append", help="ball radius, repeatable")
    _add_output(p)
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("solve", help="solve one game, or find the cop number")
    _add_input(p)
    p.add_argument("--ell", type=int, required=True, help="visibility radius")
    p.add_argument("--cops", type=int, help="cop count; omit to search for the least")
    p.add_argument("--variant", choices=_VARIANTS, default=Variant.CAPTURE.value)
    _add_solver(p)
    _add_output(p)
    p.set_defaults(fn=_cmd_solve)

    p = sub.add_parser("profile", help="all game numbers for one graph")
    _add_input(p)
    p.add_argument("--ell", type=int, action="append", help="ball radius, repeatable")
    p.add_argument("--parts", help="comma list, e.g. classical,see,capture")
    _add_solver(p)
    _add_output(p)
    p.set_defaults(fn=_cmd_profile)

    p = sub.add_parser("rank", help="branching rank of a tree with certificate")
    _add_input(p)
    p.add_argument("--ell", type=int, default=1, help="visibility radius")
    _add_output(p)
    p.set_defaults(fn=_cmd_rank)

    p = sub.add_parser("verify", help="run a cleaning script in the worst case")
    _add_input(p)
    p.add_argument("--script", required=True, help="builtin name or path to a script file")
    p.add_argument("--ell", type=int, required=True, help="visibility radius")
    p.add_argument("--cops", type=int, help="expected cop count, checked against the script")
    p.add_argument("--variant", choices=_VARIANTS, default=Variant.SEE.value)
    _add_output(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("simulate", help="play one match and dump the trace")
    _add_input(p)
    p.add_argument("--ell", type=int, required=True, help="visibility radius")
    p.add_argument("--cops", type=int, help="cop count for solved cops")
    p.add_argument("--script", help="builtin name or script path for scripted cops")
    p.add_argument("--variant", choices=_VARIANTS, default=Variant.CAPTURE.value)
    p.add_argument("--robber", choices=("random", "solved"), default="random")
    p.add_argument("--seed", type=int, default=0, help="random robber seed")
    p.add_argument("--rounds", type=int, default=200, help="round cap for the match")
    _add_solver(p)
    _add_output(p)
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser(
        "witness", help="search cop-win graphs for a see-with-one / capture-with-two gap"
    )
    _add_input(p, required=False)
    p.add_argument("--ell", type=int, default=1, help="visibility radius")
    p.add_argument("--max-n", type=int, default=8, help="largest candidate order")
    p.add_argument("--limit", type=int, default=100_000, help="candidate budget")
    p.add_argument("--seed", type=int, default=0, help="candidate stream seed")
    _add_solver(p)
    _add_output(p)
    p.set_defaults(fn=_cmd_witness)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse handles --help and usage errors by exiting; keep main()
        # returning an int so it can be driven as a function
        return int(exc.code or 0)
    try:
        return args.fn(args)
    except BudgetExceeded as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
