"""Command-line entry point.

Every command prints one JSON report on stdout.  Exit codes: 0 success,
1 parse/input error, 2 validation failure, 3 numeric suite failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from collections import Counter
from pathlib import Path

from . import constraints as cons
from . import fixtures
from .formats import ComplexFile, FormatError, apply_lengths_option, dumps_report, read_complex, write_complex_text
from .geometry import ActionParams, PerSimplexLengths, regge_action_global, regge_action_split, simplex_volume
from .measure import LOCAL_MEASURES, assemble_measure_report, evaluate_volume_factor
from .simplicial import ComplexError, edge_star_graph, triangle_star, validate
from .verify import SUITES, run_suites

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NUMERIC = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load(args) -> tuple[ComplexFile, object]:
    if not args.complex:
        raise UsageError("--complex is required")
    cf = read_complex(args.complex)
    apply_lengths_option(cf, args.lengths)
    return cf, cf.complex()


def _params(args) -> ActionParams:
    return ActionParams(newton_constant=args.newton_g, coefficient=args.coefficient)


def _key(s) -> str:
    return "-".join(map(str, s))


def _constraint_row(c: cons.Constraint) -> list:
    return [list(c.face), list(c.edge)]


def cmd_validate(args) -> tuple[dict, int]:
    _, c = _load(args)
    r = validate(c)
    out = {
        "command": "validate",
        "valid": r.valid,
        "closed": r.closed,
        "boundary_faces": r.n_boundary_faces,
        "violations": r.violations,
    }
    return out, EXIT_OK if r.valid else EXIT_INVALID


def cmd_info(args) -> tuple[dict, int]:
    cf, c = _load(args)
    stars, ranks = Counter(), Counter()
    n_closed = 0
    for t in c.faces[2]:
        try:
            st = triangle_star(c, t)
        except ValueError:
            stars["invalid"] += 1
            continue
        stars[f"{'closed' if st.closed else 'open'}:{st.n}"] += 1
        n_closed += st.closed
    for e in c.faces[1]:
        ranks[str(edge_star_graph(c, e).cycle_rank)] += 1
    out = {
        "command": "info",
        "face_counts": {str(d): n for d, n in enumerate(c.counts())},
        "interior_3faces": len(c.interior_faces()),
        "boundary_3faces": len(c.boundary_faces()),
        "closed_triangles": n_closed,
        "triangle_stars": dict(sorted(stars.items())),
        "edge_cycle_ranks": dict(sorted(ranks.items(), key=lambda kv: int(kv[0]))),
        "extended_variables": c.n_extended_variables(),
        "global_edges": len(c.faces[1]),
        "has_lengths": cf.has_lengths,
    }
    return out, EXIT_OK


def cmd_volumes(args) -> tuple[dict, int]:
    cf, c = _load(args)
    lengths = cf.global_lengths(c)
    vols = {}
    for d in range(1, 5):
        vols[str(d)] = {_key(s): simplex_volume(s, lengths) for s in c.faces[d]}
    return {"command": "volumes", "volumes": vols}, EXIT_OK


def _actions(cf: ComplexFile, c, params: ActionParams) -> dict:
    per = cf.per_simplex_lengths(c)
    out = {"coefficient": params.overall_coefficient, "conformed": per.is_conformed(c)}
    out["global"] = regge_action_global(c, cf.global_lengths(c), params) if out["conformed"] else None
    out["split"] = regge_action_split(c, per, params)
    return out


def cmd_action(args) -> tuple[dict, int]:
    cf, c = _load(args)
    return {"command": "action", **_actions(cf, c, _params(args))}, EXIT_OK


def cmd_constraints(args) -> tuple[dict, int]:
    _, c = _load(args)
    full = cons.constraint_matrix(c)
    kept = cons.select_kept(c)
    out = {
        "command": "constraints",
        "variables": c.n_extended_variables(),
        "constraints": len(full.rows),
        "kept": len(kept.kept),
        "redundant": len(kept.redundant),
        "rank_full": cons.constraint_rank(full),
        "rank_kept": cons.constraint_rank(cons.constraint_matrix(c, kept.kept)),
        "global_edges": len(c.faces[1]),
        "kept_per_edge": {_key(e): n for e, n in kept.kept_per_edge().items()},
        "kept_list": [_constraint_row(x) for x in kept.kept],
        "redundant_list": [_constraint_row(x) for x in kept.redundant],
    }
    return out, EXIT_OK


def cmd_measure(args) -> tuple[dict, int]:
    cf, c = _load(args)
    rep = assemble_measure_report(c, local=LOCAL_MEASURES[args.local_measure])
    by_dim = rep.exponents_by_dim()
    out = {
        "command": "measure",
        "exponents_by_dim": {str(d): {str(k): n for k, n in sorted(by_dim[d].items())} for d in sorted(by_dim, reverse=True)},
        "volume_exponents": {_key(s): k for s, k in rep.volume_exponents.items()},
        "kept_deltas": [_constraint_row(x) for x in rep.kept_deltas],
        "local_measure": {"kind": rep.local_measure.kind, "description": rep.local_measure.description},
        "notes": rep.notes,
    }
    if cf.has_lengths:
        per = cf.per_simplex_lengths(c)
        if per.is_conformed(c):
            out["log_volume_factor"] = evaluate_volume_factor(rep, cf.global_lengths(c))
        acts = _actions(cf, c, _params(args))
        out["action"] = acts
        s = acts["split"]
        out["weight_exp_iS"] = [math.cos(s), math.sin(s)]
    return out, EXIT_OK


def cmd_verify(args) -> tuple[dict, int]:
    names = args.suite or list(SUITES)
    res = run_suites(names, args.tolerance)
    ok = all(r["passed"] for r in res.values())
    return {"command": "verify", "passed": ok, "suites": res}, EXIT_OK if ok else EXIT_NUMERIC


def cmd_gen(args) -> int:
    simplices, lengths = fixtures.fixture(args.fixture, args.k)
    label = args.fixture + (f" {args.k}" if args.k is not None else "")
    text = write_complex_text(simplices, lengths, comment=f"fixture: {label}")
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "info": cmd_info,
    "volumes": cmd_volumes,
    "action": cmd_action,
    "constraints": cmd_constraints,
    "measure": cmd_measure,
    "verify": cmd_verify,
}


HELP = {
    "validate": "check the complex is a pseudomanifold",
    "info": "face counts and star structure",
    "volumes": "volumes of every face",
    "action": "Regge action in global and split form",
    "constraints": "continuity constraints, kept set and ranks",
    "measure": "volume exponents and kept deltas of the measure",
    "verify": "run numeric verification suites",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--complex", help="complex file")
    common.add_argument("--lengths", help="length file, or inline '*=1.0,0-1=2.0'")
    common.add_argument("--tolerance", type=float, default=None, help="override a verify suite's tolerance")
    common.add_argument("--suite", action="append", choices=sorted(SUITES), help="verify suite (repeatable)")
    common.add_argument("--coefficient", type=float, default=None, help="action coefficient (default 1/(8 pi G))")
    common.add_argument("--newton-g", type=float, default=1.0, dest="newton_g")
    common.add_argument("--local-measure", default="product_dl2", choices=sorted(LOCAL_MEASURES))

    p = argparse.ArgumentParser(prog="simplicial-measure", description="Simplicial gravity measure tools.",
                                epilog="Exit codes: 1 input error, 2 validation failure, 3 numeric failure.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=HELP.get(name))
    g = sub.add_parser("gen", parents=[common], help="write a fixture complex file")
    g.add_argument("fixture", choices=fixtures.FIXTURES)
    g.add_argument("k", nargs="?", type=int, default=None, help="chain length")
    g.add_argument("-o", "--output")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if args.command == "gen":
            return cmd_gen(args)
        report, code = COMMANDS[args.command](args)
    except (FormatError, ComplexError, UsageError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stdout.write(dumps_report(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
