"""Command-line surface.

Thin adapters only: every subcommand parses files, calls the library and
emits a report (human text by default, JSON with --json).

Exit codes: 0 success, 1 computational mismatch against a requested
assertion, 2 usage or parse error, 3 capacity or budget exhaustion.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import fileio, report
from .autsearch import DEFAULT_NODE_BUDGET, automorphism_group, brute_force_aut, intersect_aut
from .codes import (
    CyclicCodeSpec,
    LinearCode,
    bch_31_21,
    css_from_pair,
    cyclic_code,
    hamming,
    paper_22_7,
    reed_muller,
    simplex,
)
from .errors import CapacityError
from .gf2 import BitMatrix, Gf2Poly
from .gf4stab import stab_aut_group, stab_symplectic_rep
from .logical import LogicalMatrix, induced_action
from .perms import Permutation
from .selfcheck import selfcheck_claims, selfcheck_ok
from .structure import analyze_gate_group
from .synth import AutData, synthesize, verify_word

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit the structured report")
    common.add_argument("--no-meta", action="store_true", default=argparse.SUPPRESS,
                        help="omit timestamps (for reproducible output)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="reserved; the current implementation is single-threaded")
    p = argparse.ArgumentParser(
        prog="autgates",
        parents=[common],
        description="Code automorphisms, induced logical actions, and "
        "synthesis of logical operations from qubit permutations and "
        "transversal CNOTs.",
    )
    p.set_defaults(json=False, no_meta=False, threads=1)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", parents=[common], help="inspect a code file")
    s.add_argument("codefile")

    s = sub.add_parser("aut", parents=[common], help="automorphism group of a code")
    s.add_argument("codefile")
    s.add_argument("--brute-force", action="store_true",
                   help="exhaustive n! search (n <= 8)")
    s.add_argument("--node-budget", type=int, default=None)

    s = sub.add_parser("logical", parents=[common],
                       help="induced logical action of a CSS pair")
    s.add_argument("codefile1", help="outer code C1")
    s.add_argument("codefile2", help="inner code C2 (contained in C1)")
    s.add_argument("--perm", help="permutation file; report its induced action")

    s = sub.add_parser("analyze", parents=[common],
                       help="full gate-group structure report")
    s.add_argument("codefile1")
    s.add_argument("codefile2")
    s.add_argument("--node-budget", type=int, default=None)

    s = sub.add_parser("stab", parents=[common], help="GF(4) stabilizer pipeline")
    s.add_argument("stabfile")

    s = sub.add_parser("synth", parents=[common],
                       help="compile a logical matrix to instructions")
    s.add_argument("codefile1")
    s.add_argument("codefile2")
    s.add_argument("--target", required=True, help="matrix file (2k x 2k)")
    s.add_argument("--out", help="write the instruction word JSON here")

    s = sub.add_parser("verify", parents=[common],
                       help="independently recompute a word's effect")
    s.add_argument("codefile1")
    s.add_argument("codefile2")
    s.add_argument("--word", required=True, help="instruction word JSON file")

    s = sub.add_parser("families", parents=[common],
                       help="emit a named code family as a code file")
    s.add_argument("family", choices=["hamming", "simplex", "rm", "cyclic",
                                      "bch_31_21", "paper_22_7"])
    s.add_argument("params", nargs="*", help="family parameters")
    s.add_argument("--out", help="write the code file here")

    s = sub.add_parser("selfcheck", parents=[common],
                       help="recompute all reference-example claims")
    s.add_argument("--quick", action="store_true",
                   help="skip the longest computation (the dim-16 two-block "
                   "group order)")
    return p


def _node_budget(args) -> int:
    if getattr(args, "node_budget", None):
        return args.node_budget
    env = os.environ.get("AUTGATES_NODE_BUDGET")
    return int(env) if env else DEFAULT_NODE_BUDGET


def _emit(doc: dict, args) -> None:
    if args.json:
        print(json.dumps(doc, indent=1))
    else:
        print(report.render_text(doc), end="")


def _load_css(args):
    c1 = fileio.load_code(args.codefile1)
    c2 = fileio.load_code(args.codefile2)
    return css_from_pair(c1, c2)


def cmd_info(args) -> int:
    text = open(args.codefile).read()
    C = fileio.parse_code(text)
    doc = report.make_document(
        "info",
        {"codefile": args.codefile, "sha256": report.digest(text)},
        report.info_results(C),
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_aut(args) -> int:
    text = open(args.codefile).read()
    C = fileio.parse_code(text)
    group = (
        brute_force_aut(C)
        if args.brute_force
        else automorphism_group(C, node_budget=_node_budget(args))
    )
    doc = report.make_document(
        "aut",
        {"codefile": args.codefile, "sha256": report.digest(text)},
        report.aut_results(C, group),
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_logical(args) -> int:
    css = _load_css(args)
    results = report.css_results(css)
    if args.perm:
        perm = fileio.load_perm(args.perm)
        action = induced_action(css, perm)
        results["induced_action"] = {
            "perm": str(perm),
            "t1": action.t1.to_strings(),
            "t2": action.t2.to_strings(),
            "t3": action.t3.to_strings(),
        }
    doc = report.make_document(
        "logical",
        {"codefile1": args.codefile1, "codefile2": args.codefile2},
        results,
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_analyze(args) -> int:
    css = _load_css(args)
    aut = intersect_aut(css.c1, css.c2, node_budget=_node_budget(args))
    analysis = analyze_gate_group(css, aut)
    doc = report.make_document(
        "analyze",
        {"codefile1": args.codefile1, "codefile2": args.codefile2},
        report.analysis_results(analysis),
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_stab(args) -> int:
    S = fileio.load_stabilizer_file(args.stabfile)
    group = stab_aut_group(S)
    reps = [stab_symplectic_rep(S, p) for p in group.generators]
    doc = report.make_document(
        "stab",
        {"stabfile": args.stabfile},
        {
            "n": S.n,
            "k": S.k,
            "aut_order": group.order(),
            "aut_generators": [str(g) for g in group.generators],
            "symplectic_generators": [r.m.to_strings() for r in reps],
            "x_span_preserved": all(
                r.m.submatrix(range(S.k), range(S.k, 2 * S.k))
                == BitMatrix.zero(S.k, S.k)
                for r in reps
            ),
        },
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK


def cmd_synth(args) -> int:
    css = _load_css(args)
    target = LogicalMatrix(2 * css.k, fileio.load_matrix(args.target))
    aut = intersect_aut(css.c1, css.c2)
    autdata = AutData(css, aut)
    word = synthesize(css, autdata, target)
    doc_word = fileio.word_to_document(word, css.n)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc_word, fh, indent=1)
    doc = report.make_document(
        "synth",
        {
            "codefile1": args.codefile1,
            "codefile2": args.codefile2,
            "target": args.target,
        },
        {
            "instructions": len(word),
            "cost": word.cost(css.n),
            "written_to": args.out or "(stdout only)",
        },
        meta=not args.no_meta,
    )
    _emit(doc, args)
    if not args.out and args.json:
        print(json.dumps(doc_word, indent=1))
    return EXIT_OK


def cmd_verify(args) -> int:
    css = _load_css(args)
    word = fileio.load_word(args.word, css)
    recomputed = verify_word(css, word)
    match = recomputed.m == word.logical_effect.m
    doc = report.make_document(
        "verify",
        {"codefile1": args.codefile1, "codefile2": args.codefile2, "word": args.word},
        {
            "instructions": len(word),
            "recomputed_effect": recomputed.m.to_strings(),
            "claimed_effect": word.logical_effect.m.to_strings(),
            "match": match,
        },
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK if match else EXIT_MISMATCH


def cmd_families(args) -> int:
    fam = args.family
    params = args.params
    if fam == "hamming":
        C = hamming(int(params[0]))
    elif fam == "simplex":
        C = simplex(int(params[0]))
    elif fam == "rm":
        C = reed_muller(int(params[0]), int(params[1]))
    elif fam == "cyclic":
        n = int(params[0])
        coeffs = params[1]
        if not set(coeffs) <= {"0", "1"}:
            raise ValueError("cyclic generator coefficients must be a 01 string "
                             "(lowest degree first)")
        C = cyclic_code(CyclicCodeSpec(n, Gf2Poly(int(coeffs[::-1], 2))))
    elif fam == "bch_31_21":
        C = bch_31_21()
    else:
        C = paper_22_7()
    text = fileio.serialize_code(C)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return EXIT_OK


def cmd_selfcheck(args) -> int:
    progress = None if args.json else (lambda msg: print(f"... {msg}", file=sys.stderr))
    claims = selfcheck_claims(full=not args.quick, progress=progress)
    doc = report.make_document(
        "selfcheck",
        {"mode": "quick" if args.quick else "full"},
        {
            "claims_total": len(claims),
            "matches": sum(c["status"] == "match" for c in claims),
            "flagged": sum(c["status"] == "flagged" for c in claims),
            "mismatches": sum(c["status"] == "mismatch" for c in claims),
        },
        claims=claims,
        meta=not args.no_meta,
    )
    _emit(doc, args)
    return EXIT_OK if selfcheck_ok(claims) else EXIT_MISMATCH


COMMANDS = {
    "info": cmd_info,
    "aut": cmd_aut,
    "logical": cmd_logical,
    "analyze": cmd_analyze,
    "stab": cmd_stab,
    "synth": cmd_synth,
    "verify": cmd_verify,
    "families": cmd_families,
    "selfcheck": cmd_selfcheck,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CapacityError as exc:
        print(f"capacity exhausted: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ValueError, OSError, IndexError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
