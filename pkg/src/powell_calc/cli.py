"""Command line front end: ``powell-calc <subcommand>``.

Exit codes: 0 all pass or finding, 1 any failure, 2 usage or parse error.
Every computation is deterministic; POWELL_CALC_SEED is reserved and ignored.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import braid_shadow as bs
from . import dihedral as dh
from . import modp
from . import scenarios as scn
from . import symplectic as sp
from .words import SymbolError, WordSyntaxError, parse


class UsageError(Exception):
    pass


def _word(text: str):
    try:
        return parse(text)
    except WordSyntaxError as exc:
        raise UsageError(f"word: {exc}") from None


def cmd_verify(args) -> int:
    reports = scn.run_scenario_file(args.file, jobs=args.jobs)
    out = scn.emit_report(reports, args.format)
    sys.stdout.write(out.decode())
    if args.format == "json":
        sys.stdout.write("\n")
    return scn.exit_code(reports)


def cmd_check(args) -> int:
    """Run one scenario by id, searching the bundled files."""
    for name in scn.BUNDLED:
        for sc in scn.load(name):
            if sc.id == args.scenario:
                reports = scn.run_scenarios([sc])
                sys.stdout.write(scn.emit_report(reports, args.format).decode())
                if args.format == "json":
                    sys.stdout.write("\n")
                return scn.exit_code(reports)
    raise UsageError(f"no bundled scenario with id {args.scenario!r}")


def cmd_lint(args) -> int:
    problems = scn.lint(scn.load(args.file))
    for p in problems:
        print(p)
    if not problems:
        print("ok")
    return 1 if problems else 0


def cmd_eval(args) -> int:
    w = _word(args.word)
    if args.rep == "dih":
        print(dh.eval_dih(w))
        return 0
    if args.genus is None:
        raise UsageError("--genus is required for --rep perm|framed|sp")
    if args.rep == "perm":
        print(bs.cycle_notation(bs.perm_of_word(args.genus, w)))
    elif args.rep == "framed":
        print(bs.framed_of_word(args.genus, w))
    else:
        sys.stdout.write(sp.eval_sp(args.genus, w).to_text())
    return 0


def _target(text: str, g: int) -> sp.SymplecticMatrix:
    path = Path(text)
    if path.is_file():
        m = sp.read_matrix(path.read_text())
        if m.g != g:
            raise UsageError(f"matrix file has genus {m.g}, expected {g}")
        return m
    return sp.eval_sp(g, _word(text))


def cmd_membership(args) -> int:
    chain = modp.subgroup_chain(args.subgroup, args.genus, args.p)
    m = modp.reduce_mod_p(_target(args.target, args.genus), args.p)
    residue, depth = chain.sift(m)
    member = depth == len(chain.levels) and residue.is_identity()
    print("true" if member else "false")
    print(f"order {chain.order()}")
    if not member:
        print(f"residue (depth {depth})")
        for row in residue.tolist():
            print(" ".join(str(x) for x in row))
    return 0


def cmd_order(args) -> int:
    print(modp.subgroup_chain(args.subgroup, args.genus, args.p).order())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="powell-calc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="run a scenario file (path or bundled name)")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("check", help="run one bundled scenario by id")
    p.add_argument("--scenario", required=True)
    p.add_argument("--format", choices=("json", "text"), default="text")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("lint", help="check that non-plumbing scenarios state a claim")
    p.add_argument("file")
    p.set_defaults(fn=cmd_lint)

    p = sub.add_parser("eval", help="evaluate a word in one representation")
    p.add_argument("--rep", choices=("perm", "framed", "sp", "dih"), required=True)
    p.add_argument("--genus", type=int)
    p.add_argument("--word", required=True)
    p.set_defaults(fn=cmd_eval)

    for name, fn in (("membership", cmd_membership), ("order", cmd_order)):
        p = sub.add_parser(name)
        p.add_argument("--genus", type=int, required=True)
        p.add_argument("--p", type=int, required=True)
        p.add_argument("--subgroup", choices=("powell", "full"), default="powell")
        if name == "membership":
            p.add_argument("--target", required=True, help="matrix file or word")
        p.set_defaults(fn=fn)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.fn(args)
    except (UsageError, scn.ScenarioError, WordSyntaxError, SymbolError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
