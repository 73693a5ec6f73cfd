"""Command-line entry point.

Exit codes: 0 ok/optimal, 1 check failure, 2 infeasible, 3 unbounded,
64 usage (including the G* size guard), 65 parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .cones import NotPointedError, conic_graver, extreme_rays, hilbert_basis, parse_cone
from .errors import InfeasibleError, UnboundedError
from .exact import fmt_rational, fmt_vec
from .instance import InstanceError, MixedVec, parse_instance
from .linalg import circuits, enumerate_bases
from .oracle import brute_force_optimum, enumerate_basic_integer_solutions, verify_double_test_set, verify_hilbert
from .solver import augment, build_finite_test_set, find_initial_solution
from .testsets import (
    DEFAULT_LIMIT,
    TooLargeError,
    build_g_ab,
    build_g_star,
    build_t_ab,
    check_norm_bound,
    lift_all,
    pattern_cells,
    bases_of,
)

FORMAT_VERSION = 1
EXIT_OK, EXIT_CHECK, EXIT_INFEASIBLE, EXIT_UNBOUNDED, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3, 64, 65

VERBS = ("circuits", "bases", "hilbert", "gstar", "gab", "tstar", "solve", "oracle",
         "check-dts", "finite-testset", "check-bound")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mipaug", description="Finite test sets and augmentation for mixed-integer programs.")
    p.add_argument("--version", action="version",
                   version=f"mipaug {__version__} (instance format {FORMAT_VERSION})")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("file", nargs="?", help="instance file (cone rows for 'hilbert'); '-' or omitted reads stdin")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="G* guard on m*r (default 12)")
    p.add_argument("--radius", type=int, default=4, help="oracle verification radius (default 4)")
    p.add_argument("--testset", choices=("tstar", "gab", "finite"), default="tstar")
    p.add_argument("--start", help='starting point, e.g. "3 0 0" or "(1/2, 0, 1)"')
    p.add_argument("--cost", help="override the instance cost vector")
    p.add_argument("--directions", help="check-dts: file of direction vectors (one per line) instead of T*")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--graver", action="store_true", help="hilbert: conic Graver basis over all orthants")
    p.add_argument("--verify", action="store_true", help="hilbert: run the brute-force Hilbert check")
    return p


def _read(path: Optional[str]) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _vector_arg(text: str) -> list[str]:
    return text.replace("(", " ").replace(")", " ").replace(",", " ").split()


def _vec(v) -> list[str]:
    return [fmt_rational(x) for x in v]


class Output:
    def __init__(self, verb: str, fmt: str, inst=None):
        self.verb, self.fmt, self.inst = verb, fmt, inst
        self.lines: list[str] = []
        self.result = None
        self.provenance = None

    def emit(self) -> None:
        if self.fmt == "json":
            doc = {
                "verb": self.verb,
                "instance": None if self.inst is None else self.inst.to_dict(),
                "result": self.result,
                "provenance": self.provenance,
            }
            sys.stdout.write(json.dumps(doc, indent=2) + "\n")
        else:
            sys.stdout.write("".join(line + "\n" for line in self.lines))


def _cmd_circuits(inst, args, out):
    cs = circuits(inst)
    out.lines = [fmt_vec(c.vec) for c in cs]
    out.result = [list(c.vec) for c in cs]
    return EXIT_OK


def _cmd_bases(inst, args, out):
    bs = enumerate_bases(inst)
    out.lines = [f"cols {' '.join(map(str, b.cols))} det {b.det}" for b in bs]
    out.result = [{"cols": list(b.cols), "det": b.det} for b in bs]
    return EXIT_OK


def _cmd_gstar(inst, args, out):
    G = build_g_star(inst, args.limit)
    out.lines = [fmt_vec(g) for g in G]
    out.result = [list(g) for g in G]
    cells = pattern_cells(inst, bases_of(inst))
    out.provenance = {
        "bases": [list(b.cols) for b in bases_of(inst)],
        "cones": [dict(C.to_dict(), generators=[list(g) for g in conic_graver(C)]) for C in cells],
    }
    return EXIT_OK


def _cmd_gab(inst, args, out):
    G = build_g_ab(inst)
    out.lines = [fmt_vec(g) for g in G]
    out.result = [list(g) for g in G]
    return EXIT_OK


def _directions_out(out, dirs):
    out.lines = [f"{fmt_vec(t.vec.entries())} basis {fmt_vec(t.basis.cols)} gen {fmt_vec(t.gen)}" for t in dirs]
    out.result = [_vec(t.vec.entries()) for t in dirs]
    out.provenance = [{"basis": list(t.basis.cols), "gen": list(t.gen)} for t in dirs]


def _cmd_tstar(inst, args, out):
    _directions_out(out, lift_all(inst, build_g_star(inst, args.limit)))
    return EXIT_OK


def _testset(inst, args):
    if args.testset == "tstar":
        return lift_all(inst, build_g_star(inst, args.limit))
    if args.testset == "gab":
        return build_t_ab(inst)
    return build_finite_test_set(inst, limit=args.limit)


def _cmd_solve(inst, args, out):
    if args.start:
        x0 = MixedVec.split(_vector_arg(args.start), inst.nR)
        if len(x0.real) != inst.nR or len(x0.integral) != inst.nI:
            raise UsageError(f"--start needs {inst.n} entries")
        if not inst.is_feasible(x0):
            raise InfeasibleError(f"start {fmt_vec(x0.entries())} is not feasible")
    else:
        if inst.box is None:
            raise UsageError("solve needs --start or a box in the instance")
        x0 = find_initial_solution(inst)
        if x0 is None:
            raise InfeasibleError("no feasible integer part in the box")
    T = _testset(inst, args)
    x, trace = augment(inst, x0, T)
    value = inst.objective(x)
    if args.trace:
        for k, st in enumerate(trace.steps, 1):
            out.lines.append(f"step {k}: obj {fmt_rational(st.objective)} move {fmt_vec(st.move.entries())}")
    out.lines += ["status optimal", f"value {fmt_rational(value)}", f"point {fmt_vec(x.entries())}"]
    out.result = {"status": "optimal", "value": fmt_rational(value), "point": _vec(x.entries()),
                  "start": _vec(x0.entries())}
    out.provenance = {
        "testset": args.testset,
        "size": len(T),
        "trace": [{"objective": fmt_rational(s.objective), "move": _vec(s.move.entries())}
                  for s in trace.steps],
    }
    return EXIT_OK


def _cmd_oracle(inst, args, out):
    sols = enumerate_basic_integer_solutions(inst)
    out.lines = [f"solution {fmt_vec(x.entries())} obj {fmt_rational(inst.objective(x))}" for x in sols]
    if not sols:
        out.lines.append("status infeasible")
        out.result = {"status": "infeasible", "solutions": []}
        return EXIT_INFEASIBLE
    value, argmins = brute_force_optimum(inst)
    out.lines.append(f"optimum {fmt_rational(value)}")
    out.lines += [f"argmin {fmt_vec(x.entries())}" for x in argmins]
    out.result = {
        "status": "optimal",
        "solutions": [_vec(x.entries()) for x in sols],
        "value": fmt_rational(value),
        "argmins": [_vec(x.entries()) for x in argmins],
    }
    return EXIT_OK


def _cmd_check_dts(inst, args, out):
    if args.directions:
        T = _read_directions(args.directions, inst)
    elif args.testset == "gab":
        T = build_t_ab(inst)
    else:
        T = lift_all(inst, build_g_star(inst, args.limit))
    rep = verify_double_test_set(inst, T)
    fails = rep.failures
    for c in fails:
        out.lines.append(f"FAIL no improving direction from {fmt_vec(c.witness.entries()) if c.witness else '-'}")
    out.lines.append(f"checked {len(rep.checks)} non-optimal points, {len(fails)} failures")
    out.result = {"passed": rep.ok, "checked": len(rep.checks),
                  "failures": [_vec(c.witness.entries()) for c in fails if c.witness is not None]}
    return EXIT_OK if rep.ok else EXIT_CHECK


def _read_directions(path, inst) -> list[MixedVec]:
    dirs = []
    for lineno, raw in enumerate(_read(path).splitlines(), 1):
        toks = _vector_arg(raw.split("#", 1)[0])
        if not toks:
            continue
        if len(toks) != inst.n:
            raise InstanceError(f"direction has {len(toks)} entries, expected {inst.n}", lineno)
        try:
            dirs.append(MixedVec.split(toks, inst.nR))
        except ValueError as exc:
            raise InstanceError(str(exc), lineno) from None
    return dirs


def _cmd_finite(inst, args, out):
    D = build_finite_test_set(inst, limit=args.limit)
    out.lines = [fmt_vec(d.entries()) for d in D]
    out.result = [_vec(d.entries()) for d in D]
    return EXIT_OK


def _cmd_check_bound(inst, args, out):
    T = lift_all(inst, build_g_star(inst, args.limit))
    rep = check_norm_bound(inst, T)
    for v in rep.violations:
        out.lines.append(f"VIOLATION {fmt_vec(v.direction.vec.entries())} norm {fmt_rational(v.norm)} "
                         f"> {fmt_rational(v.bound)}")
    out.lines.append(f"Delta(A) {rep.max_subdet} directions {len(rep.checks)} violations {len(rep.violations)}")
    out.result = {
        "max_subdet": rep.max_subdet,
        "directions": len(rep.checks),
        "violations": [_vec(v.direction.vec.entries()) for v in rep.violations],
    }
    return EXIT_OK if not rep.violations else EXIT_CHECK


def _cmd_hilbert(text, args, out):
    C = parse_cone(text)
    if args.graver:
        gens = conic_graver(C)
    else:
        gens = hilbert_basis(C)
    out.lines = [fmt_vec(g) for g in gens]
    out.result = [list(g) for g in gens]
    rays, lin = extreme_rays(C)
    out.provenance = {"cone": C.to_dict(), "rays": [list(r) for r in rays], "lineality": [list(v) for v in lin]}
    if args.verify:
        rep = verify_hilbert(C, gens, args.radius)
        for c in rep.failures:
            out.lines.append(f"FAIL {c.name} witness {c.witness}")
        out.provenance["verified"] = rep.ok
        return EXIT_OK if rep.ok else EXIT_CHECK
    return EXIT_OK


COMMANDS = {
    "circuits": _cmd_circuits,
    "bases": _cmd_bases,
    "gstar": _cmd_gstar,
    "gab": _cmd_gab,
    "tstar": _cmd_tstar,
    "solve": _cmd_solve,
    "oracle": _cmd_oracle,
    "check-dts": _cmd_check_dts,
    "finite-testset": _cmd_finite,
    "check-bound": _cmd_check_bound,
}


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    out = None
    try:
        args = _parser().parse_args(argv)
        text = _read(args.file)
        out = Output(args.verb, args.format)
        if args.verb == "hilbert":
            try:
                code = _cmd_hilbert(text, args, out)
            except ValueError as exc:
                print(f"mipaug: {exc}", file=sys.stderr)
                return EXIT_PARSE
            out.emit()
            return code
        inst = parse_instance(text)
        if args.cost:
            cost = [int(t) for t in _vector_arg(args.cost)]
            if len(cost) != inst.n:
                raise UsageError(f"--cost needs {inst.n} entries")
            inst = inst.with_cost(cost)
        out.inst = inst
        if args.verb in ("gab", "oracle", "finite-testset") and inst.box is None:
            raise UsageError(f"{args.verb} requires a box line in the instance")
        if args.verb == "check-dts" and inst.box is None:
            raise UsageError("check-dts requires a box line in the instance")
        code = COMMANDS[args.verb](inst, args, out)
        out.emit()
        return code
    except UsageError as exc:
        print(f"mipaug: usage: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLargeError as exc:
        print(f"mipaug: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InstanceError as exc:
        print(f"mipaug: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"mipaug: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InfeasibleError as exc:
        print(f"mipaug: infeasible: {exc}", file=sys.stderr)
        if out is not None and out.fmt == "json":
            out.result = {"status": "infeasible"}
            out.emit()
        return EXIT_INFEASIBLE
    except UnboundedError as exc:
        print(f"mipaug: unbounded: {exc}", file=sys.stderr)
        if out is not None and out.fmt == "json":
            out.result = {"status": "unbounded"}
            out.emit()
        return EXIT_UNBOUNDED


def main() -> None:
    sys.exit(run_cli())
