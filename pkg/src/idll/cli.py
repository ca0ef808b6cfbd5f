"""Command-line interface: ``idll <command> ...``.

Exit codes: 0 for success or a positive verdict, 1 for a negative verdict
(proof rejected, law failed, goal not proved), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import bridge
from . import calculus as C
from . import corpus as K
from . import cutelim
from . import laws
from . import semantics as S
from . import totspace as T
from .proofio import ProofFormatError, parse_proof, print_proof
from .syntax import ParseError, parse_sequent, print_formula, print_sequent


class InputError(Exception):
    pass


class Output:
    """Collects text or ``key=value`` lines, depending on the format."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.lines: list[str] = []

    def text(self, line: str) -> None:
        if not self.machine:
            self.lines.append(line)

    def kv(self, key: str, value) -> None:
        if self.machine:
            if isinstance(value, bool):
                value = "true" if value else "false"
            self.lines.append(f"{key}={value}")

    def both(self, line: str, key: str, value) -> None:
        self.text(line)
        self.kv(key, value)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror}") from None


def _load_proof(path: str) -> C.Proof:
    try:
        return parse_proof(_read(path))
    except (ProofFormatError, C.RuleError) as e:
        raise InputError(f"{path}: {e}") from None


def _system(args) -> C.System:
    return C.System(args.system, getattr(args, "axioms", "general"))


def _goal(text: str) -> tuple:
    try:
        goal = parse_sequent(text)
    except ParseError as e:
        raise InputError(f"goal {text!r}: {e}") from None
    if not goal:
        raise InputError("goal sequent is empty")
    return goal


def _one_line(proof: C.Proof) -> str:
    return " ".join(line.strip() for line in print_proof(proof).splitlines())


# ------------------------------------------------------------------ commands


def cmd_check(args, out: Output) -> int:
    proof = _load_proof(args.proof)
    try:
        C.check(proof, _system(args))
    except C.RuleError as e:
        path = ".".join(map(str, e.path)) or "root"
        out.text(f"rejected: {e.reason} at {path} ({e.rule}): {e.message}")
        out.kv("status", "rejected")
        out.kv("reason", e.reason)
        out.kv("path", path)
        out.kv("rule", e.rule)
        return 1
    out.both("ok", "status", "ok")
    out.kv("conclusion", print_sequent(proof.conclusion))
    out.kv("size", C.proof_size(proof))
    return 0


def cmd_normalize(args, out: Output) -> int:
    proof = _load_proof(args.proof)
    system = _system(args)
    try:
        trace = cutelim.normalize(proof, system, args.fuel)
    except C.RuleError as e:
        out.both(f"rejected: {e}", "status", "rejected")
        return 1
    except cutelim.FuelExhausted as e:
        out.both(f"fuel exhausted after {len(e.trace.steps)} steps", "status", "fuel-exhausted")
        return 1
    if args.trace:
        for k, step in enumerate(trace.steps, 1):
            path = ".".join(map(str, step.path)) or "root"
            out.text(f"step {k}: {step.kind} at {path}")
            out.kv(f"step.{k}", f"{step.kind}@{path}")
    out.kv("status", "ok")
    out.kv("steps", len(trace.steps))
    out.kv("cut_free", cutelim.is_cut_free(trace.final))
    out.kv("proof", _one_line(trace.final))
    out.text(print_proof(trace.final))
    return 0


def cmd_translate(args, out: Output) -> int:
    proof = _load_proof(args.proof)
    source = C.IDLL if args.to == "ll" else C.LL
    try:
        C.check(proof, source)
    except C.RuleError as e:
        out.both(f"rejected as {source.logic.upper()} proof: {e}", "status", "rejected")
        return 1
    if args.to == "ll":
        result = bridge.idll_to_ll(proof)
    else:
        result = bridge.ll_to_idll(proof, normalize_lemmas=args.normalize_lemmas)
    C.check(result, C.LL if args.to == "ll" else C.IDLL)
    out.kv("status", "ok")
    out.kv("size", C.proof_size(result))
    out.kv("proof", _one_line(result))
    out.text(print_proof(result))
    return 0


def cmd_count(args, out: Output) -> int:
    goal = _goal(args.goal)
    system = C.System(args.system, args.axioms)
    result = bridge.enumerate_cutfree(goal, system, args.max_nodes, args.max_contractions)
    out.both(f"{result.count} {result.flag}", "count", result.count)
    out.kv("flag", result.flag)
    if args.show:
        for k, p in enumerate(result.proofs, 1):
            out.text(print_proof(p))
            out.kv(f"proof.{k}", _one_line(p))
    return 0


def cmd_prove(args, out: Output) -> int:
    goal = _goal(args.goal)
    system = C.System(args.system, args.axioms)
    verdict = bridge.provable(goal, system, args.depth, args.contractions)
    out.both(verdict.answer, "answer", verdict.answer)
    if verdict.proof is not None:
        out.text(print_proof(verdict.proof))
        out.kv("proof", _one_line(verdict.proof))
    return 0 if verdict.answer == "yes" else 1


def _load_space(path: str) -> T.TotSpace:
    try:
        return T.parse_space(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def cmd_model(args, out: Output) -> int:
    if args.action == "laws":
        family = laws.standard_family(args.seed, args.random, args.max_atoms)
        results = laws.check_laws(family, exhaustive=len(T.all_spaces(args.max_atoms)))
        for r in results:
            out.text(r.line())
            out.kv(f"law.{r.name}", "pass" if r.passed else "fail")
            out.kv(f"law.{r.name}.checked", r.checked)
            out.kv(f"law.{r.name}.failed", r.failures)
            if r.counterexample:
                out.kv(f"law.{r.name}.counterexample", r.counterexample)
        return 0 if all(r.passed for r in results) else 1

    if not args.spaces:
        raise InputError(f"model {args.action}: a space file is required")
    spaces = [_load_space(p) for p in args.spaces]
    a = spaces[0]
    if args.action == "show":
        closed = T.is_totality_space(a)
        result = a
        out.kv("totality_space", closed)
        if not closed:
            out.text("# not biclosed; the totals of the bidual follow")
            result = T.biclosure(a)
    elif args.action == "dual":
        result = T.dual(a)
    else:
        op = args.action
        binary = {"tensor": T.tensor, "par": T.par, "with": T.with_, "plus": T.plus}
        unary = {"bang": T.bang, "whynot": T.whynot}
        if op in binary:
            if len(spaces) != 2:
                raise InputError(f"model {op}: needs two space files")
            result = binary[op](a, spaces[1])
        else:
            if len(spaces) != 1:
                raise InputError(f"model {op}: needs one space file")
            result = unary[op](a)
    for line in T.describe(result).splitlines():
        out.text(line)
    out.kv("base", " ".join(T._fmt_atom(x) for x in result.atoms()))
    for k, t in enumerate(result.sorted_totals(), 1):
        out.kv(f"total.{k}", " ".join(T._fmt_atom(x) for x in sorted(t, key=T.atom_key)))
    out.kv("totals", len(result.totals))
    return 0


def _load_env(path: str) -> S.Environment:
    try:
        return S.parse_environment(_read(path))
    except ValueError as e:
        raise InputError(f"{path}: {e}") from None


def cmd_interp(args, out: Output) -> int:
    proof = _load_proof(args.proof)
    env = _load_env(args.env)
    try:
        C.check(proof, _system(args))
    except C.RuleError as e:
        out.both(f"rejected: {e}", "status", "rejected")
        return 1
    try:
        den = S.interpret(proof, env, check_totality=False)
    except S.UnassignedLiteral as e:
        raise InputError(str(e.args[0])) from None
    total = den.is_total(env)
    out.text(f"sequent: {print_sequent(den.formulas)}")
    out.kv("sequent", print_sequent(den.formulas))
    rows = [" ".join(T._fmt_atom(x) for x in t) for t in den.sorted_value()]
    out.text(f"tuples: {len(rows)}")
    out.kv("tuples", len(rows))
    for k, row in enumerate(rows, 1):
        out.text("  " + row)
        out.kv(f"tuple.{k}", row)
    out.both(f"total: {'yes' if total else 'no'}", "total", total)
    return 0 if total else 1


def cmd_soundness(args, out: Output) -> int:
    corpus = K.cut_corpus(args.seed, args.count, args.max_nodes)
    envs = [S.discrete_env([0, 1], n) for n in args.sizes]
    report = S.soundness_suite(corpus, envs)
    out.both(f"proofs: {report.proofs}", "proofs", report.proofs)
    out.both(f"environments: {report.environments}", "environments", report.environments)
    out.both(f"denotations checked: {report.denotations}", "denotations", report.denotations)
    out.both(f"reduction steps compared: {report.steps}", "steps", report.steps)
    out.both(f"failures: {len(report.failures)}", "failures", len(report.failures))
    for f in report.failures:
        out.text(f"  proof {f.proof_index} env {f.env_index} step {f.step}: {f.kind}: {f.message}")
        out.kv(f"failure.{f.proof_index}.{f.env_index}", f"{f.kind}@{f.step}")
    return 0 if report.passed else 1


# --------------------------------------------------------------------- parser


def _sizes(text: str) -> list[int]:
    try:
        sizes = [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated sizes, got {text!r}") from None
    if not sizes or any(n < 1 for n in sizes):
        raise argparse.ArgumentTypeError("sizes must be positive")
    return sizes


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("expected a non-negative integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="idll", description="Proof kernel and finite models for LL and IdLL.")
    parser.add_argument("--format", choices=["text", "machine"], default="text",
                        help="human-readable text or key=value lines")
    sub = parser.add_subparsers(dest="command", required=True)

    def system_flags(p, axioms_default="general"):
        p.add_argument("--system", choices=["ll", "idll"], default="idll")
        p.add_argument("--axioms", choices=["general", "atomic"], default=axioms_default)

    p = sub.add_parser("check", help="check a proof file")
    system_flags(p)
    p.add_argument("proof", help="proof file, or - for stdin")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("normalize", help="eliminate cuts")
    system_flags(p)
    p.add_argument("--trace", action="store_true", help="list the reduction steps")
    p.add_argument("--fuel", type=_positive, default=None, help="step budget (default 2^size)")
    p.add_argument("proof")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("translate", help="translate between LL and IdLL")
    p.add_argument("--to", choices=["ll", "idll"], required=True)
    p.add_argument("--normalize-lemmas", action="store_true",
                   help="eliminate the emulation cuts after translating to IdLL")
    p.add_argument("proof")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("count", help="count cut-free proofs of a sequent")
    system_flags(p, "atomic")
    p.add_argument("--max-nodes", type=_positive, default=64)
    p.add_argument("--max-contractions", type=_positive, default=0)
    p.add_argument("--show", action="store_true", help="print the proofs too")
    p.add_argument("goal", help='sequent, e.g. "|- ??p0^, !!p0"')
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("prove", help="bounded proof search")
    system_flags(p)
    p.add_argument("--depth", type=_positive, default=12)
    p.add_argument("--contractions", type=_positive, default=2)
    p.add_argument("goal")
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("model", help="totality spaces")
    p.add_argument("action", choices=["show", "dual", "tensor", "par", "with", "plus", "bang", "whynot", "laws"])
    p.add_argument("spaces", nargs="*", help="space description files")
    p.add_argument("--seed", type=_positive, default=0, help="laws: seed for the random spaces")
    p.add_argument("--random", type=_positive, default=50, help="laws: number of random spaces")
    p.add_argument("--max-atoms", type=_positive, default=3, help="laws: size of the exhaustive family")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("interp", help="denotation of a proof in an environment")
    system_flags(p)
    p.add_argument("proof")
    p.add_argument("env", help="environment file")
    p.set_defaults(func=cmd_interp)

    p = sub.add_parser("soundness", help="denotations are total and invariant under cut reduction")
    p.add_argument("--seed", type=_positive, default=0)
    p.add_argument("--count", type=_positive, default=120)
    p.add_argument("--max-nodes", type=_positive, default=40)
    p.add_argument("--sizes", type=_sizes, default=[2, 3], help="discrete space sizes, e.g. 2,3")
    p.set_defaults(func=cmd_soundness)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.format == "machine")
    try:
        code = args.func(args, out)
    except InputError as e:
        print(f"idll {args.command}: {e}", file=sys.stderr)
        return 2
    except T.CapExceeded as e:
        print(f"idll {args.command}: {e}", file=sys.stderr)
        return 2
    sys.stdout.write("".join(line + "\n" for line in out.lines))
    return code


if __name__ == "__main__":
    sys.exit(main())
