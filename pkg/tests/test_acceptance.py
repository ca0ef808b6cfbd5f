"""The eight acceptance criteria, one test each.

Every test prints a single ``criterion N: pass|FAIL ...`` line to the real
terminal (outside pytest's capture) before asserting.
"""

import os
import random
import subprocess
import sys

import pytest

from idll import bridge as B
from idll import calculus as C
from idll import cutelim as E
from idll import laws
from idll import semantics as S
from idll.corpus import cut_corpus, random_formula, sequent_corpus
from idll.proofio import parse_proof
from idll.syntax import NegLit, PosLit, bangs, parse_formula, print_formula, whynots

from test_bridge import interleavings
from worked import MUTATIONS, PI1, PI2, load

p0 = PosLit(0)


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'pass' if ok else 'FAIL'} - {detail}")
        assert ok, detail

    return emit


@pytest.fixture(scope="module")
def corpus():
    return cut_corpus(seed=0, count=120, max_nodes=40)


def test_criterion_1_checker_fidelity(report):
    problems = []
    for name in ("pi1", "pi2", "eta1", "eta2"):
        try:
            C.check(load(name), C.IDLL)
        except C.RuleError as e:
            problems.append(f"{name} rejected: {e}")
    for label, system, text, reason in MUTATIONS:
        try:
            C.check(parse_proof(text), system)
            problems.append(f"accepted: {label}")
        except C.RuleError as e:
            if e.reason != reason:
                problems.append(f"{label}: reason {e.reason}, expected {reason}")
    ok = not problems and len(MUTATIONS) == 10
    report(1, ok, f"4 worked proofs, {len(MUTATIONS)} mutations; problems: {problems or 'none'}")


def test_criterion_2_cut_elimination(report, corpus):
    logics = {s.logic for _, s in corpus}
    with_cuts = sum(1 for p, _ in corpus if not E.is_cut_free(p))
    biggest = max(C.proof_size(p) for p, _ in corpus)
    bad = []
    for i, (p, system) in enumerate(corpus):
        try:
            final = E.normalize(p, system, fuel=2 ** C.proof_size(p)).final
            C.check(final, system)
            if not E.is_cut_free(final):
                bad.append((i, "cut remains"))
            elif C.sequent_multiset(final.conclusion) != C.sequent_multiset(p.conclusion):
                bad.append((i, "conclusion changed"))
        except (E.FuelExhausted, C.RuleError) as e:
            bad.append((i, type(e).__name__))
    ok = not bad and with_cuts == len(corpus) >= 100 and biggest <= 40 and logics == {"ll", "idll"}
    report(2, ok, f"{len(corpus) - len(bad)}/{len(corpus)} normalized "
                  f"(max size {biggest}, systems {sorted(logics)}); failures: {bad[:5] or 'none'}")


def test_criterion_3_eta_isomorphism(report):
    pi1, pi2 = parse_proof(PI1), parse_proof(PI2)
    bb = C.build(C.Cut(pi2.conclusion[-1]), [pi2, pi1])
    b = C.build(C.Cut(pi1.conclusion[-1]), [pi1, pi2])
    got_bb = E.normalize(bb, C.IDLL).final
    got_b = E.normalize(b, C.IDLL).final
    ok_bb = C.exchange_normal_form(got_bb) == C.exchange_normal_form(B.eta_block(1, 1, p0))
    ok_b = C.exchange_normal_form(got_b) == C.exchange_normal_form(B.eta_block(2, 2, p0))
    report(3, ok_bb and ok_b,
           f"cut on !!/?? gives eta(1,1): {ok_bb}; cut on !/? gives eta(2,2): {ok_b}")


def test_criterion_4_provability_equivalence(report, corpus):
    sequents = sequent_corpus(seed=0, count=50, max_size=8, max_depth=2)
    decided = disagree = 0
    for seq in sequents:
        verdicts = {system: B.provable(seq, system) for system in (C.LL, C.IDLL)}
        for system, v in verdicts.items():
            if v.answer == "yes":
                C.check(v.proof, system)
                assert v.proof.conclusion == seq
        a, b = (v.answer for v in verdicts.values())
        if "unknown" in (a, b):
            continue
        decided += 1
        disagree += a != b
    bad = []
    for i, (p, system) in enumerate(corpus):
        try:
            if system.logic == "idll":
                q = B.idll_to_ll(p)
                C.check(q, C.LL)
            else:
                q = B.ll_to_idll(p)
                C.check(q, C.IDLL)
            if q.conclusion != p.conclusion:
                bad.append(i)
        except C.RuleError:
            bad.append(i)
    ok = len(sequents) == 50 and disagree == 0 and not bad
    report(4, ok, f"{decided}/50 sequents decided, {disagree} disagreements; "
                  f"{len(corpus) - len(bad)}/{len(corpus)} proofs translated")


def test_criterion_5_proof_counting(report):
    def count(n, system):
        return B.enumerate_cutfree((whynots(n, NegLit(0)), bangs(n, p0)), system.atomic())

    got = {}
    expected = {}
    for n in (1, 2, 3):
        r = count(n, C.IDLL)
        got[("idll", n)] = (r.count, r.flag)
        expected[("idll", n)] = (1, "exact")
    for n in (1, 2):
        r = count(n, C.LL)
        got[("ll", n)] = (r.count, r.flag)
        expected[("ll", n)] = (len(interleavings(n)), "exact")
    ok = got == expected and expected[("ll", 1)][0] == 1 and expected[("ll", 2)][0] == 3
    shown = ", ".join(f"{k[0]} n={k[1]}: {v[0]}" for k, v in sorted(got.items()))
    report(5, ok, shown)


def test_criterion_6_totality_laws(report, capsys):
    results = laws.check_laws(laws.standard_family(seed=0, random_count=50, max_atoms=3))
    failed = [r for r in results if not r.passed]
    with capsys.disabled():
        for r in results:
            print("   ", r.line().replace("\n", "\n    "))
    report(6, not failed, f"{len(results) - len(failed)}/{len(results)} laws hold; "
                          f"failing: {[r.name for r in failed] or 'none'}")


def test_criterion_7_semantic_soundness(report, corpus):
    envs = [S.discrete_env([0, 1], 2), S.discrete_env([0, 1], 3)]
    r = S.soundness_suite(corpus, envs)
    report(7, r.passed and r.proofs == len(corpus),
           f"{r.proofs} proofs x {r.environments} environments, {r.denotations} denotations, "
           f"{r.steps} reduction steps compared, {len(r.failures)} failures")


CLI_SCRIPT = [
    ["count", "|- ??p0^, !!p0"],
    ["--format", "machine", "count", "--system", "ll", "|- ??p0^, !!p0"],
    ["prove", "|- p0 * p0"],
    ["--format", "machine", "normalize", "--trace", "{cut}"],
    ["translate", "--to", "ll", "{pi1}"],
    ["interp", "{cut}", "{env}"],
    ["model", "tensor", "{space}", "{space}"],
    ["model", "laws", "--random", "3", "--max-atoms", "2"],
    ["soundness", "--count", "6", "--seed", "2"],
]


def _run_cli_script(paths, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    chunks = []
    for argv in CLI_SCRIPT:
        argv = [a.format(**paths) for a in argv]
        r = subprocess.run([sys.executable, "-m", "idll", *argv], capture_output=True, env=env)
        chunks.append(b"$ %d\n" % r.returncode + r.stdout + r.stderr)
    return b"".join(chunks)


def test_criterion_8_determinism(report, tmp_path):
    rng = random.Random(0)
    formulas = [random_formula(rng, rng.randint(0, 6), 3) for _ in range(1000)]
    round_trip = sum(parse_formula(print_formula(f)) == f for f in formulas)

    paths = {k: str(tmp_path / k) for k in ("cut", "pi1", "env", "space")}
    (tmp_path / "pi1").write_text(PI1)
    (tmp_path / "cut").write_text(f'(cut :formula "!!p0^" "|- ?p0, !p0^" {PI2} {PI1})')
    (tmp_path / "env").write_text("p0 space a b c | a | b c\n")
    (tmp_path / "space").write_text("base a b\ntotal a\ntotal b\n")
    first = _run_cli_script(paths, 1)
    second = _run_cli_script(paths, 12345)
    ok = round_trip == 1000 and first == second and len(first) > 0
    report(8, ok, f"{round_trip}/1000 round trips; "
                  f"CLI transcripts of {len(first)} bytes identical across hash seeds: {first == second}")
