import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idll import calculus as C
from idll import cutelim as E
from idll.bridge import eta_block
from idll.corpus import ProofGenerator, cut_corpus
from idll.syntax import PosLit, dual, parse_sequent

from worked import load

import random

p0 = PosLit(0)


def cut(left, right, system=C.IDLL):
    return C.build(C.Cut(left.conclusion[-1]), [left, right], system)


def test_cut_free_proofs_take_no_steps():
    pi = load("pi1")
    assert E.is_cut_free(pi)
    trace = E.normalize(pi, C.IDLL)
    assert trace.steps == [] and trace.final == pi


def test_bang_bang_pair_normalizes_to_single_block():
    # pi2 ends with !!p0^, pi1 starts with ??p0
    c = cut(load("pi2"), load("pi1"))
    assert c.conclusion == parse_sequent("|- ?p0, !p0^")
    assert not E.is_cut_free(c)
    trace = E.normalize(c, C.IDLL)
    assert [s.kind for s in trace.steps] == ["commute-right:nprom", "nprom-nder", "axiom-right"]
    assert C.exchange_normal_form(trace.final) == C.exchange_normal_form(eta_block(1, 1, p0))


def test_bang_pair_normalizes_to_double_block():
    c = cut(load("pi1"), load("pi2"))
    assert c.conclusion == parse_sequent("|- ??p0, !!p0^")
    trace = E.normalize(c, C.IDLL)
    assert C.exchange_normal_form(trace.final) == C.exchange_normal_form(eta_block(2, 2, p0))


def test_axiom_cut():
    pi = load("eta1")
    ax = C.build(C.Identity(dual(pi.conclusion[-1])), [])
    c = cut(pi, ax)
    reduced = E.reduce_step(c, C.IDLL)
    assert reduced == pi


def test_replay_reproduces_final():
    for p, system in cut_corpus(seed=11, count=20):
        trace = E.normalize(p, system)
        assert E.replay(p, trace.steps, system) == trace.final


def test_fuel_exhaustion_is_reported():
    c = cut(load("pi1"), load("pi2"))
    with pytest.raises(E.FuelExhausted) as info:
        E.normalize(c, C.IDLL, fuel=1)
    assert len(info.value.trace.steps) == 1


def test_malformed_input_propagates_checker_error():
    bad = C.Proof(C.Cut(p0), parse_sequent("|- p0"), (load("pi1"), load("pi2")))
    with pytest.raises(C.RuleError):
        E.reduce_step(bad, C.IDLL)


@settings(max_examples=40)
@given(st.integers(0, 10**6), st.sampled_from(["ll", "idll"]))
def test_subject_reduction_and_termination(seed, logic):
    system = C.System(logic)
    gen = ProofGenerator(random.Random(seed), system)
    p = gen.cut_proof(budget=3)
    if p is None:
        return
    current = p
    for _ in range(2 ** C.proof_size(p)):
        nxt = E.reduce_step(current, system)
        if nxt is None:
            break
        C.check(nxt, system)
        assert nxt.conclusion == p.conclusion
        current = nxt
    assert E.is_cut_free(current)
    # normal forms are stable
    assert E.normalize(current, system).steps == []


def _exponential_cuts_are_whole_blocks(proof):
    from idll.syntax import modal_prefix
    for _, n in C.nodes(proof):
        if isinstance(n.rule, C.Cut):
            left = n.premises[0]
            kind, k, _ = modal_prefix(n.rule.formula)
            if kind == "none":
                continue
            # the block on the cut formula is never split: its dual carries the same count
            dk, dk_n, _ = modal_prefix(n.premises[1].conclusion[0])
            assert dk_n == k
    return True


def test_block_integrity_along_idll_reductions():
    for p, system in cut_corpus(seed=2, count=40):
        if system.logic != "idll":
            continue
        current = p
        while current is not None:
            assert _exponential_cuts_are_whole_blocks(current)
            current = E.reduce_step(current, system)
