import pytest

from idll import calculus as C
from idll.bridge import eta_block
from idll.proofio import parse_proof
from idll.syntax import NegLit, PosLit, Tensor, WhyNot, parse_sequent

from worked import MUTATIONS, load

p0, p1 = PosLit(0), PosLit(1)


def node(rule, *premises, system=C.IDLL):
    return C.build(rule, premises, system)


@pytest.mark.parametrize("name", ["pi1", "pi2", "eta1", "eta2"])
def test_worked_proofs_check_in_idll(name):
    C.check(load(name), C.IDLL)


def test_worked_proofs_match_eta_blocks():
    assert load("pi1") == eta_block(2, 1, p0)
    assert load("pi2") == eta_block(1, 2, p0)
    assert load("eta2") == eta_block(2, 2, p0)


@pytest.mark.parametrize("label, system, text, reason", MUTATIONS, ids=[m[0] for m in MUTATIONS])
def test_mutations_are_rejected_with_reason(label, system, text, reason):
    proof = parse_proof(text)
    with pytest.raises(C.RuleError) as info:
        C.check(proof, system)
    assert info.value.reason == reason


def test_identity():
    assert node(C.Identity(p0)).conclusion == (p0, NegLit(0))


def test_atomic_mode_rejects_compound_axioms():
    with pytest.raises(C.RuleError) as info:
        C.build(C.Identity(Tensor(p0, p1)), [], C.IDLL.atomic())
    assert info.value.reason == C.SIDE


def test_n_promotion_schema():
    premise = node(C.NDereliction(0, 2), node(C.Identity(NegLit(0))))
    assert premise.conclusion == parse_sequent("|- ??p0^, p0")
    assert node(C.NPromotion(1, 2), premise).conclusion == parse_sequent("|- ??p0^, !!p0")


def test_cut_mismatch():
    left = node(C.Identity(p0))
    right = node(C.Identity(p1))
    with pytest.raises(C.RuleError) as info:
        C.build(C.Cut(NegLit(0)), [left, right], C.LL)
    assert info.value.reason == C.FORMULA


def test_with_needs_shared_context():
    a = node(C.Identity(p0))
    b = node(C.Identity(p1))
    with pytest.raises(C.RuleError) as info:
        C.build(C.WithIntro(0), [a, b], C.LL)
    assert info.value.reason == C.CONTEXT


def test_contraction_only_on_whynot():
    t = node(C.TimesIntro(1), node(C.Identity(p0)), node(C.Identity(p0)), system=C.LL)
    assert t.conclusion == parse_sequent("|- p0, p0^ * p0, p0^")
    with pytest.raises(C.RuleError) as info:
        C.build(C.Contraction(0), [node(C.Exchange(1, 2), t, system=C.LL)], C.LL)
    assert info.value.reason in (C.SIDE, C.FORMULA)


def test_wrong_conclusion_is_reported_with_path():
    bad = parse_proof('(nprom :at 1 :n 1 "|- ??p0, !p0^" (nder :at 0 :n 2 "|- ??p0, p0^" (id "|- p1, p1^")))')
    with pytest.raises(C.RuleError) as info:
        C.check(bad, C.IDLL)
    assert info.value.reason == C.CONCLUSION
    assert info.value.path == (0,)


def test_sequent_multiset():
    assert C.sequent_multiset((p0, p1)) == C.sequent_multiset((p1, p0))
    assert C.sequent_multiset((p0, p0)) != C.sequent_multiset((p0,))
    assert not C.sequent_multiset(())


def test_exchange_normal_form_ignores_exchanges():
    pi = load("pi1")
    swapped = C.build(C.Exchange(0, 1), [C.build(C.Exchange(0, 1), [pi])])
    assert C.exchange_normal_form(swapped) == C.exchange_normal_form(pi)


def test_permute_to():
    t = node(C.TimesIntro(1), node(C.Identity(p0)), node(C.Identity(p1)), system=C.LL)
    target = (NegLit(1), Tensor(NegLit(0), p1), p0)
    moved = C.permute_to(t, target)
    assert moved.conclusion == target
    C.check(moved, C.LL)


def test_weakening_inserts_at_position():
    w = node(C.Weakening(1, WhyNot(p1)), node(C.Identity(p0)))
    assert w.conclusion == (p0, WhyNot(p1), NegLit(0))
