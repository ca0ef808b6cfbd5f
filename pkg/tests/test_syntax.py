import pytest
from hypothesis import given

from idll.syntax import (
    Bang,
    NegLit,
    Par,
    ParseError,
    Plus,
    PosLit,
    Tensor,
    WhyNot,
    With,
    bangs,
    dual,
    implication,
    modal_prefix,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
    whynots,
)

from strategies import formulas

p0, p1 = PosLit(0), PosLit(1)


@pytest.mark.parametrize(
    "text, expected",
    [
        ("p0 * p1", Tensor(p0, p1)),
        ("(p0 * p1)^", Par(NegLit(0), NegLit(1))),
        ("!p0", Bang(p0)),
        ("p0^", NegLit(0)),
        ("p0 -o p1", Par(NegLit(0), p1)),
        ("p0 * p1 @ p0", Par(Tensor(p0, p1), p0)),
        ("p0 + p1 & p0", Plus(p0, With(p1, p0))),
        ("!?p0^", Bang(WhyNot(NegLit(0)))),
        ("(!p0)^", WhyNot(NegLit(0))),
        ("p0^^", p0),
    ],
)
def test_parse(text, expected):
    assert parse_formula(text) == expected


@pytest.mark.parametrize(
    "f, text",
    [
        (Bang(Bang(p0)), "!!p0"),
        (Par(NegLit(0), p0), "p0^ @ p0"),
        (With(p0, p1), "p0 & p1"),
        (Tensor(p0, Tensor(p1, p0)), "p0 * (p1 * p0)"),
        (Tensor(Tensor(p0, p1), p0), "p0 * p1 * p0"),
        (Bang(Tensor(p0, p1)), "!(p0 * p1)"),
    ],
)
def test_print(f, text):
    assert print_formula(f) == text


def test_unicode_printing():
    assert print_formula(Par(NegLit(0), Plus(p0, p1)), unicode=True) == "p0⊥ ⅋ (p0 ⊕ p1)"


def test_dual_table():
    assert dual(Bang(p0)) == WhyNot(NegLit(0))
    assert dual(With(p0, p1)) == Plus(NegLit(0), NegLit(1))
    assert dual(Plus(p0, p1)) == With(NegLit(0), NegLit(1))
    assert dual(Tensor(p0, p1)) == Par(NegLit(0), NegLit(1))
    assert dual(WhyNot(NegLit(2))) == Bang(PosLit(2))


def test_implication():
    assert implication(p0, p0) == Par(NegLit(0), p0)
    q = PosLit(5)
    assert implication(Tensor(p0, p1), q) == Par(Par(NegLit(0), NegLit(1)), q)
    assert dual(implication(Tensor(p0, p1), q)) == Tensor(Tensor(p0, p1), dual(q))


def test_modal_prefix_examples():
    assert modal_prefix(WhyNot(WhyNot(p0))) == ("whynot", 2, p0)
    assert modal_prefix(Bang(WhyNot(p0))) == ("bang", 1, WhyNot(p0))
    assert modal_prefix(PosLit(3)) == ("none", 0, PosLit(3))


@pytest.mark.parametrize("text, position", [("p0 *", 4), ("p0 $ p1", 3), ("(p0", 3), ("p0 p1", 3), ("", 0)])
def test_parse_errors_carry_positions(text, position):
    with pytest.raises(ParseError) as info:
        parse_formula(text)
    assert info.value.position == position


def test_sequents():
    seq = parse_sequent("|- ??p0^, !!p0")
    assert seq == (whynots(2, NegLit(0)), bangs(2, p0))
    assert print_sequent(seq) == "|- ??p0^, !!p0"
    assert parse_sequent("|-") == ()
    assert parse_sequent("p0, (p1 * p0), p0^") == (p0, Tensor(p1, p0), NegLit(0))


@given(formulas)
def test_round_trip(f):
    assert parse_formula(print_formula(f)) == f


@given(formulas)
def test_dual_is_an_involution(f):
    assert dual(dual(f)) == f


@given(formulas)
def test_modal_core_differs_from_kind(f):
    kind, n, core = modal_prefix(f)
    if kind == "bang":
        assert n >= 1 and not isinstance(core, Bang)
    elif kind == "whynot":
        assert n >= 1 and not isinstance(core, WhyNot)
    else:
        assert n == 0 and core == f and not isinstance(f, (Bang, WhyNot))


@given(formulas)
def test_dual_commutes_with_modal_prefix(f):
    kind, n, core = modal_prefix(f)
    dk, dn, dcore = modal_prefix(dual(f))
    flipped = {"bang": "whynot", "whynot": "bang", "none": "none"}[kind]
    assert (dk, dn, dcore) == (flipped, n, dual(core))
