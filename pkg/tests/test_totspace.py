import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from idll import laws
from idll import totspace as T

ATOMS = "abcdef"


@st.composite
def pre_spaces(draw, max_atoms=5):
    n = draw(st.integers(0, max_atoms))
    atoms = ATOMS[:n]
    fam = draw(st.lists(st.sets(st.sampled_from(atoms)) if atoms else st.just(set()), max_size=5))
    return T.space(atoms, fam)


def brute_dual(a):
    """Dual straight from the definition, over explicit subsets."""
    atoms = sorted(a.base)
    subsets = [frozenset(c) for k in range(len(atoms) + 1) for c in itertools.combinations(atoms, k)]
    return frozenset(r for r in subsets if all(len(r & s) == 1 for s in a.totals))


def test_dual_examples():
    assert T.dual(T.space("ab", ["a", "b"])) == T.space("ab", ["ab"])
    one = T.space([T.STAR], [[T.STAR]])
    assert T.dual(one) == one
    assert T.units().one == one == T.units().bot


@given(pre_spaces())
def test_dual_matches_brute_force(a):
    assert T.dual(a).totals == brute_dual(a)
    assert T.dual_powerset(a) == T.dual(a)


@given(pre_spaces())
def test_dual_of_a_pre_space_is_a_totality_space(a):
    d = T.dual(a)
    assert T.is_totality_space(d)
    assert T.dual(T.dual(d)) == d


def test_make_space():
    # the empty family is biclosed: its dual is the powerset, whose dual is empty
    assert T.make_space("ab", []).totals == frozenset()
    with pytest.raises(T.NotATotalitySpace) as info:
        T.make_space("ab", ["a", "b", "ab"])
    assert len(info.value.bidual) == 4


def test_cap_is_enforced():
    with pytest.raises(T.CapExceeded):
        T.dual(T.space(range(20), []))


def test_exhaustive_family_against_brute_force():
    family = T.all_spaces(2)
    expected = []
    for n in range(3):
        atoms = ATOMS[:n]
        subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(atoms, k)]
        for k in range(len(subsets) + 1):
            for fam in itertools.combinations(subsets, k):
                a = T.space(atoms, fam)
                if brute_dual(T.TotSpace(a.base, brute_dual(a))) == a.totals:
                    expected.append(a)
    assert sorted(map(T.describe, family)) == sorted(map(T.describe, expected))
    sizes = [sum(1 for a in T.all_spaces(3) if len(a.base) == n) for n in range(4)]
    assert sizes == [2, 3, 8, 34]


def test_tensor_of_single_total_spaces():
    a = T.space("ab", ["ab"])
    b = T.space("xy", ["x"])
    assert len(T.tensor(a, b).totals) == 1


def test_product_family_need_not_be_biclosed():
    a = T.space("ab", ["ab"])
    b = T.space("ab", ["a", "ab"])
    fam = T.tensor_family(a, b)
    assert len(fam.totals) == 2
    closed = T.tensor(a, b)
    assert fam.totals < closed.totals and len(closed.totals) == 4
    assert frozenset({("a", "a"), ("b", "a"), ("a", "b")}) in closed.totals
    # the second space has an atom (b) lying in no cototal set
    assert all("b" not in c for c in T.dual(b).totals)


def _clean(a):
    return all(any(x in c for c in T.dual(a).totals) for x in a.base)


def test_product_family_is_biclosed_when_every_atom_is_cototal():
    family = [a for a in T.all_spaces(3) if _clean(a)]
    for a, b in itertools.product(family, family):
        fam = T.tensor_family(a, b)
        assert T.biclosure(fam) == fam
        if a.base and b.base:
            assert len(T.tensor(a, b).totals) == len(a.totals) * len(b.totals)


def test_with_and_plus():
    a = T.space("ab", ["a", "b"])
    b = T.space("x", ["x"])
    w = T.with_(a, b)
    assert len(w.totals) == len(a.totals) * len(b.totals)
    assert T.dual(w) == T.plus(T.dual(a), T.dual(b))
    p = T.plus(a, b)
    assert p.totals == frozenset({frozenset({(0, "a")}), frozenset({(0, "b")}), frozenset({(1, "x")})})
    top = T.units().top
    # the literal family of A+T has the empty set as a total, so it is not biclosed
    assert not T.is_totality_space(T.plus_family(a, top))
    assert T.is_totality_space(T.plus(a, top))


@given(st.integers(0, 10**6))
def test_de_morgan_on_random_spaces(seed):
    rng = random.Random(seed)
    a, b = T.random_space(rng, 3), T.random_space(rng, 3)
    assert T.dual(T.tensor(a, b)) == T.par(T.dual(a), T.dual(b))
    assert T.dual(T.with_(a, b)) == T.plus(T.dual(a), T.dual(b))
    assert T.dual(T.plus(a, b)) == T.with_(T.dual(a), T.dual(b))


def test_bang_and_whynot():
    a = T.space("abc", ["a", "bc"])
    ba = T.bang(a)
    assert ba.base == a.totals
    assert T.dual(ba) == T.TotSpace(a.totals, frozenset([a.totals]))
    assert T.is_totality_space(ba)
    wa = T.whynot(a)
    assert wa.base == T.dual(a).totals
    assert wa.totals == frozenset([wa.base])


def test_bang_top_is_one():
    fwd, bwd = T.bang_top_witness()
    assert T.is_isomorphism(fwd, bwd)
    assert T.bang(T.units().top).totals == frozenset([frozenset([frozenset()])])


def test_morphisms_and_composition():
    a = T.space("ab", ["a", "b"])
    b = T.space("x", ["x"])
    assert T.is_morphism(T.identity(a).graph, a, a)
    f = T.morphism(a, b, [("a", "x"), ("b", "x")])
    assert f.image({"a"}) == frozenset({"x"})
    with pytest.raises(T.NotAMorphism):
        T.morphism(a, b, [("a", "x")])
    assert T.compose(T.identity(a), f) == f == T.compose(f, T.identity(b))


def test_composition_is_associative_on_random_triples():
    rng = random.Random(4)
    spaces = [a for a in T.all_spaces(2) if a.base]
    done = 0
    while done < 40:
        a, b, c, d = (rng.choice(spaces) for _ in range(4))
        fs = laws._graphs(a, b)
        gs = laws._graphs(b, c)
        hs = laws._graphs(c, d)
        if not (fs and gs and hs):
            continue
        f, g, h = rng.choice(fs), rng.choice(gs), rng.choice(hs)
        left = T.compose(T.compose(f, g), h)
        assert left == T.compose(f, T.compose(g, h))
        assert T.is_morphism(left.graph, a, d)
        done += 1


def test_dis_is_a_functor_and_monoidal():
    s, t = "ab", "xyz"
    for func in T.functions(s, t):
        m = T.dis_map(func, s, t)
        assert T.is_morphism(m.graph, m.source, m.target)
    prod = T.tensor(T.dis(s), T.dis(t))
    assert prod == T.dis(itertools.product(s, t))
    assert T.dis([T.STAR]) == T.units().one


def test_adjunction_examples():
    a = T.space("abc", ["a", "bc"])
    s = {0, 1}
    t0 = frozenset("bc")
    phi = T.adj_bwd({0: t0, 1: t0}, s, a)
    assert phi.graph == frozenset(itertools.product(s, t0))
    for func in T.functions(s, a.totals):
        hat = T.adj_bwd(func, s, a)
        for x in s:
            for tau in T.dual(a).totals:
                alpha = frozenset(itertools.product([x], tau))
                assert len(hat.graph & alpha) == 1
        assert T.adj_fwd(hat) == func


def test_comonad_on_an_example():
    a = T.space("abc", ["a", "bc"])
    d, e = T.delta(a), T.epsilon(a)
    assert d.graph == frozenset((s, frozenset([s])) for s in a.totals)
    assert e.graph == frozenset((s, x) for s in a.totals for x in s)
    assert T.compose(d, T.epsilon(T.bang(a))) == T.identity(T.bang(a))
    assert T.is_isomorphism(d, T.inverse_graph(d))
    fwd, bwd = T.mon(a, T.space("x", ["x"]))
    assert T.is_isomorphism(fwd, bwd)


def test_law_suite_on_small_family():
    family = T.all_spaces(2) + [T.random_space(random.Random(1)) for _ in range(5)]
    results = {r.name: r for r in laws.check_laws(family, exhaustive=len(T.all_spaces(2)))}
    for name, r in results.items():
        if name in ("tensor-biclosure", "tensor-cardinality"):
            continue
        assert r.passed, r.line()
        assert r.checked > 0


def test_space_description_round_trip():
    a = T.space("abc", ["a", "bc", ""])
    text = T.describe(a)
    assert T.parse_space(text) == a
    assert T.parse_space("# comment\nbase a b\ntotal a b\n") == T.space("ab", ["ab"])
    with pytest.raises(ValueError):
        T.parse_space("base a\ntotal b\n")
    with pytest.raises(ValueError):
        T.parse_space("total a\n")
