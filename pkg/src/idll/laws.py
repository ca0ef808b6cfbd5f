"""Executable law checks for the totality-space model.

Each law runs over a list of spaces (and pairs of them) and yields a
:class:`LawResult` recording how many instances were checked and the first
counterexample found.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from . import totspace as T


@dataclass(frozen=True)
class LawResult:
    name: str
    checked: int
    failures: int
    counterexample: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        text = f"{status} {self.name}: {self.checked} checked, {self.failures} failed"
        if self.counterexample:
            text += "\n    counterexample: " + self.counterexample
        return text


def _show(*spaces: T.TotSpace) -> str:
    return " ; ".join(T.describe(a).replace("\n", " | ") for a in spaces)


def _run(name: str, cases: Iterable, test: Callable, show: Callable = _show) -> LawResult:
    checked = failures = 0
    witness = None
    for case in cases:
        checked += 1
        if not test(*case):
            failures += 1
            if witness is None:
                witness = show(*case)
    return LawResult(name, checked, failures, witness)


def _closed(a: T.TotSpace) -> bool:
    return T.biclosure(a) == a


def standard_family(seed: int = 0, random_count: int = 50, max_atoms: int = 3) -> list[T.TotSpace]:
    """Every space on at most ``max_atoms`` atoms, then ``random_count`` random ones."""
    rng = random.Random(seed)
    return T.all_spaces(max_atoms) + [T.random_space(rng) for _ in range(random_count)]


def _pairs(spaces: list[T.TotSpace], exhaustive: int) -> list[tuple]:
    """All pairs among the first ``exhaustive`` spaces, then consecutive pairs of the rest."""
    head, tail = spaces[:exhaustive], spaces[exhaustive:]
    pairs = list(itertools.product(head, head))
    pairs += list(zip(tail, tail[1:] + tail[:1]))
    return pairs


def _graphs(a: T.TotSpace, b: T.TotSpace) -> list[T.Morphism]:
    cells = sorted(itertools.product(a.base, b.base), key=T.atom_key)
    out = []
    for k in range(len(cells) + 1):
        for g in itertools.combinations(cells, k):
            if T.is_morphism(g, a, b):
                out.append(T.Morphism(a, b, frozenset(g)))
    return out


def morphism_samples(spaces: list[T.TotSpace], max_cells: int = 6) -> list[T.Morphism]:
    """All morphisms between pairs of spaces whose product base is small."""
    small = [a for a in spaces if len(a.base) <= 3]
    out = []
    for a, b in itertools.product(small, small):
        if len(a.base) * len(b.base) <= max_cells:
            out.extend(_graphs(a, b))
    return out


def check_laws(spaces: list[T.TotSpace], exhaustive: Optional[int] = None) -> list[LawResult]:
    if exhaustive is None:
        exhaustive = len(T.all_spaces(3))
    singles = [(a,) for a in spaces]
    pairs = _pairs(spaces, exhaustive)
    results = []

    def constructed():
        for a in spaces:
            yield (T.bang(a),)
            yield (T.whynot(a),)
        for a, b in pairs:
            for op in (T.tensor, T.par, T.with_, T.plus):
                yield (op(a, b),)

    results.append(_run("involution", itertools.chain(singles, constructed()), _closed))
    results.append(_run("tensor-biclosure", pairs, lambda a, b: _closed(T.tensor_family(a, b))))
    results.append(_run("de-morgan-tensor", pairs,
                        lambda a, b: T.dual(T.tensor(a, b)) == T.par(T.dual(a), T.dual(b))))
    results.append(_run("with-dual", pairs,
                        lambda a, b: T.dual(T.with_(a, b)) == T.plus(T.dual(a), T.dual(b))))
    results.append(_run("plus-dual", pairs,
                        lambda a, b: T.dual(T.plus(a, b)) == T.with_(T.dual(a), T.dual(b))))
    results.append(_run("tensor-cardinality", pairs,
                        lambda a, b: len(T.tensor(a, b).totals) == len(a.totals) * len(b.totals)))
    results.append(_run("with-cardinality", pairs,
                        lambda a, b: len(T.with_(a, b).totals) == len(a.totals) * len(b.totals)))

    def counit(a):
        d = T.delta(a)
        return compose_ok(d, T.epsilon(T.bang(a)), T.identity(T.bang(a)))

    def counit_bang(a):
        return compose_ok(T.delta(a), T.bang_map(T.epsilon(a)), T.identity(T.bang(a)))

    def coassoc(a):
        d = T.delta(a)
        return T.compose(d, T.bang_map(d)) == T.compose(d, T.delta(T.bang(a)))

    def witnesses(a):
        return all(T.is_morphism(m.graph, m.source, m.target) for m in (T.delta(a), T.epsilon(a)))

    def delta_iso(a):
        d = T.delta(a)
        inv = T.inverse_graph(d)
        return T.is_morphism(inv.graph, inv.source, inv.target) and T.is_isomorphism(d, inv)

    results.append(_run("comonad-witnesses", singles, witnesses))
    results.append(_run("comonad-counit", singles, counit))
    results.append(_run("comonad-counit-bang", singles, counit_bang))
    results.append(_run("comonad-coassociativity", singles, coassoc))
    results.append(_run("delta-isomorphism", singles, delta_iso))

    morphs = [(m,) for m in morphism_samples(spaces[:exhaustive])]

    def show_morph(m):
        return _show(m.source, m.target) + " ; graph " + str(sorted(m.graph, key=T.atom_key))

    def functorial(m):
        return T.bang_map(m) == T.Morphism(T.bang(m.source), T.bang(m.target),
                                           T.dis_map(T.yon_map(m), m.source.totals, m.target.totals).graph)

    def natural_eps(m):
        return T.compose(T.epsilon(m.source), m) == T.compose(T.bang_map(m), T.epsilon(m.target))

    def natural_delta(m):
        bm = T.bang_map(m)
        return T.compose(T.delta(m.source), T.bang_map(bm)) == T.compose(bm, T.delta(m.target))

    def bang_is_morphism(m):
        bm = T.bang_map(m)
        return T.is_morphism(bm.graph, bm.source, bm.target)

    results.append(_run("bang-functor", morphs, lambda m: functorial(m) and bang_is_morphism(m), show_morph))
    results.append(_run("epsilon-natural", morphs, natural_eps, show_morph))
    results.append(_run("delta-natural", morphs, natural_delta, show_morph))

    def monoidal(a, b):
        fwd, bwd = T.mon(a, b)
        ok = all(T.is_morphism(m.graph, m.source, m.target, cap=len(m.source.base) * len(m.target.base))
                 for m in (fwd, bwd))
        return ok and T.is_isomorphism(fwd, bwd)

    def bang_top():
        fwd, bwd = T.bang_top_witness()
        return (T.is_morphism(fwd.graph, fwd.source, fwd.target)
                and T.is_morphism(bwd.graph, bwd.source, bwd.target)
                and T.is_isomorphism(fwd, bwd))

    within = [(a, b) for a, b in pairs if len(a.totals) * len(b.totals) <= T.BANG_CAP]
    results.append(_run("bang-with-tensor", within, monoidal))
    results.append(_run("bang-top-one", [()], bang_top, lambda: "!T vs 1"))

    def adjunction(a):
        ok = True
        for n in range(3):
            s = frozenset(range(n))
            for f in T.functions(s, a.totals):
                ok = ok and T.adj_fwd(T.adj_bwd(f, s, a)) == f
            for phi in _graphs(T.dis(s), a):
                ok = ok and T.adj_bwd(T.adj_fwd(phi), s, a) == phi
        return ok

    small = [(a,) for a in spaces[:exhaustive] if len(a.totals) <= 2]
    results.append(_run("adjunction-round-trip", small, adjunction))
    return results


def compose_ok(f: T.Morphism, g: T.Morphism, expected: T.Morphism) -> bool:
    return T.compose(f, g) == expected
