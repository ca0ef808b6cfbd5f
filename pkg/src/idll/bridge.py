"""Moving between LL and IdLL, proof search, and cut-free proof counting.

Search works on sequents as multisets (sorted tuples), so no Exchange step is
ever chosen; a found derivation is then laid out as a positional
:class:`~idll.calculus.Proof`, inserting Exchange steps only where Times
needs its context split into a prefix and a suffix.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple, Optional

from . import calculus as C
from .calculus import IDLL, LL, Proof, System, build, move, permute_to
from .cutelim import normalize
from .syntax import (
    Bang,
    Formula,
    Par,
    Plus,
    Tensor,
    WhyNot,
    With,
    dual,
    is_literal,
    modal_prefix,
    sort_key,
    whynots,
    bangs,
)


# ------------------------------------------------------------ translations


def idll_to_ll(proof: Proof) -> Proof:
    """Replace each n-rule by n single-step LL rules."""
    premises = tuple(idll_to_ll(p) for p in proof.premises)
    rule = proof.rule
    if isinstance(rule, C.NDereliction):
        (p,) = premises
        for _ in range(rule.n):
            p = build(C.Dereliction(rule.at), [p])
        return p
    if isinstance(rule, C.NPromotion):
        (p,) = premises
        for _ in range(rule.n):
            p = build(C.Promotion(rule.at), [p])
        return p
    return Proof(rule, proof.conclusion, premises)


def eta_block(n: int, m: int, core: Formula) -> Proof:
    """IdLL proof of ``|- ?^n core, !^m core^``: Identity, n-Dereliction, m-Promotion."""
    if n < 1 or m < 1:
        raise ValueError("block lengths must be positive")
    axiom = build(C.Identity(core), [], IDLL)
    der = build(C.NDereliction(0, n), [axiom], IDLL)
    return build(C.NPromotion(1, m), [der], IDLL)


def _cut_into(proof: Proof, at: int, lemma: Proof) -> Proof:
    """Cut the formula at ``at`` against the first formula of ``lemma``.

    The lemma has exactly two formulas; its second one ends up at ``at``.
    """
    last = len(proof.conclusion) - 1
    moved = move(proof, at, last)
    cut = build(C.Cut(moved.conclusion[-1]), [moved, lemma])
    return move(cut, last, at)


def ll_to_idll(proof: Proof, normalize_lemmas: bool = False) -> Proof:
    """Emulate LL Dereliction/Promotion in IdLL.

    A step that stacks a modality onto a block ``?^k A'`` (``!^k A'``) is
    replaced by a Cut against an eta block of the next length; other steps
    become the n = 1 rules.
    """
    result = _ll_to_idll(proof)
    if normalize_lemmas:
        result = normalize(result, IDLL).final
    return result


def _ll_to_idll(proof: Proof) -> Proof:
    premises = tuple(_ll_to_idll(p) for p in proof.premises)
    rule = proof.rule
    if isinstance(rule, C.Dereliction):
        (p,) = premises
        kind, k, core = modal_prefix(p.conclusion[rule.at])
        if kind != "whynot":
            return build(C.NDereliction(rule.at, 1), [p], IDLL)
        lemma = build(C.Exchange(0, 1), [eta_block(k + 1, k, core)])
        return _cut_into(p, rule.at, lemma)
    if isinstance(rule, C.Promotion):
        (p,) = premises
        kind, k, core = modal_prefix(p.conclusion[rule.at])
        if kind != "bang":
            return build(C.NPromotion(rule.at, 1), [p], IDLL)
        return _cut_into(p, rule.at, eta_block(k, k + 1, dual(core)))
    return Proof(rule, proof.conclusion, premises)


# ------------------------------------------------------ multiset derivations


class Deriv(NamedTuple):
    """A derivation over multiset sequents (``conclusion`` is sorted)."""

    rule: str
    principal: Optional[Formula]
    conclusion: tuple
    premises: tuple = ()
    n: int = 1

    def size(self) -> int:
        return 1 + sum(p.size() for p in self.premises)


def canon(seq) -> tuple:
    return tuple(sorted(seq, key=sort_key))


def _remove(seq: tuple, i: int) -> tuple:
    return seq[:i] + seq[i + 1:]


def _submultisets(seq: tuple):
    counts = Counter(seq)
    items = sorted(counts.items(), key=lambda kv: sort_key(kv[0]))
    for choice in itertools.product(*(range(c + 1) for _, c in items)):
        left, right = [], []
        for (f, c), k in zip(items, choice):
            left += [f] * k
            right += [f] * (c - k)
        yield tuple(left), tuple(right)


def _is_axiom(seq: tuple, system: System) -> bool:
    if len(seq) != 2 or seq[1] != dual(seq[0]):
        return False
    return system.axiom_mode == "general" or is_literal(seq[0])


def _expansions(seq: tuple, system: System, contraction: bool):
    """Backward rule instances: ``(rule, principal, n, premise sequents)``."""
    for i, f in enumerate(seq):
        if i and seq[i - 1] == f:
            continue
        rest = _remove(seq, i)
        if isinstance(f, Par):
            yield "par", f, 1, (canon(rest + (f.left, f.right)),)
        elif isinstance(f, With):
            yield "with", f, 1, (canon(rest + (f.left,)), canon(rest + (f.right,)))
        elif isinstance(f, Plus):
            yield "plusl", f, 1, (canon(rest + (f.left,)),)
            yield "plusr", f, 1, (canon(rest + (f.right,)),)
        elif isinstance(f, Tensor):
            for g, d in _submultisets(rest):
                yield "times", f, 1, (canon(g + (f.left,)), canon((f.right,) + d))
        elif isinstance(f, WhyNot):
            yield "weak", f, 1, (rest,)
            if system.logic == "ll":
                yield "der", f, 1, (canon(rest + (f.body,)),)
            else:
                _, k, core = modal_prefix(f)
                yield "nder", f, k, (canon(rest + (core,)),)
            if contraction:
                yield "contr", f, 1, (canon(seq + (f,)),)
        elif isinstance(f, Bang):
            if not all(isinstance(g, WhyNot) for g in rest):
                continue
            if system.logic == "ll":
                yield "prom", f, 1, (canon(rest + (f.body,)),)
            else:
                _, k, core = modal_prefix(f)
                yield "nprom", f, k, (canon(rest + (core,)),)


@dataclass
class Enumeration:
    proofs: list
    derivations: list
    exact: bool

    @property
    def count(self) -> int:
        return len(self.proofs)

    @property
    def flag(self) -> str:
        return "exact" if self.exact else "bounded"


def enumerate_cutfree(
    goal, system: System, max_nodes: int = 64, max_contractions: int = 0
) -> Enumeration:
    """All cut-free derivations of ``goal`` with at most ``max_nodes`` nodes.

    Derivations are counted over multiset sequents, so Exchange never
    contributes.  Contraction is excluded unless ``max_contractions`` allows
    it (per branch): with Contraction and Weakening together every provable
    ?-sequent has infinitely many cut-free proofs.
    """
    goal = tuple(goal)
    if not goal:
        raise ValueError("goal must be nonempty")
    truncated = False

    @lru_cache(maxsize=None)
    def enum(seq: tuple, budget: int, contr: int) -> tuple:
        nonlocal truncated
        found = []
        if budget < 1:
            if _is_axiom(seq, system) or any(not is_literal(f) for f in seq):
                truncated = True
            return ()
        if _is_axiom(seq, system):
            found.append(Deriv("id", None, seq))
        for rule, f, n, prems in _expansions(seq, system, contr > 0):
            left_contr = contr - 1 if rule == "contr" else contr
            if len(prems) == 1:
                for d in enum(prems[0], budget - 1, left_contr):
                    found.append(Deriv(rule, f, seq, (d,), n))
                continue
            for dl in enum(prems[0], budget - 2, contr):
                for dr in enum(prems[1], budget - 1 - dl.size(), contr):
                    found.append(Deriv(rule, f, seq, (dl, dr), n))
        return tuple(found)

    derivs = list(enum(canon(goal), max_nodes, max_contractions))
    derivs.sort(key=_deriv_key)
    proofs = [realize(d, goal, system) for d in derivs]
    return Enumeration(proofs, derivs, exact=not truncated)


def _deriv_key(d: Deriv):
    return (d.size(), repr(d))


# --------------------------------------------------------------- realizing


def _replace_first(order: tuple, f: Formula, new: tuple) -> tuple:
    i = order.index(f)
    return order[:i] + new + order[i + 1:], i


def realize(d: Deriv, order, system: System) -> Proof:
    """Lay out a multiset derivation with conclusion exactly ``order``."""
    order = tuple(order)
    f = d.principal
    if d.rule == "id":
        return build(C.Identity(order[0]), [], system)
    if d.rule == "times":
        i = order.index(f)
        rest = _remove(order, i)
        want_left = Counter(d.premises[0].conclusion)
        want_left[f.left] -= 1
        g, dl = [], []
        for x in rest:
            if want_left[x] > 0:
                want_left[x] -= 1
                g.append(x)
            else:
                dl.append(x)
        left = realize(d.premises[0], tuple(g) + (f.left,), system)
        right = realize(d.premises[1], (f.right,) + tuple(dl), system)
        node = build(C.TimesIntro(len(g)), [left, right], system)
        return permute_to(node, order)
    if d.rule == "weak":
        i = order.index(f)
        prem = realize(d.premises[0], _remove(order, i), system)
        return build(C.Weakening(i, f), [prem], system)
    if d.rule == "with":
        po1, i = _replace_first(order, f, (f.left,))
        po2, _ = _replace_first(order, f, (f.right,))
        prems = [realize(d.premises[0], po1, system), realize(d.premises[1], po2, system)]
        return build(C.WithIntro(i), prems, system)
    if d.rule == "par":
        po, i = _replace_first(order, f, (f.left, f.right))
        return build(C.ParIntro(i), [realize(d.premises[0], po, system)], system)
    if d.rule == "contr":
        po, i = _replace_first(order, f, (f, f))
        return build(C.Contraction(i), [realize(d.premises[0], po, system)], system)
    if d.rule in ("plusl", "plusr"):
        left = d.rule == "plusl"
        po, i = _replace_first(order, f, (f.left if left else f.right,))
        rule = C.PlusLeft(i, f.right) if left else C.PlusRight(i, f.left)
        return build(rule, [realize(d.premises[0], po, system)], system)
    if d.rule in ("der", "prom"):
        po, i = _replace_first(order, f, (f.body,))
        rule = C.Dereliction(i) if d.rule == "der" else C.Promotion(i)
        return build(rule, [realize(d.premises[0], po, system)], system)
    if d.rule in ("nder", "nprom"):
        core = modal_prefix(f)[2]
        po, i = _replace_first(order, f, (core,))
        rule = C.NDereliction(i, d.n) if d.rule == "nder" else C.NPromotion(i, d.n)
        return build(rule, [realize(d.premises[0], po, system)], system)
    raise ValueError(f"unknown derivation rule {d.rule!r}")


# ------------------------------------------------------------------ search


class Verdict(NamedTuple):
    answer: str  # "yes" | "no" | "unknown"
    proof: Optional[Proof] = None


def _exponential_free(seq) -> bool:
    def free(f):
        if is_literal(f):
            return True
        if isinstance(f, (Bang, WhyNot)):
            return False
        return free(f.left) and free(f.right)

    return all(free(f) for f in seq)


def provable(goal, system: System, depth: int = 12, contractions: int = 2) -> Verdict:
    """Bounded backward search for a cut-free proof.

    ``no`` is only returned for exponential-free goals whose search space
    was exhausted within ``depth``; otherwise a failed search is ``unknown``.
    """
    goal = tuple(goal)
    truncated = False

    @lru_cache(maxsize=None)
    def search(seq: tuple, budget: int, used: tuple) -> Optional[Deriv]:
        nonlocal truncated
        if _is_axiom(seq, system):
            return Deriv("id", None, seq)
        if budget < 1:
            truncated = True
            return None
        used_count = dict(used)
        options = list(_expansions(seq, system, contraction=True))
        invertible = [o for o in options if o[0] in ("par", "with")]
        if invertible:
            options = invertible[:1]
        for rule, f, n, prems in options:
            new_used = used
            if rule == "contr":
                if used_count.get(f, 0) >= contractions:
                    continue
                counts = dict(used_count)
                counts[f] = counts.get(f, 0) + 1
                new_used = tuple(sorted(counts.items(), key=lambda kv: sort_key(kv[0])))
            subs = []
            for prem in prems:
                sub = search(prem, budget - 1, new_used)
                if sub is None:
                    break
                subs.append(sub)
            else:
                return Deriv(rule, f, seq, tuple(subs), n)
        return None

    found = search(canon(goal), depth, ())
    if found is not None:
        return Verdict("yes", realize(found, goal, system))
    if not truncated and _exponential_free(goal):
        return Verdict("no")
    return Verdict("unknown")
