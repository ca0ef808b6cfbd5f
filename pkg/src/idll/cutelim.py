"""Cut elimination for LL and IdLL.

The strategy always reduces the leftmost topmost Cut, i.e. a Cut whose two
sub-proofs are cut-free.  Exchange steps directly above a Cut are looked
through: a reduction works on the first non-Exchange rule of each premise and
tracks every formula occurrence with a label, so that the reduced proof ends
with the same conclusion, in the same order, as the Cut it replaces.  Any
reordering this needs is emitted as adjacent Exchange steps.

In IdLL a block ``!^n A`` (``A`` not !-headed) is introduced by a single
n-Promotion and its dual ``?^n A^`` by a single n-Dereliction, so exponential
cuts always meet whole blocks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from . import calculus as C
from .calculus import Proof, System, build, check, nodes, proof_size, replace_at, subproof
from .syntax import Par, Plus, Tensor, With


class InternalFault(RuntimeError):
    """A Cut matched no reduction case."""


class FuelExhausted(RuntimeError):
    def __init__(self, trace: "ReductionTrace"):
        super().__init__(f"fuel exhausted after {len(trace.steps)} steps")
        self.trace = trace


class Step(NamedTuple):
    kind: str
    path: tuple


@dataclass
class ReductionTrace:
    steps: list = field(default_factory=list)
    final: Optional[Proof] = None


class LP(NamedTuple):
    """A proof together with one label per conclusion position."""

    proof: Proof
    labels: tuple


# ---------------------------------------------------------------- plumbing


def _swap(lp: LP, i: int) -> LP:
    labels = list(lp.labels)
    labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return LP(build(C.Exchange(i, i + 1), [lp.proof]), tuple(labels))


def _move(lp: LP, src: int, dst: int) -> LP:
    while src < dst:
        lp = _swap(lp, src)
        src += 1
    while src > dst:
        lp = _swap(lp, src - 1)
        src -= 1
    return lp


def permute(lp: LP, target) -> LP:
    """Reorder by adjacent exchanges until the labels read ``target``."""
    target = tuple(target)
    if sorted(map(repr, lp.labels)) != sorted(map(repr, target)):
        raise InternalFault(f"label mismatch: {lp.labels} vs {target}")
    for k, label in enumerate(target):
        lp = _move(lp, lp.labels.index(label), k)
    return lp


def _gcut(a: LP, i: int, b: LP, j: int) -> LP:
    """Cut ``a`` at position ``i`` against ``b`` at position ``j``."""
    a = _move(a, i, len(a.labels) - 1)
    b = _move(b, j, 0)
    proof = build(C.Cut(a.proof.conclusion[-1]), [a.proof, b.proof])
    return LP(proof, a.labels[:-1] + b.labels[1:])


def _peel(lp: LP) -> LP:
    proof, labels = lp
    while isinstance(proof.rule, C.Exchange):
        i, j = proof.rule.i, proof.rule.j
        labels = list(labels)
        labels[i], labels[j] = labels[j], labels[i]
        labels = tuple(labels)
        proof = proof.premises[0]
    return LP(proof, labels)


_fresh = itertools.count()


def _new():
    return ("#", next(_fresh))


def _replace(labels, old, new):
    return tuple(new if x == old else x for x in labels)


def _is_principal(proof: Proof, pos: int) -> bool:
    rule = proof.rule
    if isinstance(rule, C.TimesIntro):
        return pos == rule.split
    return pos == rule.at


_PROMOTIONS = (C.Promotion, C.NPromotion)


# ------------------------------------------------------------ commutations


def _premise_labels(proof: Proof, labels: tuple):
    """Labels for each premise, plus the fresh labels of active formulas."""
    rule = proof.rule
    if isinstance(rule, C.TimesIntro):
        x, y = _new(), _new()
        s = rule.split
        return [labels[:s] + (x,), (y,) + labels[s + 1:]], (x, y)
    at = rule.at
    if isinstance(rule, (C.ParIntro, C.Contraction)):
        x, y = _new(), _new()
        return [labels[:at] + (x, y) + labels[at + 1:]], (x, y)
    if isinstance(rule, C.Weakening):
        return [labels[:at] + labels[at + 1:]], ()
    if isinstance(rule, C.WithIntro):
        x, y = _new(), _new()
        return [labels[:at] + (x,) + labels[at + 1:], labels[:at] + (y,) + labels[at + 1:]], (x, y)
    x = _new()
    return [labels[:at] + (x,) + labels[at + 1:]], (x,)


def _reapply(rule: C.Rule, subs: list, active: tuple, principal_label) -> LP:
    """Rebuild ``rule`` below new premises whose active formulas carry ``active``."""
    if isinstance(rule, C.TimesIntro):
        left, right = subs
        x, y = active
        left = _move(left, left.labels.index(x), len(left.labels) - 1)
        right = _move(right, right.labels.index(y), 0)
        proof = build(C.TimesIntro(len(left.labels) - 1), [left.proof, right.proof])
        return LP(proof, left.labels[:-1] + (principal_label,) + right.labels[1:])
    if isinstance(rule, C.Weakening):
        (sub,) = subs
        proof = build(C.Weakening(len(sub.labels), rule.introduced), [sub.proof])
        return LP(proof, sub.labels + (principal_label,))
    if isinstance(rule, (C.ParIntro, C.Contraction)):
        (sub,) = subs
        x, y = active
        k = sub.labels.index(x)
        if sub.labels[k + 1] != y:
            raise InternalFault("active pair separated by a commutation")
        new = C.ParIntro(k) if isinstance(rule, C.ParIntro) else C.Contraction(k)
        labels = sub.labels[:k] + (principal_label,) + sub.labels[k + 2:]
        return LP(build(new, [sub.proof]), labels)
    if isinstance(rule, C.WithIntro):
        left, right = subs
        x, y = active
        k = left.labels.index(x)
        if right.labels.index(y) != k:
            raise InternalFault("With premises out of step after commutation")
        proof = build(C.WithIntro(k), [left.proof, right.proof])
        return LP(proof, _replace(left.labels, x, principal_label))
    (sub,) = subs
    (x,) = active
    k = sub.labels.index(x)
    if isinstance(rule, (C.PlusLeft, C.PlusRight)):
        new = type(rule)(k, rule.other)
    elif isinstance(rule, (C.NDereliction, C.NPromotion)):
        new = type(rule)(k, rule.n)
    else:
        new = type(rule)(k)
    return LP(build(new, [sub.proof]), _replace(sub.labels, x, principal_label))


def _commute(side: LP, pos: int, cut_with) -> LP:
    """Permute the Cut above the last rule of ``side``.

    ``cut_with(premise_lp, index)`` performs the Cut on one premise.
    """
    proof, labels = side
    target = labels[pos]
    prem_labels, active = _premise_labels(proof, labels)
    subs = []
    for prem, plabels in zip(proof.premises, prem_labels):
        lp = LP(prem, plabels)
        if target in plabels:
            lp = cut_with(lp, plabels.index(target))
        subs.append(lp)
    if isinstance(proof.rule, C.WithIntro):
        pass  # both premises received the Cut above
    principal = labels[proof.rule.split if isinstance(proof.rule, C.TimesIntro) else proof.rule.at]
    return _reapply(proof.rule, subs, active, principal)


# --------------------------------------------------------- principal cases


def _multiplicative(L: LP, q: int, R: LP, r: int) -> LP:
    left_is_times = isinstance(L.proof.rule, C.TimesIntro)
    T, P = (L, R) if left_is_times else (R, L)
    (t1, t2), (x, y) = _premise_labels(T.proof, T.labels)
    (p1,), (xd, yd) = _premise_labels(P.proof, P.labels)
    T1 = LP(T.proof.premises[0], t1)
    T2 = LP(T.proof.premises[1], t2)
    P1 = LP(P.proof.premises[0], p1)
    if left_is_times:
        c1 = _gcut(T1, len(t1) - 1, P1, p1.index(xd))
        return _gcut(T2, 0, c1, c1.labels.index(yd))
    c1 = _gcut(P1, p1.index(xd), T1, len(t1) - 1)
    return _gcut(c1, c1.labels.index(yd), T2, 0)


def _additive(L: LP, q: int, R: LP, r: int) -> LP:
    left_is_with = isinstance(L.proof.rule, C.WithIntro)
    W, S = (L, R) if left_is_with else (R, L)
    (w1, w2), (x, y) = _premise_labels(W.proof, W.labels)
    (s1,), (z,) = _premise_labels(S.proof, S.labels)
    k = 0 if isinstance(S.proof.rule, C.PlusLeft) else 1
    Wk = LP(W.proof.premises[k], (w1, w2)[k])
    wl = (x, y)[k]
    Sk = LP(S.proof.premises[0], s1)
    if left_is_with:
        return _gcut(Wk, Wk.labels.index(wl), Sk, s1.index(z))
    return _gcut(Sk, s1.index(z), Wk, Wk.labels.index(wl))


def _exponential(L: LP, q: int, R: LP, r: int, system: System):
    left_is_bang = isinstance(L.proof.rule, _PROMOTIONS)
    B, Q, bpos = (L, R, q) if left_is_bang else (R, L, r)
    brule, qrule = B.proof.rule, Q.proof.rule
    block = f"{brule.name}"
    if isinstance(qrule, (C.Dereliction, C.NDereliction)):
        if getattr(brule, "n", 1) != getattr(qrule, "n", 1):
            raise InternalFault("exponential block lengths differ")
        (bl,), (b,) = _premise_labels(B.proof, B.labels)
        (ql,), (c,) = _premise_labels(Q.proof, Q.labels)
        Bp = LP(B.proof.premises[0], bl)
        Qp = LP(Q.proof.premises[0], ql)
        kind = f"{block}-{qrule.name}"
        if left_is_bang:
            return _gcut(Bp, bl.index(b), Qp, ql.index(c)), kind
        return _gcut(Qp, ql.index(c), Bp, bl.index(b)), kind
    context = B.labels[:bpos] + B.labels[bpos + 1:]
    ctx_formulas = B.proof.conclusion[:bpos] + B.proof.conclusion[bpos + 1:]
    if isinstance(qrule, C.Weakening):
        (ql,), _ = _premise_labels(Q.proof, Q.labels)
        lp = LP(Q.proof.premises[0], ql)
        for label, f in zip(context, ctx_formulas):
            lp = LP(build(C.Weakening(len(lp.labels), f), [lp.proof]), lp.labels + (label,))
        return lp, f"{block}-weak"
    if isinstance(qrule, C.Contraction):
        (ql,), (c1, c2) = _premise_labels(Q.proof, Q.labels)
        Qp = LP(Q.proof.premises[0], ql)
        B1 = LP(B.proof, tuple((1, x) for x in B.labels))
        B2 = LP(B.proof, tuple((2, x) for x in B.labels))
        if left_is_bang:
            s1 = _gcut(B1, bpos, Qp, ql.index(c1))
            s2 = _gcut(B2, bpos, s1, s1.labels.index(c2))
        else:
            s1 = _gcut(Qp, ql.index(c1), B1, bpos)
            s2 = _gcut(s1, s1.labels.index(c2), B2, bpos)
        lp = s2
        for label in context:
            i = lp.labels.index((1, label))
            j = lp.labels.index((2, label))
            if j < i:
                lp = _move(lp, j, i)
                i -= 1
            else:
                lp = _move(lp, j, i + 1)
            lp = LP(
                build(C.Contraction(i), [lp.proof]),
                lp.labels[:i] + (label,) + lp.labels[i + 2:],
            )
        return lp, f"{block}-contr"
    raise InternalFault(f"no exponential case for {brule.name} against {qrule.name}")


# ------------------------------------------------------------------- steps


_CUT_L, _CUT_R = ("cut", "left"), ("cut", "right")


def _reduce(L: LP, q: int, R: LP, r: int, system: System):
    lrule, rrule = L.proof.rule, R.proof.rule
    if isinstance(lrule, C.Identity):
        other = L.labels[1 - q]
        return LP(R.proof, _replace(R.labels, R.labels[r], other)), "axiom-left"
    if isinstance(rrule, C.Identity):
        other = R.labels[1 - r]
        return LP(L.proof, _replace(L.labels, L.labels[q], other)), "axiom-right"
    if isinstance(lrule, C.Cut) or isinstance(rrule, C.Cut):
        raise InternalFault("reduction applied to a Cut that is not topmost")

    def cut_left(lp, i):
        return _gcut(lp, i, R, r)

    def cut_right(lp, j):
        return _gcut(L, q, lp, j)

    lp_ = _is_principal(L.proof, q)
    rp_ = _is_principal(R.proof, r)
    if not lp_ and not isinstance(lrule, _PROMOTIONS):
        return _commute(L, q, cut_left), f"commute-left:{lrule.name}"
    if not rp_ and not isinstance(rrule, _PROMOTIONS):
        return _commute(R, r, cut_right), f"commute-right:{rrule.name}"
    if not lp_:
        if not (rp_ and isinstance(rrule, _PROMOTIONS)):
            raise InternalFault(f"promotion context cut against {rrule.name}")
        return _commute(L, q, cut_left), f"commute-left:{lrule.name}"
    if not rp_:
        if not isinstance(lrule, _PROMOTIONS):
            raise InternalFault(f"promotion context cut against {lrule.name}")
        return _commute(R, r, cut_right), f"commute-right:{rrule.name}"

    a = L.proof.conclusion[q]
    if isinstance(a, (Tensor, Par)):
        return _multiplicative(L, q, R, r), "tensor-par"
    if isinstance(a, (With, Plus)):
        return _additive(L, q, R, r), "with-plus"
    return _exponential(L, q, R, r, system)


def reduce_cut(cut: Proof, system: System) -> tuple[Proof, str]:
    """Reduce a Cut node whose premises are cut-free; same conclusion."""
    left, right = cut.premises
    gamma = tuple(("g", k) for k in range(len(left.conclusion) - 1))
    delta = tuple(("d", k) for k in range(len(right.conclusion) - 1))
    L = _peel(LP(left, gamma + (_CUT_L,)))
    R = _peel(LP(right, (_CUT_R,) + delta))
    result, kind = _reduce(L, L.labels.index(_CUT_L), R, R.labels.index(_CUT_R), system)
    result = permute(result, gamma + delta)
    if result.proof.conclusion != cut.conclusion:
        raise InternalFault(f"{kind} changed the conclusion")
    return result.proof, kind


def topmost_cut(proof: Proof, path=()) -> Optional[tuple]:
    """Path of the leftmost Cut whose premises are cut-free."""
    for k, p in enumerate(proof.premises):
        found = topmost_cut(p, path + (k,))
        if found is not None:
            return found
    if isinstance(proof.rule, C.Cut):
        return path
    return None


def is_cut_free(proof: Proof) -> bool:
    return all(not isinstance(n.rule, C.Cut) for _, n in nodes(proof))


def _step(proof: Proof, system: System):
    path = topmost_cut(proof)
    if path is None:
        return None
    reduced, kind = reduce_cut(subproof(proof, path), system)
    return replace_at(proof, path, reduced), Step(kind, path)


def reduce_step(proof: Proof, system: System) -> Optional[Proof]:
    """One reduction of the leftmost topmost Cut, or None if cut-free."""
    check(proof, system)
    result = _step(proof, system)
    return None if result is None else result[0]


def reduce_step_traced(proof: Proof, system: System):
    """Like :func:`reduce_step` but returns ``(proof, Step)``; unchecked."""
    return _step(proof, system)


def normalize(proof: Proof, system: System, fuel: Optional[int] = None) -> ReductionTrace:
    check(proof, system)
    if fuel is None:
        fuel = 2 ** proof_size(proof)
    trace = ReductionTrace(final=proof)
    while True:
        result = _step(trace.final, system)
        if result is None:
            return trace
        if len(trace.steps) >= fuel:
            raise FuelExhausted(trace)
        trace.final, step = result
        trace.steps.append(step)


def replay(proof: Proof, steps, system: System) -> Proof:
    """Re-run recorded steps, checking that each one hits the recorded Cut."""
    for step in steps:
        path = topmost_cut(proof)
        if path != step.path:
            raise ValueError(f"trace expects a Cut at {step.path}, found {path}")
        reduced, kind = reduce_cut(subproof(proof, path), system)
        if kind != step.kind:
            raise ValueError(f"trace expects {step.kind}, got {kind}")
        proof = replace_at(proof, path, reduced)
    return proof
