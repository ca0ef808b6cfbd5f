"""Seeded random formulas, sequents and proofs for tests and batch runs.

Proofs are grown goal-first: ``gen(X)`` returns a proof of ``|- X, D`` for a
context ``D`` of its own choosing, which makes it easy to plant a Cut by
pairing ``gen(B)`` with ``gen(B^)``.
"""

from __future__ import annotations

import random
from typing import Optional

from . import calculus as C
from .calculus import IDLL, LL, Proof, System, build, move
from .syntax import (
    Bang,
    Formula,
    NegLit,
    Par,
    Plus,
    PosLit,
    Tensor,
    WhyNot,
    With,
    dual,
    modal_depth,
    modal_prefix,
    size,
)

BINARY = (Tensor, Par, With, Plus)


def random_formula(rng: random.Random, budget: int = 4, literals: int = 2, modal: bool = True) -> Formula:
    """A formula with at most ``budget`` connectives."""
    if budget <= 0 or rng.random() < 0.2:
        i = rng.randrange(literals)
        return PosLit(i) if rng.random() < 0.5 else NegLit(i)
    if modal and rng.random() < 0.3:
        body = random_formula(rng, budget - 1, literals, modal)
        return Bang(body) if rng.random() < 0.5 else WhyNot(body)
    left_budget = rng.randint(0, budget - 1)
    op = rng.choice(BINARY)
    return op(random_formula(rng, left_budget, literals, modal),
              random_formula(rng, budget - 1 - left_budget, literals, modal))


# ------------------------------------------------------------------- proofs


class _TooBig(Exception):
    pass


class ProofGenerator:
    """Random checked proofs in one system.

    ``cut_rate`` is the chance that a step plants a Cut on a context formula.
    """

    def __init__(self, rng: random.Random, system: System, literals: int = 2,
                 cut_rate: float = 0.25, max_nodes: int = 40):
        self.rng = rng
        self.system = system
        self.literals = literals
        self.cut_rate = cut_rate
        self.max_nodes = max_nodes
        self.idll = system.logic == "idll"

    # helpers -------------------------------------------------------------

    def _build(self, rule, premises) -> Proof:
        p = build(rule, premises, self.system)
        if C.proof_size(p) > self.max_nodes:
            raise _TooBig()
        return p

    def _move(self, p: Proof, src: int, dst: int) -> Proof:
        q = move(p, src, dst)
        if C.proof_size(q) > self.max_nodes:
            raise _TooBig()
        return q

    def _whynot_all(self, p: Proof, skip: int) -> Proof:
        """Derelict every non-? formula except the one at ``skip``."""
        for k, f in enumerate(p.conclusion):
            if k != skip and not isinstance(f, WhyNot):
                rule = C.NDereliction(k, 1) if self.idll else C.Dereliction(k)
                p = self._build(rule, [p])
        return p

    def _literal(self) -> Formula:
        i = self.rng.randrange(self.literals)
        return PosLit(i) if self.rng.random() < 0.5 else NegLit(i)

    # generation ----------------------------------------------------------

    def gen(self, x: Formula, depth: int = 0) -> Proof:
        """A proof of ``|- x, D`` for some ``D``."""
        p = self._gen(x, depth)
        if depth < 3 and len(p.conclusion) > 1 and self.rng.random() < self.cut_rate:
            p = self._plant_cut(p, depth)
        return p

    def _plant_cut(self, p: Proof, depth: int) -> Proof:
        k = self.rng.randrange(1, len(p.conclusion))
        d = p.conclusion[k]
        last = len(p.conclusion) - 1
        p = self._move(p, k, last)
        q = self.gen(dual(d), depth + 1)
        return self._build(C.Cut(d), [p, q])

    def _gen(self, x: Formula, depth: int) -> Proof:
        rng = self.rng
        if isinstance(x, (PosLit, NegLit)):
            p = self._build(C.Identity(x), [])
            if rng.random() < 0.15:
                p = self._build(C.Weakening(1, WhyNot(self._literal())), [p])
            return p
        if isinstance(x, WhyNot) and rng.random() < 0.2:
            p = self.gen(self._literal(), depth)
            return self._build(C.Weakening(0, x), [p])
        if isinstance(x, WhyNot) and rng.random() < 0.25:
            # two derivations of x joined by a Times on context formulas, then contracted
            first = self._gen(x, depth + 1)
            second = self._gen(x, depth + 1)
            second = self._move(second, 0, len(second.conclusion) - 1)
            p = self._build(C.TimesIntro(len(first.conclusion) - 1), [first, second])
            p = self._move(p, len(p.conclusion) - 1, 1)
            return self._build(C.Contraction(0), [p])
        if isinstance(x, Tensor):
            left = self.gen(x.left, depth)
            right = self.gen(x.right, depth)
            left = self._move(left, 0, len(left.conclusion) - 1)
            p = self._build(C.TimesIntro(len(left.conclusion) - 1), [left, right])
            p = self._move(p, len(left.conclusion) - 1, 0)
            return self._maybe_contract(p)
        if isinstance(x, Par):
            left = self.gen(x.left, depth)
            right = self.gen(x.right, depth)
            # join the two proofs through a Times on context formulas
            n = len(left.conclusion)
            right = self._move(right, 0, len(right.conclusion) - 1)
            p = self._build(C.TimesIntro(n - 1), [left, right])
            # conclusion: x.left, D1', d1*d2, D2', x.right
            p = self._move(p, len(p.conclusion) - 1, 1)
            p = self._build(C.ParIntro(0), [p])
            return self._maybe_contract(p)
        if isinstance(x, With):
            left = self.gen(x.left, depth)
            right = self.gen(x.right, depth)
            left = self._whynot_all(left, 0)
            right = self._whynot_all(right, 0)
            lc, rc = left.conclusion[1:], right.conclusion[1:]
            for f in rc:
                left = self._build(C.Weakening(len(left.conclusion), f), [left])
            for f in reversed(lc):
                right = self._build(C.Weakening(1, f), [right])
            return self._build(C.WithIntro(0), [left, right])
        if isinstance(x, Plus):
            if rng.random() < 0.5:
                return self._build(C.PlusLeft(0, x.right), [self.gen(x.left, depth)])
            return self._build(C.PlusRight(0, x.left), [self.gen(x.right, depth)])
        if isinstance(x, Bang):
            if self.idll:
                _, n, core = modal_prefix(x)
                p = self._whynot_all(self.gen(core, depth), 0)
                return self._build(C.NPromotion(0, n), [p])
            p = self._whynot_all(self.gen(x.body, depth), 0)
            return self._build(C.Promotion(0), [p])
        if isinstance(x, WhyNot):
            if self.idll:
                _, n, core = modal_prefix(x)
                return self._build(C.NDereliction(0, n), [self.gen(core, depth)])
            return self._build(C.Dereliction(0), [self.gen(x.body, depth)])
        raise TypeError(f"not a formula: {x!r}")

    def _maybe_contract(self, p: Proof) -> Proof:
        seq = p.conclusion
        for k in range(1, len(seq) - 1):
            if isinstance(seq[k], WhyNot) and seq[k] == seq[k + 1] and self.rng.random() < 0.7:
                return self._build(C.Contraction(k), [p])
        return p

    # public --------------------------------------------------------------

    def proof(self, budget: int = 3, tries: int = 200) -> Optional[Proof]:
        for _ in range(tries):
            x = random_formula(self.rng, budget, self.literals)
            try:
                return self.gen(x)
            except _TooBig:
                continue
        return None

    def cut_proof(self, budget: int = 3, tries: int = 200) -> Optional[Proof]:
        """A proof whose last rule is a Cut."""
        for _ in range(tries):
            b = random_formula(self.rng, budget, self.literals)
            try:
                left = self.gen(b)
                left = self._move(left, 0, len(left.conclusion) - 1)
                right = self.gen(dual(b))
                return self._build(C.Cut(b), [left, right])
            except _TooBig:
                continue
        return None


def cut_corpus(seed: int = 0, count: int = 120, max_nodes: int = 40) -> list[tuple[Proof, System]]:
    """Checked proofs containing Cuts, alternating between IdLL and LL."""
    rng = random.Random(seed)
    out = []
    gens = {
        "idll": ProofGenerator(rng, IDLL, max_nodes=max_nodes),
        "ll": ProofGenerator(rng, LL, max_nodes=max_nodes),
    }
    systems = {"idll": IDLL, "ll": LL}
    k = 0
    while len(out) < count:
        logic = "idll" if k % 2 == 0 else "ll"
        k += 1
        p = gens[logic].cut_proof(budget=rng.randint(1, 4))
        if p is None:
            continue
        C.check(p, systems[logic])
        out.append((p, systems[logic]))
    return out


def sequent_corpus(seed: int = 0, count: int = 50, max_size: int = 8, max_depth: int = 2) -> list[tuple]:
    """Sequents of bounded size and exponential depth: half conclusions of
    generated cut-free proofs, half random lists of formulas."""
    rng = random.Random(seed)
    out: list[tuple] = []
    seen = set()
    gen = ProofGenerator(rng, LL, cut_rate=0.0, max_nodes=40)

    def ok(seq) -> bool:
        return (sum(size(f) for f in seq) <= max_size
                and all(modal_depth(f) <= max_depth for f in seq)
                and seq not in seen)

    while len(out) < count:
        if len(out) % 2 == 0:
            p = gen.proof(budget=rng.randint(1, 3))
            seq = p.conclusion if p is not None else None
        else:
            seq = tuple(random_formula(rng, rng.randint(0, 3), 2) for _ in range(rng.randint(1, 3)))
        if seq and ok(seq):
            seen.add(seq)
            out.append(seq)
    return out
