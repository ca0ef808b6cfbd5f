"""One-sided sequent calculus for LL and IdLL, with a local proof checker.

A proof is a tree of :class:`Proof` nodes.  Each node records its rule (with
the parameters that fix the rule instance) and its conclusion; the checker
recomputes every conclusion from the premises and compares.

Principal formulas sit at an explicit position ``at`` in the conclusion and
the active formulas occupy the same place in the premise.  Only Identity,
Cut and Times are positionally rigid:

* ``Cut``: ``|- G, A`` and ``|- A^, D`` give ``|- G, D``;
* ``TimesIntro``: ``|- G, A`` and ``|- B, D`` give ``|- G, A * B, D``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import ClassVar, Optional

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
    print_formula,
    print_sequent,
    bangs,
    whynots,
)

ARITY = "arity"
CONTEXT = "context-mismatch"
SIDE = "side-condition"
SYSTEM = "wrong-system"
FORMULA = "formula-mismatch"
POSITION = "bad-position"
PARAMETER = "bad-parameter"
CONCLUSION = "conclusion-mismatch"


@dataclass(frozen=True)
class System:
    logic: str = "idll"  # "ll" | "idll"
    axiom_mode: str = "general"  # "general" | "atomic"

    def __post_init__(self):
        if self.logic not in ("ll", "idll"):
            raise ValueError(f"unknown logic {self.logic!r}")
        if self.axiom_mode not in ("general", "atomic"):
            raise ValueError(f"unknown axiom mode {self.axiom_mode!r}")

    def atomic(self) -> "System":
        return System(self.logic, "atomic")


LL = System("ll")
IDLL = System("idll")


# ------------------------------------------------------------------- rules


class Rule:
    name: ClassVar[str]
    arity: ClassVar[int] = 1
    logic: ClassVar[Optional[str]] = None  # None: shared by both systems


@dataclass(frozen=True)
class Identity(Rule):
    formula: Formula
    name = "id"
    arity = 0


@dataclass(frozen=True)
class Cut(Rule):
    formula: Formula
    name = "cut"
    arity = 2


@dataclass(frozen=True)
class Exchange(Rule):
    i: int
    j: int
    name = "ex"


@dataclass(frozen=True)
class TimesIntro(Rule):
    split: int
    name = "times"
    arity = 2


@dataclass(frozen=True)
class ParIntro(Rule):
    at: int
    name = "par"


@dataclass(frozen=True)
class WithIntro(Rule):
    at: int
    name = "with"
    arity = 2


@dataclass(frozen=True)
class PlusLeft(Rule):
    at: int
    other: Formula
    name = "plusl"


@dataclass(frozen=True)
class PlusRight(Rule):
    at: int
    other: Formula
    name = "plusr"


@dataclass(frozen=True)
class Contraction(Rule):
    at: int
    name = "contr"


@dataclass(frozen=True)
class Weakening(Rule):
    at: int
    introduced: Formula
    name = "weak"


@dataclass(frozen=True)
class Dereliction(Rule):
    at: int
    name = "der"
    logic = "ll"


@dataclass(frozen=True)
class Promotion(Rule):
    at: int
    name = "prom"
    logic = "ll"


@dataclass(frozen=True)
class NDereliction(Rule):
    at: int
    n: int
    name = "nder"
    logic = "idll"


@dataclass(frozen=True)
class NPromotion(Rule):
    at: int
    n: int
    name = "nprom"
    logic = "idll"


RULES = {
    cls.name: cls
    for cls in (
        Identity, Cut, Exchange, TimesIntro, ParIntro, WithIntro, PlusLeft,
        PlusRight, Contraction, Weakening, Dereliction, Promotion,
        NDereliction, NPromotion,
    )
}


# ------------------------------------------------------------------ proofs


@dataclass(frozen=True)
class Proof:
    rule: Rule
    conclusion: tuple
    premises: tuple = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(
            self, "_hash", hash((self.rule, self.conclusion, self.premises))
        )

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Proof) or self._hash != other._hash:
            return False
        return (
            self.rule == other.rule
            and self.conclusion == other.conclusion
            and self.premises == other.premises
        )

    def __str__(self):
        return print_sequent(self.conclusion)


class RuleError(Exception):
    """A node that does not instantiate a rule of the system."""

    def __init__(self, reason: str, message: str, path: tuple = (), rule: str = ""):
        self.reason = reason
        self.message = message
        self.path = tuple(path)
        self.rule = rule
        where = ".".join(map(str, self.path)) or "root"
        super().__init__(f"{rule or '?'} at {where}: {reason}: {message}")

    def at(self, path, rule) -> "RuleError":
        return RuleError(self.reason, self.message, path, rule)


def _pos(seq, at, rule, width=1):
    if not (0 <= at and at + width <= len(seq)):
        raise RuleError(POSITION, f"position {at} outside a sequent of length {len(seq)}", rule=rule)


def _all_whynot(ctx) -> bool:
    return all(isinstance(f, WhyNot) for f in ctx)


def conclude(rule: Rule, premises: tuple, system: Optional[System] = None) -> tuple:
    """Conclusion of ``rule`` applied to the premise sequents ``premises``.

    Raises :class:`RuleError` (without a path) when the instance is invalid.
    """
    name = rule.name
    if len(premises) != rule.arity:
        raise RuleError(ARITY, f"expected {rule.arity} premises, got {len(premises)}", rule=name)
    if system is not None and rule.logic is not None and rule.logic != system.logic:
        raise RuleError(SYSTEM, f"rule {name} is not a rule of {system.logic.upper()}", rule=name)

    if isinstance(rule, Identity):
        if system is not None and system.axiom_mode == "atomic" and not is_literal(rule.formula):
            raise RuleError(SIDE, "atomic axiom mode admits literal identities only", rule=name)
        return (rule.formula, dual(rule.formula))

    if isinstance(rule, Cut):
        left, right = premises
        if not left or left[-1] != rule.formula:
            raise RuleError(FORMULA, f"left premise does not end with {print_formula(rule.formula)}", rule=name)
        if not right or right[0] != dual(rule.formula):
            raise RuleError(FORMULA, f"right premise does not start with {print_formula(dual(rule.formula))}", rule=name)
        return left[:-1] + right[1:]

    if isinstance(rule, TimesIntro):
        left, right = premises
        if not left or not right:
            raise RuleError(ARITY, "Times needs nonempty premises", rule=name)
        if rule.split != len(left) - 1:
            raise RuleError(POSITION, f"split {rule.split} does not match left context length {len(left) - 1}", rule=name)
        return left[:-1] + (Tensor(left[-1], right[0]),) + right[1:]

    if isinstance(rule, WithIntro):
        left, right = premises
        _pos(left, rule.at, name)
        if len(left) != len(right) or left[:rule.at] + left[rule.at + 1:] != right[:rule.at] + right[rule.at + 1:]:
            raise RuleError(CONTEXT, "With premises must share their context", rule=name)
        return left[:rule.at] + (With(left[rule.at], right[rule.at]),) + left[rule.at + 1:]

    (seq,) = premises

    if isinstance(rule, Exchange):
        i, j = sorted((rule.i, rule.j))
        if j - i != 1:
            raise RuleError(PARAMETER, "Exchange swaps adjacent positions only", rule=name)
        _pos(seq, i, name, 2)
        return seq[:i] + (seq[j], seq[i]) + seq[j + 1:]

    if isinstance(rule, ParIntro):
        _pos(seq, rule.at, name, 2)
        return seq[:rule.at] + (Par(seq[rule.at], seq[rule.at + 1]),) + seq[rule.at + 2:]

    if isinstance(rule, (PlusLeft, PlusRight)):
        _pos(seq, rule.at, name)
        a = seq[rule.at]
        f = Plus(a, rule.other) if isinstance(rule, PlusLeft) else Plus(rule.other, a)
        return seq[:rule.at] + (f,) + seq[rule.at + 1:]

    if isinstance(rule, Contraction):
        _pos(seq, rule.at, name, 2)
        a, b = seq[rule.at], seq[rule.at + 1]
        if a != b:
            raise RuleError(FORMULA, "contracted formulas differ", rule=name)
        if not isinstance(a, WhyNot):
            raise RuleError(SIDE, "only ?-formulas can be contracted", rule=name)
        return seq[:rule.at + 1] + seq[rule.at + 2:]

    if isinstance(rule, Weakening):
        if not 0 <= rule.at <= len(seq):
            raise RuleError(POSITION, f"position {rule.at} outside a sequent of length {len(seq)}", rule=name)
        if not isinstance(rule.introduced, WhyNot):
            raise RuleError(SIDE, "only ?-formulas can be weakened", rule=name)
        return seq[:rule.at] + (rule.introduced,) + seq[rule.at:]

    if isinstance(rule, (Dereliction, NDereliction)):
        _pos(seq, rule.at, name)
        a = seq[rule.at]
        n = getattr(rule, "n", 1)
        if n < 1:
            raise RuleError(PARAMETER, "n must be positive", rule=name)
        if isinstance(rule, NDereliction) and isinstance(a, WhyNot):
            raise RuleError(SIDE, "n-Dereliction needs a formula whose main connective is not ?", rule=name)
        return seq[:rule.at] + (whynots(n, a),) + seq[rule.at + 1:]

    if isinstance(rule, (Promotion, NPromotion)):
        _pos(seq, rule.at, name)
        a = seq[rule.at]
        n = getattr(rule, "n", 1)
        if n < 1:
            raise RuleError(PARAMETER, "n must be positive", rule=name)
        if isinstance(rule, NPromotion) and isinstance(a, Bang):
            raise RuleError(SIDE, "n-Promotion needs a formula whose main connective is not !", rule=name)
        if not _all_whynot(seq[:rule.at] + seq[rule.at + 1:]):
            raise RuleError(CONTEXT, "promotion context must consist of ?-formulas", rule=name)
        return seq[:rule.at] + (bangs(n, a),) + seq[rule.at + 1:]

    raise TypeError(f"unknown rule {rule!r}")


def build(rule: Rule, premises=(), system: Optional[System] = None) -> Proof:
    """New proof node; its conclusion is computed from the premises."""
    premises = tuple(premises)
    try:
        concl = conclude(rule, tuple(p.conclusion for p in premises), system)
    except RuleError as e:
        raise e.at((), rule.name) from None
    return Proof(rule, concl, premises)


def check(proof: Proof, system: System) -> None:
    """Raise :class:`RuleError` at the first (pre-order) bad node."""
    seen: set[int] = set()
    stack = [(proof, ())]
    while stack:
        node, path = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        rule = node.rule
        try:
            concl = conclude(rule, tuple(p.conclusion for p in node.premises), system)
        except RuleError as e:
            raise e.at(path, rule.name) from None
        if concl != tuple(node.conclusion):
            raise RuleError(
                CONCLUSION,
                f"expected {print_sequent(concl)}, node says {print_sequent(node.conclusion)}",
                path,
                rule.name,
            )
        for k in reversed(range(len(node.premises))):
            stack.append((node.premises[k], path + (k,)))


def is_valid(proof: Proof, system: System) -> bool:
    try:
        check(proof, system)
    except RuleError:
        return False
    return True


def sequent_multiset(seq) -> Counter:
    return Counter(seq)


# --------------------------------------------------------------- utilities


def proof_size(proof: Proof) -> int:
    return 1 + sum(proof_size(p) for p in proof.premises)


def nodes(proof: Proof, path=()):
    """Pre-order ``(path, node)`` pairs."""
    yield path, proof
    for k, p in enumerate(proof.premises):
        yield from nodes(p, path + (k,))


def subproof(proof: Proof, path) -> Proof:
    for k in path:
        proof = proof.premises[k]
    return proof


def replace_at(proof: Proof, path, new: Proof) -> Proof:
    if not path:
        return new
    k = path[0]
    premises = list(proof.premises)
    premises[k] = replace_at(premises[k], path[1:], new)
    return Proof(proof.rule, proof.conclusion, tuple(premises))


def rules_used(proof: Proof) -> set:
    return {node.rule.name for _, node in nodes(proof)}


def principal_formula(proof: Proof) -> Optional[Formula]:
    rule = proof.rule
    if isinstance(rule, (Identity, Cut)):
        return rule.formula
    if isinstance(rule, TimesIntro):
        return proof.conclusion[rule.split]
    if isinstance(rule, Exchange):
        return None
    return proof.conclusion[rule.at]


def exchange_normal_form(proof: Proof):
    """Position-free shape of a proof with Exchange nodes deleted.

    Two proofs that differ only by Exchange steps and by where formulas sit
    in their sequents have equal normal forms.
    """
    rule = proof.rule
    if isinstance(rule, Exchange):
        return exchange_normal_form(proof.premises[0])
    principal = principal_formula(proof)
    return (
        rule.name,
        getattr(rule, "n", None),
        print_formula(principal) if principal is not None else None,
        tuple(sorted(print_formula(f) for f in proof.conclusion)),
        tuple(exchange_normal_form(p) for p in proof.premises),
    )


def move(proof: Proof, src: int, dst: int) -> Proof:
    """Move the formula at ``src`` to ``dst`` by adjacent exchanges."""
    while src < dst:
        proof = build(Exchange(src, src + 1), [proof])
        src += 1
    while src > dst:
        proof = build(Exchange(src - 1, src), [proof])
        src -= 1
    return proof


def permute_to(proof: Proof, target) -> Proof:
    """Reorder the conclusion into ``target`` (a permutation of it).

    Equal formulas keep their relative order.
    """
    target = tuple(target)
    if Counter(proof.conclusion) != Counter(target):
        raise ValueError("target is not a permutation of the conclusion")
    for k, f in enumerate(target):
        proof = move(proof, proof.conclusion.index(f, k), k)
    return proof
