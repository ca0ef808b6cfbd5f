"""Proofs as total relations between totality spaces.

A sequent ``|- A1, ..., Ak`` is read as the par of its formulas, and a proof
denotes a set of k-tuples over the bases ``|A1| x ... x |Ak|``.  Formula
bases: literals take the base of their assigned space, ``|A*B| = |A@B|`` are
pairs, ``|A&B| = |A+B|`` are tagged atoms ``(0, a)``/``(1, b)``, ``|!A|`` is the
set of total sets of ``A`` and ``|?A|`` the set of its cototal sets.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import calculus as C
from . import totspace as T
from .syntax import Bang, Formula, NegLit, Par, Plus, PosLit, Tensor, WhyNot, With, dual as fdual, literals, print_sequent

SEM_CAP = 1024


class UnassignedLiteral(KeyError):
    pass


class TotalityViolation(AssertionError):
    """A computed denotation is not total: a bug in a semantic clause."""


@dataclass(frozen=True)
class Environment:
    """Assignment of a totality space to each positive literal index."""

    assignment: tuple = ()

    @classmethod
    def of(cls, mapping: Mapping[int, T.TotSpace]) -> "Environment":
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, index: int) -> T.TotSpace:
        for k, a in self.assignment:
            if k == index:
                return a
        raise UnassignedLiteral(f"literal p{index} has no space in the environment")

    def indices(self) -> list[int]:
        return [k for k, _ in self.assignment]


def discrete_env(indices: Iterable[int], size: int, labels: str = "abcdefgh") -> Environment:
    return Environment.of({i: T.dis(labels[:size]) for i in indices})


@functools.lru_cache(maxsize=4096)
def eval_formula(f: Formula, env: Environment, cap: int = SEM_CAP) -> T.TotSpace:
    if isinstance(f, PosLit):
        return env[f.index]
    if isinstance(f, NegLit):
        return T.dual(env[f.index], cap)
    if isinstance(f, Tensor):
        return T.tensor(eval_formula(f.left, env, cap), eval_formula(f.right, env, cap), cap)
    if isinstance(f, Par):
        return T.par(eval_formula(f.left, env, cap), eval_formula(f.right, env, cap), cap)
    if isinstance(f, With):
        return T.with_(eval_formula(f.left, env, cap), eval_formula(f.right, env, cap), cap)
    if isinstance(f, Plus):
        return T.plus(eval_formula(f.left, env, cap), eval_formula(f.right, env, cap), cap)
    if isinstance(f, Bang):
        return T.bang(eval_formula(f.body, env, cap), cap)
    if isinstance(f, WhyNot):
        return T.whynot(eval_formula(f.body, env, cap), cap, cap)
    raise TypeError(f"not a formula: {f!r}")


def cototals(f: Formula, env: Environment, cap: int = SEM_CAP) -> frozenset:
    return T.dual(eval_formula(f, env, cap), cap).totals


@dataclass(frozen=True)
class Denotation:
    formulas: tuple
    spaces: tuple
    value: frozenset = field(compare=True)

    def sorted_value(self) -> list:
        return sorted(self.value, key=T.atom_key)

    def is_total(self, env: Environment, cap: int = SEM_CAP) -> bool:
        return is_total_relation(self.value, self.formulas, env, cap)


def is_total_relation(value: frozenset, formulas: tuple, env: Environment, cap: int = SEM_CAP) -> bool:
    """Total in the par of ``formulas``: every product of cototal sets meets ``value`` once.

    One coordinate (the one with most cototal sets) is not enumerated.  For a
    fixed choice of cototal sets on the other coordinates, the matching
    tuples must put a total set of that formula's space in the free
    coordinate, repeating only atoms that lie in no cototal set.  Since
    every space here equals its bidual, this is the same condition.
    """
    if not formulas:
        return value == frozenset([()])
    cos = [list(cototals(f, env, cap)) for f in formulas]
    free = max(range(len(formulas)), key=lambda i: len(cos[i]))
    space = eval_formula(formulas[free], env, cap)
    covered = frozenset().union(*cos[free])
    others = [i for i in range(len(formulas)) if i != free]
    containing = []
    for i in others:
        index: dict = {}
        for k, c in enumerate(cos[i]):
            for x in c:
                index.setdefault(x, []).append(k)
        containing.append(index)
    buckets: dict = {}
    for t in value:
        choices = [containing[j].get(t[i], ()) for j, i in enumerate(others)]
        for combo in itertools.product(*choices):
            buckets.setdefault(combo, []).append(t[free])
    expected = 1
    for i in others:
        expected *= len(cos[i])
    if len(buckets) != expected and frozenset() not in space.totals:
        return False
    for hits in buckets.values():
        s = frozenset(hits)
        if s not in space.totals:
            return False
        if len(s) != len(hits) and any(hits.count(x) > 1 for x in s & covered):
            return False
    return True


# ------------------------------------------------------------------ clauses


def _insert(t: tuple, k: int, x) -> tuple:
    return t[:k] + (x,) + t[k:]


def _replace(t: tuple, k: int, x) -> tuple:
    return t[:k] + (x,) + t[k + 1:]


def _compose(v1: frozenset, v2: frozenset) -> frozenset:
    by_head: dict = {}
    for t in v2:
        by_head.setdefault(t[0], []).append(t[1:])
    return frozenset(g[:-1] + d for g in v1 for d in by_head.get(g[-1], ()))


def _derelict(v: frozenset, at: int, body: Formula, n: int, env: Environment, cap: int) -> frozenset:
    cos = cototals(body, env, cap)
    out = set()
    for t in v:
        for c in cos:
            if t[at] in c:
                out.add(_replace(t, at, c))
    for _ in range(n - 1):
        out = {_replace(t, at, frozenset([t[at]])) for t in out}
    return frozenset(out)


def _promote(v: frozenset, at: int, seq: tuple, n: int, env: Environment, cap: int) -> frozenset:
    context = [k for k in range(len(seq)) if k != at]
    slices: dict = {}
    for t in v:
        key = tuple(t[k] for k in context)
        slices.setdefault(key, set()).add(t[at])
    bases = [sorted(eval_formula(seq[k], env, cap).base, key=T.atom_key) for k in context]
    out = set()
    for key in itertools.product(*bases):
        s = frozenset(slices.get(key, ()))
        for _ in range(n - 1):
            s = frozenset([s])
        t = list(key)
        t.insert(at, s)
        out.add(tuple(t))
    return frozenset(out)


def _value(proof: C.Proof, env: Environment, cap: int, memo: dict) -> frozenset:
    hit = memo.get(id(proof))
    if hit is not None:
        return hit[1]
    rule = proof.rule
    vs = [_value(p, env, cap, memo) for p in proof.premises]
    seqs = [p.conclusion for p in proof.premises]

    if isinstance(rule, C.Identity):
        v = frozenset((a, a) for a in eval_formula(rule.formula, env, cap).base)
    elif isinstance(rule, C.Cut):
        v = _compose(vs[0], vs[1])
    elif isinstance(rule, C.Exchange):
        i, j = rule.i, rule.j
        v = frozenset(t[:min(i, j)] + (t[max(i, j)], t[min(i, j)]) + t[max(i, j) + 1:] for t in vs[0])
    elif isinstance(rule, C.TimesIntro):
        v = frozenset(g[:-1] + ((g[-1], d[0]),) + d[1:] for g in vs[0] for d in vs[1])
    elif isinstance(rule, C.ParIntro):
        k = rule.at
        v = frozenset(t[:k] + ((t[k], t[k + 1]),) + t[k + 2:] for t in vs[0])
    elif isinstance(rule, C.WithIntro):
        k = rule.at
        v = frozenset(_replace(t, k, (0, t[k])) for t in vs[0]) | frozenset(_replace(t, k, (1, t[k])) for t in vs[1])
    elif isinstance(rule, (C.PlusLeft, C.PlusRight)):
        tag = 0 if isinstance(rule, C.PlusLeft) else 1
        v = frozenset(_replace(t, rule.at, (tag, t[rule.at])) for t in vs[0])
    elif isinstance(rule, C.Weakening):
        base = eval_formula(rule.introduced, env, cap).base
        v = frozenset(_insert(t, rule.at, c) for t in vs[0] for c in base)
    elif isinstance(rule, C.Contraction):
        k = rule.at
        v = frozenset(t[:k + 1] + t[k + 2:] for t in vs[0] if t[k] == t[k + 1])
    elif isinstance(rule, (C.Dereliction, C.NDereliction)):
        v = _derelict(vs[0], rule.at, seqs[0][rule.at], getattr(rule, "n", 1), env, cap)
    elif isinstance(rule, (C.Promotion, C.NPromotion)):
        v = _promote(vs[0], rule.at, seqs[0], getattr(rule, "n", 1), env, cap)
    else:
        raise TypeError(f"no clause for rule {rule.name}")
    memo[id(proof)] = (proof, v)
    return v


def interpret(proof: C.Proof, env: Environment, cap: int = SEM_CAP, check_totality: bool = True) -> Denotation:
    """Denotation of a checked proof; raises :class:`TotalityViolation` if not total."""
    missing = {i for f in proof.conclusion for i in literals(f)} - set(env.indices())
    for _, node in C.nodes(proof):
        for f in node.conclusion:
            missing |= set(literals(f)) - set(env.indices())
    if missing:
        raise UnassignedLiteral(f"literals {sorted(missing)} have no space in the environment")
    value = _value(proof, env, cap, {})
    formulas = tuple(proof.conclusion)
    den = Denotation(formulas, tuple(eval_formula(f, env, cap) for f in formulas), value)
    if check_totality and not den.is_total(env, cap):
        raise TotalityViolation(f"denotation of {print_sequent(formulas)} is not total")
    return den


def compose_denotations(left: Denotation, right: Denotation) -> frozenset:
    """Relational composition on the last coordinate of ``left`` and the first of ``right``."""
    return _compose(left.value, right.value)


# ---------------------------------------------------------------- soundness


@dataclass(frozen=True)
class SoundnessFailure:
    proof_index: int
    env_index: int
    step: int
    kind: str
    message: str


@dataclass(frozen=True)
class SoundnessReport:
    proofs: int
    environments: int
    denotations: int
    steps: int
    failures: tuple

    @property
    def passed(self) -> bool:
        return not self.failures


def soundness_suite(corpus: list, envs: list, system_of=None, cap: int = SEM_CAP, fuel: Optional[int] = None) -> SoundnessReport:
    """Totality of every denotation and invariance under every reduction step.

    ``corpus`` holds pairs ``(proof, system)``.
    """
    from .cutelim import reduce_step

    failures = []
    denotations = steps = 0
    for pi, (proof, system) in enumerate(corpus):
        chain = [proof]
        current = proof
        budget = fuel if fuel is not None else 2 ** C.proof_size(proof)
        while budget > 0:
            nxt = reduce_step(current, system)
            if nxt is None:
                break
            chain.append(nxt)
            current = nxt
            budget -= 1
        for ei, env in enumerate(envs):
            previous = None
            for si, p in enumerate(chain):
                try:
                    den = interpret(p, env, cap)
                except TotalityViolation as e:
                    failures.append(SoundnessFailure(pi, ei, si, "totality", str(e)))
                    break
                denotations += 1
                if previous is not None:
                    steps += 1
                    if den.value != previous.value:
                        failures.append(SoundnessFailure(pi, ei, si, "invariance",
                                                         "denotation changed by a reduction step"))
                        break
                previous = den
    return SoundnessReport(len(corpus), len(envs), denotations, steps, tuple(failures))


def parse_environment(text: str, cap: int = T.BASE_CAP) -> Environment:
    """Read an environment description, one literal per line::

        p0 dis a b c
        p1 space a b | a | b

    ``space`` lists the base, then each total set after a ``|``.
    """
    mapping = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split(None, 2)
        if not head.startswith("p") or not head[1:].isdigit():
            raise ValueError(f"line {lineno}: expected a literal name like p0, found {head!r}")
        if not rest:
            raise ValueError(f"line {lineno}: missing space kind")
        kind = rest[0]
        body = rest[1] if len(rest) > 1 else ""
        if kind == "dis":
            a = T.dis(body.split())
        elif kind == "space":
            parts = body.split("|")
            base = parts[0].split()
            totals = [p.split() for p in parts[1:]]
            for t in totals:
                bad = [x for x in t if x not in base]
                if bad:
                    raise ValueError(f"line {lineno}: atoms {bad} not in the base")
            try:
                a = T.make_space(base, totals, cap)
            except T.NotATotalitySpace:
                raise ValueError(f"line {lineno}: the given total sets are not biclosed") from None
        else:
            raise ValueError(f"line {lineno}: unknown space kind {kind!r} (expected dis or space)")
        index = int(head[1:])
        if index in mapping:
            raise ValueError(f"line {lineno}: p{index} assigned twice")
        mapping[index] = a
    return Environment.of(mapping)
