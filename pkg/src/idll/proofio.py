"""Reading and writing proofs as s-expressions.

One node per form::

    (rule-name :param value ... "|- conclusion" premise ...)

e.g. ``(nprom :n 2 "|- ??p0^, !!p0" (nder :n 2 "|- ??p0^, p0" (id "|- p0^, p0")))``.
Parameters that can be read off the conclusion and premises may be omitted.
"""

from __future__ import annotations

import re

from . import calculus as C
from .syntax import (
    ParseError,
    modal_prefix,
    parse_formula,
    parse_sequent,
    print_formula,
    print_sequent,
)


class ProofFormatError(ValueError):
    pass


_TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


def _tokens(text: str):
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ProofFormatError(f"unreadable input at offset {pos}")
            return
        pos = m.end()
        comment, lp, rp, string, atom = m.groups()
        if comment is not None:
            continue
        if lp:
            yield "(", m.start(2)
        elif rp:
            yield ")", m.start(3)
        elif string is not None:
            yield ("str", string.replace('\\"', '"')), m.start(4)
        else:
            yield ("atom", atom), m.start(5)


def read_sexprs(text: str) -> list:
    """All top-level forms of ``text`` as nested lists."""
    stack: list[list] = [[]]
    for tok, offset in _tokens(text):
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if len(stack) == 1:
                raise ProofFormatError(f"unbalanced ')' at offset {offset}")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(tok)
    if len(stack) != 1:
        raise ProofFormatError("unclosed '('")
    return stack[0]


def _first_difference(a, b) -> int:
    for k, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return k
    return min(len(a), len(b))


def _infer(name, params, concl, prem):
    """Fill in omitted parameters from the node's sequents."""
    p0 = prem[0].conclusion if prem else ()
    if name == "id":
        if "formula" not in params:
            if len(concl) < 1:
                raise ProofFormatError("id node without a conclusion formula")
            params["formula"] = concl[0]
        return C.Identity(params["formula"])
    if name == "cut":
        if "formula" not in params:
            if not p0:
                raise ProofFormatError("cut: cannot infer the cut formula")
            params["formula"] = p0[-1]
        return C.Cut(params["formula"])
    if name == "times":
        return C.TimesIntro(params.get("split", len(p0) - 1))
    if name == "ex":
        i = params.get("i", _first_difference(p0, concl))
        return C.Exchange(i, params.get("j", i + 1))
    at = params.get("at")
    if at is None:
        at = _first_difference(p0, concl)
        if name in ("der", "prom", "nder", "nprom", "plusl", "plusr") and at >= len(concl):
            at = len(concl) - 1
    target = concl[at] if 0 <= at < len(concl) else None
    if name == "par":
        return C.ParIntro(at)
    if name == "with":
        return C.WithIntro(at)
    if name in ("plusl", "plusr"):
        other = params.get("other")
        if other is None and target is not None:
            other = getattr(target, "right" if name == "plusl" else "left", None)
        if other is None:
            raise ProofFormatError(f"{name}: cannot infer the other disjunct")
        return (C.PlusLeft if name == "plusl" else C.PlusRight)(at, other)
    if name == "contr":
        return C.Contraction(at)
    if name == "weak":
        introduced = params.get("formula", target)
        if introduced is None:
            raise ProofFormatError("weak: cannot infer the introduced formula")
        return C.Weakening(at, introduced)
    if name == "der":
        return C.Dereliction(at)
    if name == "prom":
        return C.Promotion(at)
    if name in ("nder", "nprom"):
        n = params.get("n")
        if n is None:
            n = modal_prefix(target)[1] if target is not None else 1
        return (C.NDereliction if name == "nder" else C.NPromotion)(at, n)
    raise ProofFormatError(f"unknown rule {name!r}")


def _to_proof(form) -> C.Proof:
    if not isinstance(form, list) or not form or form[0][0] != "atom":
        raise ProofFormatError(f"expected a proof node, found {form!r}")
    name = form[0][1]
    if name not in C.RULES:
        raise ProofFormatError(f"unknown rule {name!r}")
    rest = form[1:]
    params: dict = {}
    while rest and not isinstance(rest[0], list) and rest[0][0] == "atom" and rest[0][1].startswith(":"):
        key = rest[0][1][1:]
        if len(rest) < 2 or isinstance(rest[1], list):
            raise ProofFormatError(f"{name}: missing value for :{key}")
        kind, value = rest[1]
        try:
            if key in ("formula", "other"):
                params[key] = parse_formula(value)
            else:
                params[key] = int(value)
        except (ValueError, ParseError) as e:
            raise ProofFormatError(f"{name}: bad value for :{key}: {e}") from None
        rest = rest[2:]
    if not rest or isinstance(rest[0], list) or rest[0][0] != "str":
        raise ProofFormatError(f"{name}: missing conclusion string")
    try:
        concl = parse_sequent(rest[0][1])
    except ParseError as e:
        raise ProofFormatError(f"{name}: bad conclusion {rest[0][1]!r}: {e}") from None
    premises = tuple(_to_proof(sub) for sub in rest[1:])
    rule = _infer(name, params, concl, premises)
    return C.Proof(rule, concl, premises)


def parse_proof(text: str) -> C.Proof:
    forms = read_sexprs(text)
    if len(forms) != 1:
        raise ProofFormatError(f"expected exactly one proof, found {len(forms)} forms")
    return _to_proof(forms[0])


def parse_proofs(text: str) -> list[C.Proof]:
    return [_to_proof(form) for form in read_sexprs(text)]


def _params(rule: C.Rule) -> str:
    parts = []
    if isinstance(rule, C.Cut):
        parts.append(f':formula "{print_formula(rule.formula)}"')
    elif isinstance(rule, C.Exchange):
        parts.append(f":i {rule.i} :j {rule.j}")
    elif isinstance(rule, C.TimesIntro):
        parts.append(f":split {rule.split}")
    elif not isinstance(rule, C.Identity):
        parts.append(f":at {rule.at}")
    if isinstance(rule, (C.NDereliction, C.NPromotion)):
        parts.append(f":n {rule.n}")
    if isinstance(rule, (C.PlusLeft, C.PlusRight)):
        parts.append(f':other "{print_formula(rule.other)}"')
    return "".join(" " + p for p in parts)


def print_proof(proof: C.Proof, indent: int = 0) -> str:
    head = f'{" " * indent}({proof.rule.name}{_params(proof.rule)} "{print_sequent(proof.conclusion)}"'
    if not proof.premises:
        return head + ")"
    subs = "\n".join(print_proof(p, indent + 2) for p in proof.premises)
    return f"{head}\n{subs})"
