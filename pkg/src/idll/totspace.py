"""Finite totality spaces and the exponential ``!A`` on them.

A pre-totality space is a finite base together with a family of *total*
subsets.  Its dual keeps the base and takes as totals every subset meeting
each total set in exactly one point; a totality space equals its bidual.

Atoms are arbitrary hashable labels.  Constructions use structured labels:
pairs ``(a, b)`` for the tensor and par, tagged atoms ``(0, a)``/``(1, b)``
for with/plus, and frozensets (total sets of ``A``) for the base of ``!A``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, NamedTuple, Optional

BASE_CAP = 16
BANG_CAP = 12
STAR = "*"


class CapExceeded(ValueError):
    pass


class NotATotalitySpace(ValueError):
    """Raised by :func:`make_space`; carries the totals of the bidual."""

    def __init__(self, bidual_totals):
        self.bidual = bidual_totals
        super().__init__(f"totals are not biclosed; the bidual has {len(bidual_totals)} total sets")


class NotAMorphism(ValueError):
    pass


def atom_key(x):
    """Deterministic sort key for mixed atom labels."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, int):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(atom_key(y) for y in x))
    if isinstance(x, frozenset):
        return (3, tuple(sorted(atom_key(y) for y in x)))
    return (4, repr(x))


def set_key(s):
    return (len(s), sorted(atom_key(x) for x in s))


@dataclass(frozen=True)
class TotSpace:
    base: frozenset
    totals: frozenset

    def __post_init__(self):
        base = frozenset(self.base)
        totals = frozenset(frozenset(t) for t in self.totals)
        for t in totals:
            if not t <= base:
                raise ValueError(f"total set {set(t)} is not contained in the base")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "totals", totals)

    def atoms(self) -> list:
        return sorted(self.base, key=atom_key)

    def sorted_totals(self) -> list:
        return sorted((sorted(t, key=atom_key) for t in self.totals), key=lambda t: (len(t), [atom_key(x) for x in t]))

    def __repr__(self):
        return f"TotSpace(base={self.atoms()!r}, totals={self.sorted_totals()!r})"


FinSet = frozenset


def space(base: Iterable, totals: Iterable[Iterable]) -> TotSpace:
    return TotSpace(frozenset(base), frozenset(frozenset(t) for t in totals))


# -------------------------------------------------------------------- dual


def _check_cap(n: int, cap: int, what: str = "base") -> None:
    if n > cap:
        raise CapExceeded(f"{what} of size {n} exceeds the cap {cap}")


def dual_powerset(a: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    """Dual by scanning every subset of the base."""
    _check_cap(len(a.base), cap)
    atoms = a.atoms()
    index = {x: i for i, x in enumerate(atoms)}
    masks = [sum(1 << index[x] for x in t) for t in a.totals]
    out = []
    for r in range(1 << len(atoms)):
        if all((r & s).bit_count() == 1 for s in masks):
            out.append(frozenset(atoms[i] for i in range(len(atoms)) if r >> i & 1))
    return TotSpace(a.base, frozenset(out))


def dual(a: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    """Dual space: subsets meeting every total set in exactly one point.

    Same answer as :func:`dual_powerset`; the search decides atoms one at a
    time and abandons a branch as soon as a total set is hit twice or can no
    longer be hit.
    """
    _check_cap(len(a.base), cap)
    return _dual_cached(a)


@functools.lru_cache(maxsize=1 << 16)
def _dual_cached(a: TotSpace) -> TotSpace:
    atoms = a.atoms()
    n = len(atoms)
    index = {x: i for i, x in enumerate(atoms)}
    masks = [sum(1 << index[x] for x in t) for t in a.totals]
    if any(m == 0 for m in masks):
        return TotSpace(a.base, frozenset())
    containing = [[m for m in masks if m >> i & 1] for i in range(n)]
    closing = [[m for m in masks if m.bit_length() - 1 == i] for i in range(n)]
    out = []

    def go(i: int, r: int) -> None:
        if i == n:
            out.append(frozenset(atoms[k] for k in range(n) if r >> k & 1))
            return
        bit = 1 << i
        if all(not (r & m) for m in containing[i]):
            r2 = r | bit
            if all((r2 & m).bit_count() == 1 for m in closing[i]):
                go(i + 1, r2)
        if all((r & m).bit_count() == 1 for m in closing[i]):
            go(i + 1, r)

    go(0, 0)
    return TotSpace(a.base, frozenset(out))


def is_totality_space(a: TotSpace, cap: int = BASE_CAP) -> bool:
    return dual(dual(a, cap), cap).totals == a.totals


def make_space(base: Iterable, totals: Iterable[Iterable], cap: int = BASE_CAP) -> TotSpace:
    """A totality space, or :class:`NotATotalitySpace` if not biclosed."""
    a = space(base, totals)
    bidual = dual(dual(a, cap), cap)
    if bidual.totals != a.totals:
        raise NotATotalitySpace(bidual.totals)
    return a


def is_total(subset: Iterable, a: TotSpace) -> bool:
    return frozenset(subset) in a.totals


def is_cototal(subset: Iterable, a: TotSpace, cap: int = BASE_CAP) -> bool:
    return frozenset(subset) in dual(a, cap).totals


# ----------------------------------------------------------- connectives


def tensor_family(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    """The product sets ``r x s`` alone, as a pre-totality space."""
    _check_cap(len(a.base) * len(b.base), cap)
    base = frozenset(itertools.product(a.base, b.base))
    totals = frozenset(frozenset(itertools.product(r, s)) for r in a.totals for s in b.totals)
    return TotSpace(base, totals)


def biclosure(a: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    return dual(dual(a, cap), cap)


def tensor(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    """The totality space generated by the product sets.

    It coincides with :func:`tensor_family` exactly when that family is
    already biclosed, which fails once some atom lies in no cototal set.
    """
    return biclosure(tensor_family(a, b, cap), cap)


def par(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    return dual(tensor(dual(a, cap), dual(b, cap), cap), cap)


def _tag(k: int, s) -> frozenset:
    return frozenset((k, x) for x in s)


def _union_base(a: TotSpace, b: TotSpace, cap: int) -> frozenset:
    _check_cap(len(a.base) + len(b.base), cap)
    return _tag(0, a.base) | _tag(1, b.base)


def with_(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    base = _union_base(a, b, cap)
    return TotSpace(base, frozenset(_tag(0, r) | _tag(1, s) for r in a.totals for s in b.totals))


def plus_family(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    base = _union_base(a, b, cap)
    return TotSpace(base, frozenset(_tag(0, r) for r in a.totals) | frozenset(_tag(1, s) for s in b.totals))


def plus(a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> TotSpace:
    # biclosed so that plus(A, top) is a totality space too
    return biclosure(plus_family(a, b, cap), cap)


def bang(a: TotSpace, cap: int = BANG_CAP) -> TotSpace:
    """Base: the total sets of ``a``; totals: all singletons."""
    _check_cap(len(a.totals), cap, "number of total sets")
    return TotSpace(a.totals, frozenset(frozenset([s]) for s in a.totals))


def whynot(a: TotSpace, cap: int = BASE_CAP, bang_cap: int = BANG_CAP) -> TotSpace:
    return dual(bang(dual(a, cap), bang_cap), cap)


class Units(NamedTuple):
    one: TotSpace
    bot: TotSpace
    top: TotSpace
    zero: TotSpace


def units() -> Units:
    one = space([STAR], [[STAR]])
    return Units(one, one, TotSpace(frozenset(), frozenset([frozenset()])), TotSpace(frozenset(), frozenset()))


# ------------------------------------------------------------- morphisms


def cototal_products(a: TotSpace, b: TotSpace, cap: int = BASE_CAP):
    """Total sets ``r x t`` of ``a (x) b*``: the tests for ``a -o b``."""
    cob = dual(b, cap).totals
    for r in a.totals:
        for t in cob:
            yield r, t


def is_morphism(graph, a: TotSpace, b: TotSpace, cap: int = BASE_CAP) -> bool:
    """Whether ``graph`` is a total set of ``a -o b = a* par b``."""
    graph = frozenset(graph)
    if any(x not in a.base or y not in b.base for x, y in graph):
        return False
    for r, t in cototal_products(a, b, cap):
        hits = sum(1 for x, y in graph if x in r and y in t)
        if hits != 1:
            return False
    return True


@dataclass(frozen=True)
class Morphism:
    source: TotSpace
    target: TotSpace
    graph: frozenset

    def __post_init__(self):
        object.__setattr__(self, "graph", frozenset(self.graph))

    def image(self, s) -> frozenset:
        s = frozenset(s)
        return frozenset(y for x, y in self.graph if x in s)

    def validate(self, cap: int = BASE_CAP) -> "Morphism":
        if not is_morphism(self.graph, self.source, self.target, cap):
            raise NotAMorphism("graph is not total in source -o target")
        return self


def morphism(source: TotSpace, target: TotSpace, graph, cap: int = BASE_CAP) -> Morphism:
    return Morphism(source, target, frozenset(graph)).validate(cap)


def identity(a: TotSpace) -> Morphism:
    return Morphism(a, a, frozenset((x, x) for x in a.base))


def compose(f: Morphism, g: Morphism) -> Morphism:
    """``f`` then ``g``: relational composition."""
    if f.target != g.source:
        raise ValueError("compose: target of the first morphism is not the source of the second")
    forward: dict = {}
    for y, z in g.graph:
        forward.setdefault(y, []).append(z)
    graph = frozenset((x, z) for x, y in f.graph for z in forward.get(y, ()))
    return Morphism(f.source, g.target, graph)


def inverse_graph(f: Morphism) -> Morphism:
    return Morphism(f.target, f.source, frozenset((y, x) for x, y in f.graph))


def is_isomorphism(f: Morphism, g: Morphism) -> bool:
    return compose(f, g) == identity(f.source) and compose(g, f) == identity(f.target)


# ----------------------------------------------------- Dis, Y, adjunction


def dis(s: Iterable) -> TotSpace:
    s = frozenset(s)
    return TotSpace(s, frozenset(frozenset([x]) for x in s))


def yon(a: TotSpace) -> FinSet:
    return frozenset(a.totals)


def dis_map(func: Mapping, source: Iterable, target: Iterable) -> Morphism:
    """The graph of a function, as a morphism ``Dis(S) -> Dis(T)``."""
    return Morphism(dis(source), dis(target), frozenset((x, func[x]) for x in frozenset(source)))


def yon_map(phi: Morphism) -> dict:
    """``s |-> phi[s]`` from the total sets of the source to those of the target."""
    return {s: phi.image(s) for s in phi.source.totals}


def bang_map(phi: Morphism, cap: int = BANG_CAP) -> Morphism:
    """``!phi = Dis(Y(phi))``."""
    m = dis_map(yon_map(phi), phi.source.totals, phi.target.totals)
    return Morphism(bang(phi.source, cap), bang(phi.target, cap), m.graph)


def adj_bwd(func: Mapping, s: Iterable, a: TotSpace) -> Morphism:
    """From ``f: S -> A_tot`` to the morphism ``{(x, y) | y in f(x)}: Dis(S) -> A``."""
    s = frozenset(s)
    return Morphism(dis(s), a, frozenset((x, y) for x in s for y in func[x]))


def adj_fwd(phi: Morphism) -> dict:
    """From ``phi: Dis(S) -> A`` to the function ``x |-> slice of phi at x``."""
    out = {}
    for x in phi.source.base:
        slice_ = frozenset(y for u, y in phi.graph if u == x)
        if slice_ not in phi.target.totals:
            raise NotAMorphism(f"slice at {x!r} is not a total set of the target")
        out[x] = slice_
    return out


def functions(domain: Iterable, codomain: Iterable) -> list[dict]:
    domain = sorted(frozenset(domain), key=atom_key)
    codomain = sorted(frozenset(codomain), key=atom_key)
    return [dict(zip(domain, image)) for image in itertools.product(codomain, repeat=len(domain))]


# ------------------------------------------------------- comonad structure


def delta(a: TotSpace, cap: int = BANG_CAP) -> Morphism:
    """``!A -> !!A``, ``s |-> {s}``."""
    ba = bang(a, cap)
    return Morphism(ba, bang(ba, cap), frozenset((s, frozenset([s])) for s in a.totals))


def epsilon(a: TotSpace, cap: int = BANG_CAP) -> Morphism:
    """``!A -> A``, relating a total set to each of its points."""
    return Morphism(bang(a, cap), a, frozenset((s, x) for s in a.totals for x in s))


def _untag(t, k):
    return frozenset(x for j, x in t if j == k)


def mon(a: TotSpace, b: TotSpace, cap: int = BASE_CAP, bang_cap: int = BANG_CAP):
    """Witnesses ``!(A & B) -> !A (x) !B`` and back."""
    src = bang(with_(a, b, cap), bang_cap)
    dst = tensor(bang(a, bang_cap), bang(b, bang_cap), max(cap, bang_cap * bang_cap))
    graph = frozenset((t, (_untag(t, 0), _untag(t, 1))) for t in src.base)
    forward = Morphism(src, dst, graph)
    return forward, inverse_graph(forward)


def bang_top_witness(bang_cap: int = BANG_CAP):
    """Witnesses ``!T -> 1`` and back."""
    u = units()
    bt = bang(u.top, bang_cap)
    forward = Morphism(bt, u.one, frozenset((s, STAR) for s in bt.base))
    return forward, inverse_graph(forward)


def relabel(a: TotSpace, b: TotSpace, func: Callable) -> Morphism:
    """Morphism ``a -> b`` given by an atom relabelling."""
    return Morphism(a, b, frozenset((x, func(x)) for x in a.base))


# -------------------------------------------------------------- families


def all_spaces(max_atoms: int = 3, labels: str = "abcdefgh") -> list[TotSpace]:
    """Every totality space on the bases ``{}, {a}, {a,b}, ...``."""
    out = []
    for n in range(max_atoms + 1):
        atoms = labels[:n]
        subsets = [frozenset(c) for k in range(n + 1) for c in itertools.combinations(atoms, k)]
        seen = set()
        for k in range(len(subsets) + 1):
            for fam in itertools.combinations(subsets, k):
                a = TotSpace(frozenset(atoms), frozenset(fam))
                if a.totals in seen:
                    continue
                if is_totality_space(a):
                    seen.add(a.totals)
                    out.append(a)
    return out


def random_space(rng, max_atoms: int = 4, labels: str = "abcdefgh") -> TotSpace:
    """Dual of a random pre-totality space, hence a totality space.

    Draws are repeated until the space and its dual both have at most
    ``BANG_CAP`` total sets, so that ``!`` and ``?`` apply to the result.
    """
    while True:
        n = rng.randint(1, max_atoms)
        atoms = labels[:n]
        fam = []
        for _ in range(rng.randint(0, 4)):
            fam.append(frozenset(x for x in atoms if rng.random() < 0.5))
        a = dual(TotSpace(frozenset(atoms), frozenset(fam)))
        if len(a.totals) <= BANG_CAP and len(dual(a).totals) <= BANG_CAP:
            return a


def describe(a: TotSpace) -> str:
    lines = ["base " + " ".join(map(_fmt_atom, a.atoms()))]
    for t in a.sorted_totals():
        lines.append(("total " + " ".join(map(_fmt_atom, t))).rstrip())
    return "\n".join(lines)


def _fmt_atom(x) -> str:
    if isinstance(x, frozenset):
        return "{" + ",".join(map(_fmt_atom, sorted(x, key=atom_key))) + "}"
    if isinstance(x, tuple):
        return "(" + ",".join(map(_fmt_atom, x)) + ")"
    return str(x)


def parse_space(text: str, cap: int = BASE_CAP) -> TotSpace:
    """Read a space description::

        base a b c
        total a b
        total c

    Blank lines and ``#`` comments are ignored; ``total`` alone is the empty set.
    """
    base: Optional[list] = None
    totals = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        if head == "base":
            if base is not None:
                raise ValueError(f"line {lineno}: second base line")
            base = rest
        elif head == "total":
            if base is None:
                raise ValueError(f"line {lineno}: total before base")
            unknown = [x for x in rest if x not in base]
            if unknown:
                raise ValueError(f"line {lineno}: atoms {unknown} not in the base")
            totals.append(rest)
        else:
            raise ValueError(f"line {lineno}: expected 'base' or 'total', found {head!r}")
    if base is None:
        raise ValueError("missing base line")
    return space(base, totals)
