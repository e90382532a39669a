"""
Groebner bases over Q(e).

Buchberger's algorithm with Gebauer-Moeller pair elimination, full normal
forms, reduced bases, and the ideal predicates built on them (membership,
equality, triviality).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from .cyclofield import ONE, CycNum
from .linsolve import rref_pivots
from .logger import get_logger
from .multipoly import (
    Monomial,
    MonomialOrder,
    OrderLike,
    Poly,
    VarTable,
    as_order,
    degree,
    format_poly,
    mono_div,
    mono_lcm,
    mono_mul,
)

logger = get_logger("groebner")

Pair = Tuple[int, int]


@dataclass
class Ideal:
    """Finite generating set over one VarTable; zero generators are dropped."""

    generators: List[Poly]
    order: MonomialOrder = field(default_factory=MonomialOrder)
    vars: Optional[VarTable] = None

    def __post_init__(self) -> None:
        self.order = as_order(self.order)
        gens = list(self.generators)
        tables = {g.vars for g in gens}
        if self.vars is None:
            if len(tables) > 1:
                raise ValueError("Ideal generators use different variable tables")
            if not tables:
                raise ValueError("An ideal with no generators needs an explicit VarTable")
            self.vars = tables.pop()
        elif any(t != self.vars for t in tables):
            raise ValueError("Ideal generators do not match the declared VarTable")
        self.generators = [g for g in gens if not g.is_zero()]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.generators)


@dataclass
class GroebnerBasis:
    """Reduced Groebner basis: monic elements sorted by leading monomial, descending."""

    elements: List[Poly]
    order: MonomialOrder
    vars: VarTable

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.elements)

    def is_trivial(self) -> bool:
        return len(self.elements) == 1 and self.elements[0] == 1

    def reduce(self, p: Poly) -> Poly:
        return normal_form(p, self.elements, self.order)

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def to_lines(self) -> List[str]:
        return [format_poly(g, self.order) for g in self.elements]


# Building blocks


def _lead(p: Poly, order: MonomialOrder) -> Tuple[Monomial, CycNum]:
    lm = p.leading_monomial(order)
    return lm, p.terms[lm]


def spoly(f: Poly, g: Poly, order: OrderLike = None) -> Poly:
    """S-polynomial of f and g."""
    o = as_order(order)
    lmf, lcf = _lead(f, o)
    lmg, lcg = _lead(g, o)
    lcm = mono_lcm(lmf, lmg)
    s1 = f.mul_term(mono_div(lcm, lmf), lcf.inverse())
    s2 = g.mul_term(mono_div(lcm, lmg), lcg.inverse())
    return s1 - s2


def normal_form(p: Poly, G: Sequence[Poly], order: OrderLike = None) -> Poly:
    """
    Fully reduce p by G; the first divisor in G whose leading term divides wins.

    Example:
        >>> V = VarTable.of("Y1", "Y2")
        >>> y1, y2 = Poly.variable(V, "Y1"), Poly.variable(V, "Y2")
        >>> str(normal_form(y1**2 + y2, [y1]))
        'Y2'
    """
    o = as_order(order)
    reducers = [(g, *_lead(g, o)) for g in G if not g.is_zero()]
    rest: Dict[Monomial, CycNum] = dict(p.terms)
    remainder: Dict[Monomial, CycNum] = {}
    while rest:
        lm = max(rest, key=o.key)
        c = rest[lm]
        for g, lmg, lcg in reducers:
            shift = mono_div(lm, lmg)
            if shift is None:
                continue
            factor = c / lcg
            for m, v in g.terms.items():
                mm = mono_mul(m, shift)
                nv = rest.get(mm)
                nv = -(factor * v) if nv is None else nv - factor * v
                if nv:
                    rest[mm] = nv
                else:
                    rest.pop(mm, None)
            break
        else:
            remainder[lm] = c
            del rest[lm]
    return Poly(p.vars, remainder)


def select(lms: Sequence[Monomial], pairs: Set[Pair], order: MonomialOrder) -> Pair:
    """Pick the pair with the smallest lcm: degree first, then the order, then indices."""

    def key(p: Pair) -> tuple:
        lcm = mono_lcm(lms[p[0]], lms[p[1]])
        return (sum(lcm), order.key(lcm), p[1], p[0])

    return min(pairs, key=key)


def update(
    lms: List[Monomial], pairs: Set[Pair], lmf: Monomial, order: MonomialOrder
) -> Set[Pair]:
    """
    Pair set after adding a polynomial with leading monomial ``lmf``.

    Gebauer-Moeller: drop old pairs whose lcm is strictly divisible by lmf,
    keep one new pair per minimal lcm, skip coprime new pairs.
    """
    n = len(lms)
    kept = set()
    for i, j in pairs:
        lij = mono_lcm(lms[i], lms[j])
        if (
            mono_div(lij, lmf) is None
            or lij == mono_lcm(lms[i], lmf)
            or lij == mono_lcm(lms[j], lmf)
        ):
            kept.add((i, j))
    by_lcm: Dict[Monomial, List[int]] = {}
    for i in range(n):
        by_lcm.setdefault(mono_lcm(lms[i], lmf), []).append(i)
    minimal: List[Monomial] = []
    for L in sorted(by_lcm, key=order.key):
        if all(mono_div(L, M) is None for M in minimal):
            minimal.append(L)
    new = set()
    for L in minimal:
        if not any(mono_lcm(lms[i], lmf) == mono_mul(lms[i], lmf) for i in by_lcm[L]):
            new.add((min(by_lcm[L]), n))
    return kept | new


def minimalize(G: Sequence[Poly], order: OrderLike = None) -> List[Poly]:
    """Drop elements whose leading monomial is divisible by another's."""
    o = as_order(order)
    out: List[Poly] = []
    lms: List[Monomial] = []
    for g in sorted(G, key=lambda h: o.key(h.leading_monomial(o))):
        lm = g.leading_monomial(o)
        if all(mono_div(lm, other) is None for other in lms):
            out.append(g)
            lms.append(lm)
    return out


def interreduce(G: Sequence[Poly], order: OrderLike = None) -> List[Poly]:
    """Reduced basis from a minimal basis: reduce each element by the others, make monic."""
    o = as_order(order)
    out = []
    for i, g in enumerate(G):
        r = normal_form(g, list(G[:i]) + list(G[i + 1 :]), o)
        out.append(r.monic(o))
    return out


def _linear_prereduce(
    gens: List[Poly], order: MonomialOrder
) -> Tuple[List[Poly], List[Poly]]:
    """
    Row-reduce the generators of degree at most one.

    Returns the reduced linear rows (pivot = largest variable) and the other
    generators normal-formed against them. A row with only a constant makes
    the ideal trivial; it is returned as the single row ``1``.
    """
    linear = [g for g in gens if degree(g) <= 1]
    others = [g for g in gens if degree(g) > 1]
    if not linear:
        return [], others
    vars = gens[0].vars
    n = len(vars)
    units = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    columns = sorted(units, key=order.key, reverse=True) + [(0,) * n]
    matrix = [[g.terms.get(m, CycNum()) for m in columns] for g in linear]
    R, pivots = rref_pivots(matrix)
    if n in pivots:
        return [Poly.constant(vars, ONE)], []
    rows = [Poly(vars, dict(zip(columns, row))) for row in R[: len(pivots)]]
    reduced = [normal_form(g, rows, order) for g in others]
    return rows, [g for g in reduced if not g.is_zero()]


def buchberger(ideal: Ideal, prereduce_linear: bool = True) -> GroebnerBasis:
    """
    Reduced Groebner basis of an ideal.

    Args:
        ideal: Generators and monomial order
        prereduce_linear: Row-reduce degree-one generators before the pair loop

    Returns:
        The reduced basis; ``{1}`` as soon as a nonzero constant appears

    Example:
        >>> V = VarTable.of("Y1", "Y2")
        >>> y1, y2 = Poly.variable(V, "Y1"), Poly.variable(V, "Y2")
        >>> [str(g) for g in buchberger(Ideal([y1, y1 + y2]))]
        ['Y1', 'Y2']
    """
    o = ideal.order
    vars = ideal.vars
    one = Poly.constant(vars, ONE)
    trivial = GroebnerBasis([one], o, vars)
    gens = list(ideal.generators)
    if not gens:
        return GroebnerBasis([], o, vars)
    if any(g.is_constant() for g in gens):
        return trivial

    if prereduce_linear:
        rows, others = _linear_prereduce(gens, o)
        if rows and rows[0].is_constant():
            return trivial
        if any(g.is_constant() for g in others):
            return trivial
        gens = rows + others

    G: List[Poly] = []
    lms: List[Monomial] = []
    pairs: Set[Pair] = set()
    for g in gens:
        g = g.monic(o)
        lm = g.leading_monomial(o)
        pairs = update(lms, pairs, lm, o)
        G.append(g)
        lms.append(lm)

    processed = 0
    while pairs:
        i, j = select(lms, pairs, o)
        pairs.remove((i, j))
        processed += 1
        r = normal_form(spoly(G[i], G[j], o), G, o)
        if r.is_zero():
            continue
        if r.is_constant():
            logger.debug(f"Constant found after {processed} pairs; ideal is trivial")
            return trivial
        r = r.monic(o)
        lm = r.leading_monomial(o)
        pairs = update(lms, pairs, lm, o)
        G.append(r)
        lms.append(lm)

    reduced = interreduce(minimalize(G, o), o)
    reduced.sort(key=lambda g: o.key(g.leading_monomial(o)), reverse=True)
    logger.debug(f"Groebner basis: {len(reduced)} elements, {processed} pairs processed")
    return GroebnerBasis(reduced, o, vars)


def groebner_basis(
    polys: Iterable[Poly], order: OrderLike = None, vars: Optional[VarTable] = None
) -> GroebnerBasis:
    """Shortcut for ``buchberger(Ideal(polys, order, vars))``."""
    return buchberger(Ideal(list(polys), as_order(order), vars))


def ideal_member(p: Poly, ideal: Ideal) -> bool:
    """
    True iff p lies in the ideal.

    Example:
        >>> from mfkit.multipoly import f4, parse_poly
        >>> V = VarTable.ys()
        >>> I = Ideal([parse_poly("Y1+Y2", V), parse_poly("Y3+Y4", V)])
        >>> ideal_member(f4(V), I)
        True
    """
    return buchberger(ideal).contains(p)


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    """True iff each ideal contains the generators of the other."""
    gi, gj = buchberger(I), buchberger(J)
    return all(gj.contains(g) for g in I.generators) and all(
        gi.contains(g) for g in J.generators
    )


def ideal_is_trivial(ideal: Ideal) -> bool:
    return buchberger(ideal).is_trivial()
