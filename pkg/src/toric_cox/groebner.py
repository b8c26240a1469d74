"""Buchberger's algorithm for submodules of free modules over Q[Z].

Elements are :data:`~toric_cox.polynomials.Vec` dicts. The order is a
:class:`~toric_cox.polynomials.MonomialOrder`; pairs are processed smallest
lcm first. For ideals (a single position) the coprime-leading-monomials
criterion is used; for modules it does not apply and is skipped.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .polynomials import MonomialOrder, Term, Vec, divides, vec_add, vec_shift


def _monic(v: Mapping[Term, Fraction], order: MonomialOrder) -> tuple[Term, Vec]:
    lt = max(v, key=order.key)
    c = v[lt]
    return lt, {t: x / c for t, x in v.items()}


def normal_form(f: Mapping[Term, Fraction], basis: Sequence[Mapping[Term, Fraction]], order: MonomialOrder) -> Vec:
    """Full reduction of ``f`` by ``basis`` (not required to be a Groebner basis)."""
    leads = [(max(g, key=order.key), g) for g in basis if g]
    return _reduce(dict(f), leads, order)


def _reduce(p: Vec, leads: Sequence[tuple[Term, Mapping[Term, Fraction]]], order: MonomialOrder) -> Vec:
    rem: Vec = {}
    key = order.key
    while p:
        t = max(p, key=key)
        c = p[t]
        for (lp, le), g in leads:
            if lp == t[0] and divides(le, t[1]):
                shift = tuple(x - y for x, y in zip(t[1], le))
                p = vec_add(p, vec_shift(g, shift), -c / g[(lp, le)])
                break
        else:
            rem[t] = c
            del p[t]
    return rem


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def groebner_basis(gens: Sequence[Mapping[Term, Fraction]], order: MonomialOrder, max_pairs: int = 200000) -> list[Vec]:
    """Reduced Groebner basis, monic and sorted by leading term (descending)."""
    G: list[tuple[Term, Vec]] = []
    for g in gens:
        if g:
            r = _reduce(dict(g), G, order)
            if r:
                G.append(_monic(r, order))
    positions = {t[0] for _, g in G for t in g}
    ideal_case = len(positions) <= 1
    pairs = []

    def add_pairs(j):
        (pj, ej), _ = G[j]
        for i in range(j):
            (pi, ei), _ = G[i]
            if pi != pj:
                continue
            if ideal_case and all(x == 0 or y == 0 for x, y in zip(ei, ej)):
                continue
            pairs.append((i, j, _lcm(ei, ej)))

    for j in range(len(G)):
        add_pairs(j)
    processed = 0
    while pairs:
        pairs.sort(key=lambda p: order.key((G[p[0]][0][0], p[2])))
        i, j, l = pairs.pop(0)
        processed += 1
        if processed > max_pairs:
            raise RuntimeError("Groebner basis computation exceeded its pair budget")
        (pi, ei), gi = G[i]
        (_, ej), gj = G[j]
        s = vec_add(vec_shift(gi, tuple(x - y for x, y in zip(l, ei))),
                    vec_shift(gj, tuple(x - y for x, y in zip(l, ej))), -1)
        r = _reduce(s, G, order)
        if r:
            G.append(_monic(r, order))
            add_pairs(len(G) - 1)
    return reduce_basis([g for _, g in G], order)


def reduce_basis(G: Sequence[Mapping[Term, Fraction]], order: MonomialOrder) -> list[Vec]:
    """Turn a Groebner basis into the reduced one."""
    items = [_monic(g, order) for g in G if g]
    items.sort(key=lambda it: order.key(it[0]))
    minimal = []
    for lt, g in items:
        if not any(m[0] == lt[0] and divides(m[1], lt[1]) for m, _ in minimal):
            minimal.append((lt, g))
    out = []
    for k, (lt, g) in enumerate(minimal):
        others = [m for idx, m in enumerate(minimal) if idx != k]
        tail = {t: c for t, c in g.items() if t != lt}
        red = _reduce(tail, others, order)
        red[lt] = Fraction(1)
        out.append((lt, red))
    out.sort(key=lambda it: order.key(it[0]), reverse=True)
    return [g for _, g in out]


def is_groebner(G: Sequence[Mapping[Term, Fraction]], order: MonomialOrder) -> bool:
    """Buchberger's criterion: every S-vector reduces to zero."""
    leads = [(max(g, key=order.key), g) for g in G]
    for j in range(len(leads)):
        for i in range(j):
            (pi, ei), gi = leads[i]
            (pj, ej), gj = leads[j]
            if pi != pj:
                continue
            l = _lcm(ei, ej)
            s = vec_add(vec_shift(gi, tuple(x - y for x, y in zip(l, ei)), 1 / gi[(pi, ei)]),
                        vec_shift(gj, tuple(x - y for x, y in zip(l, ej)), 1 / gj[(pj, ej)]), -1)
            if _reduce(s, leads, order):
                return False
    return True
