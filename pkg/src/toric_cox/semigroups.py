"""Lattice points of rational polyhedra ``{u in Z^n : G u >= b}``.

Used for Hilbert bases of chart monoids and dual cones, for generators of
twist modules over them, and for the monoid of B-degree monomials.

The lineality space ``{G u = 0}`` is split off with a Smith form so the
remaining problem is pointed. There every minimal element lies in
``Q + sum [0,1) r_i`` (``Q`` the convex hull of the vertices, ``r_i`` the
extreme rays), which gives a finite search region for a positive linear
form ``ell``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import kernels
from .cones import dual_cone
from .lattice import (
    Vector,
    dot,
    hermite_normal_form,
    reduce_mod_lattice,
    smith_normal_form,
)


@dataclass(frozen=True)
class SplitSystem:
    """``G T = [G' | 0]`` for a unimodular ``T``."""

    reduced: tuple[Vector, ...]  # rows of G'
    T: tuple[Vector, ...]
    rank: int
    units: tuple[Vector, ...]  # HNF basis of {G u = 0}

    def lift(self, y: Sequence[int]) -> Vector:
        n = len(self.T)
        u = tuple(sum(self.T[i][j] * y[j] for j in range(self.rank)) for i in range(n))
        return reduce_mod_lattice(u, self.units)


def split_lineality(G: Sequence[Sequence[int]], n: int) -> SplitSystem:
    if not G:
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        return SplitSystem((), ident, 0, ident)
    _, D, V = smith_normal_form(G, n)
    r = sum(1 for i in range(min(len(G), n)) if D[i][i])
    GV = [[sum(row[k] * V[k][j] for k in range(n)) for j in range(n)] for row in G]
    assert all(GV[i][j] == 0 for i in range(len(G)) for j in range(r, n))
    reduced = tuple(tuple(row[:r]) for row in GV)
    units = hermite_normal_form([tuple(V[i][j] for i in range(n)) for j in range(r, n)])
    return SplitSystem(reduced, tuple(tuple(row) for row in V), r, tuple(units))


def _solve_square(M: Sequence[Sequence[int]], rhs: Sequence[int]) -> Optional[tuple[Fraction, ...]]:
    n = len(M)
    a = [[Fraction(x) for x in row] + [Fraction(v)] for row, v in zip(M, rhs)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c]), None)
        if piv is None:
            return None
        a[c], a[piv] = a[piv], a[c]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def polyhedron_vertices(G: Sequence[Sequence[int]], b: Sequence[int], r: int) -> list[tuple[Fraction, ...]]:
    """Vertices of ``{y in Q^r : G y >= b}`` by brute force over row subsets."""
    if r == 0:
        return [()] if all(x <= 0 for x in b) else []
    verts = set()
    for rows in itertools.combinations(range(len(G)), r):
        y = _solve_square([G[i] for i in rows], [b[i] for i in rows])
        if y is None:
            continue
        if all(sum(g * v for g, v in zip(row, y)) >= bound for row, bound in zip(G, b)):
            verts.add(y)
    return sorted(verts)


def _points_below(G, b, ell, ell_max, r) -> list[Vector]:
    """Integer ``y`` with ``G y >= b`` and ``ell(y) <= ell_max`` (a polytope)."""
    rows = [tuple(g) for g in G] + [tuple(-x for x in ell)]
    rhs = list(b) + [-ell_max]
    verts = polyhedron_vertices(rows, rhs, r)
    if not verts:
        return []
    lo = [math.floor(min(v[j] for v in verts)) for j in range(r)]
    hi = [math.ceil(max(v[j] for v in verts)) for j in range(r)]
    return kernels.box_points(rows, rhs, lo, hi)


def _grading(reduced: Sequence[Sequence[int]], r: int) -> Vector:
    return tuple(sum(row[j] for row in reduced) for j in range(r))


@dataclass(frozen=True)
class MonoidBasis:
    units: tuple[Vector, ...]
    basis: tuple[Vector, ...]
    stable: bool = True

    @property
    def generators(self) -> tuple[Vector, ...]:
        """Monoid generators: the basis plus plus-and-minus unit vectors."""
        extra = []
        for u in self.units:
            extra += [u, tuple(-x for x in u)]
        return self.basis + tuple(extra)


def hilbert_basis(G: Sequence[Sequence[int]], n: int, verify: bool = False) -> MonoidBasis:
    """Minimal generators of ``{u in Z^n : G u >= 0}``.

    ``units`` is an HNF basis of the unit group; ``basis`` lists the
    irreducible elements of the pointed quotient, lifted canonically modulo
    the units and sorted. With ``verify`` the search is repeated with a
    larger bound and the flag ``stable`` records that both runs agree.
    """
    sp = split_lineality(G, n)
    r = sp.rank
    if r == 0:
        return MonoidBasis(sp.units, ())
    red = [list(row) for row in sp.reduced]
    cone = dual_cone(red, r)
    assert not cone.lineality
    ell = _grading(red, r)
    bound = sum(dot(ell, ray) for ray in cone.rays)
    basis = _irreducibles(red, ell, bound, r)
    stable = True
    if verify:
        stable = _irreducibles(red, ell, bound + max(dot(ell, ray) for ray in cone.rays), r) == basis
    lifted = tuple(sorted(sp.lift(y) for y in basis))
    return MonoidBasis(sp.units, lifted, stable)


def _irreducibles(red, ell, bound, r) -> list[Vector]:
    pts = _points_below(red, [0] * len(red), ell, bound, r)
    pts = sorted((p for p in pts if any(p)), key=lambda p: (dot(ell, p), p))
    basis: list[Vector] = []
    for p in pts:
        lp = dot(ell, p)
        reducible = False
        for h in basis:
            if dot(ell, h) >= lp:
                break
            diff = [a - c for a, c in zip(p, h)]
            if all(dot(row, diff) >= 0 for row in red):
                reducible = True
                break
        if not reducible:
            basis.append(p)
    return basis


def module_generators(G: Sequence[Sequence[int]], b: Sequence[int], n: int) -> list[Vector]:
    """Minimal elements of ``{u : G u >= b}`` over the monoid ``{G u >= 0}``.

    Returned modulo the unit lattice (canonical lifts), sorted.
    """
    sp = split_lineality(G, n)
    r = sp.rank
    if r == 0:
        return [tuple([0] * n)] if all(x <= 0 for x in b) else []
    red = [list(row) for row in sp.reduced]
    verts = polyhedron_vertices(red, b, r)
    if not verts:
        return []
    cone = dual_cone(red, r)
    ell = _grading(red, r)
    top = max(sum(Fraction(e) * x for e, x in zip(ell, v)) for v in verts)
    bound = math.floor(top) + sum(dot(ell, ray) for ray in cone.rays)
    pts = sorted(_points_below(red, b, ell, bound, r), key=lambda p: (dot(ell, p), p))
    gens: list[Vector] = []
    for p in pts:
        if not any(all(dot(row, [a - c for a, c in zip(p, g)]) >= 0 for row in red) for g in gens):
            gens.append(p)
    return sorted(sp.lift(y) for y in gens)


def lattice_points(G: Sequence[Sequence[int]], b: Sequence[int], n: int) -> list[Vector]:
    """All integer points of the polytope ``{G u >= b}``; raises if unbounded."""
    if dual_cone(G, n).rays or dual_cone(G, n).lineality:
        raise ValueError("polyhedron is unbounded")
    verts = polyhedron_vertices(G, b, n)
    if not verts:
        return []
    lo = [math.floor(min(v[j] for v in verts)) for j in range(n)]
    hi = [math.ceil(max(v[j] for v in verts)) for j in range(n)]
    return kernels.box_points(G, b, lo, hi)


def in_monoid(G: Sequence[Sequence[int]], u: Sequence[int], b: Optional[Sequence[int]] = None) -> bool:
    b = b or [0] * len(G)
    return all(dot(row, u) >= x for row, x in zip(G, b))
