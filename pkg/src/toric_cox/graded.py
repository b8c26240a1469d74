"""Cox rings, graded submodules of shifted free modules, colon and saturation.

A :class:`CoxRing` is ``Q[Z_rho]`` graded by ``A`` together with a big
subgroup ``B`` of ``A``. The B-restricted ring ``S_B`` is the span of the
monomials with degree in ``B``.

A :class:`GradedSubmodule` ``N`` of ``F = sum_j S_B(alpha_j)`` is stored
through its extension ``S_A N`` inside ``sum_j S_A(alpha_j)``: since
``N = S_A N ∩ F``, two B-submodules agree iff their extensions do, and
colon, intersection and saturation over ``S_B`` are the restrictions of
the same operations over ``S_A``. The extension is kept as a reduced
Groebner basis, so equality is syntactic.

Shift convention: ``S(alpha)_beta = S_{alpha+beta}``, hence a term
``Z^x e_j`` has degree ``a(x) - alpha_j``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .groebner import groebner_basis, normal_form
from .lattice import Subgroup, Vector, subgroup_index
from .picard import FanDiagram
from .semigroups import lattice_points
from .polynomials import (
    MonomialOrder,
    Poly,
    Term,
    Vec,
    divides,
    format_vector,
    poly_mul,
    poly_times_vec,
    poly_to_vec,
    vec_add,
    vec_component,
)


class NotBig(ValueError):
    pass


class Unsupported(NotImplementedError):
    pass


class SaturationDiverged(RuntimeError):
    pass


# ------------------------------------------------------------ the ring


@dataclass(frozen=True, eq=False)
class CoxRing:
    diagram: FanDiagram
    grading_group: Subgroup
    monoid_generators: tuple[tuple[int, ...], ...]
    order: MonomialOrder
    orders_mod_B: tuple[int, ...] = field(repr=False)

    @property
    def nvars(self) -> int:
        return self.diagram.num_rays

    @property
    def degrees(self) -> tuple[Vector, ...]:
        return self.diagram.alpha

    @property
    def full_grading(self) -> bool:
        return self.grading_group == Subgroup.whole(self.diagram.A)

    def degree(self, exps: Sequence[int]) -> Vector:
        return self.diagram.degree(exps)

    def in_B(self, deg: Sequence[int]) -> bool:
        return self.grading_group.contains(deg)

    def same_as(self, other: "CoxRing") -> bool:
        return self.diagram is other.diagram and self.grading_group == other.grading_group

    def __eq__(self, other):
        if not isinstance(other, CoxRing):
            return NotImplemented
        return self.same_as(other)

    def __hash__(self):
        return hash(self.grading_group)

    def monomials_of_degree(self, deg: Sequence[int], limit: int = 10**6) -> list[tuple[int, ...]]:
        """All ``x in N^k`` with ``a(x) = deg``, when that set is finite."""
        return _monomials_of_degree(self, deg, limit)


def _grading_weights(d: FanDiagram) -> tuple[int, ...]:
    A = d.A
    if A.free_rank == 1 and not A.invariant_factors and all(a[0] > 0 for a in d.alpha):
        return tuple(a[0] for a in d.alpha)
    return (1,) * d.num_rays


def _orders_mod(d: FanDiagram, B: Subgroup) -> tuple[int, ...]:
    Q = B.quotient()
    out = []
    for a in d.alpha:
        o = Q.element_order(Q.project(a))
        if o == float("inf"):
            raise NotBig("grading subgroup does not have finite index")
        out.append(int(o))
    return tuple(out)


def _box(orders: Sequence[int]):
    return itertools.product(*(range(o) for o in orders))


def cox_ring(d: FanDiagram, B: Optional[Subgroup] = None) -> CoxRing:
    B = B if B is not None else Subgroup.whole(d.A)
    if B.ambient != d.A:
        raise ValueError("grading subgroup must live in the class group of the fan")
    if subgroup_index(B) == float("inf"):
        raise NotBig("grading subgroup is not big (infinite index)")
    orders = _orders_mod(d, B)
    k = d.num_rays
    if all(o == 1 for o in orders):
        gens = tuple(tuple(int(i == j) for j in range(k)) for i in range(k))
    else:
        gens = tuple(_degree_monoid_basis(d, B, orders))
    return CoxRing(d, B, gens, MonomialOrder(_grading_weights(d)), orders)


def _degree_monoid_basis(d: FanDiagram, B: Subgroup, orders: Sequence[int]) -> list[tuple[int, ...]]:
    """Hilbert basis of ``{x in N^k : a(x) in B}``.

    Any element with ``x_rho >= o_rho`` is reducible by ``o_rho e_rho``
    unless it equals it, so candidates are those plus the box below the
    orders; irreducibility is then a finite check.
    """
    k = d.num_rays
    cands = set()
    for i, o in enumerate(orders):
        cands.add(tuple(o if j == i else 0 for j in range(k)))
    for x in _box(orders):
        if any(x) and B.contains(d.degree(x)):
            cands.add(tuple(x))
    elems = sorted(cands, key=lambda x: (sum(x), x))
    basis = []
    for x in elems:
        below = (y for y in itertools.product(*(range(v + 1) for v in x)) if any(y) and tuple(y) != x)
        if not any(B.contains(d.degree(y)) for y in below):
            basis.append(x)
    return sorted(basis)


def _monomials_of_degree(r: CoxRing, deg: Sequence[int], limit: int) -> list[tuple[int, ...]]:
    """Exponents ``x = x0 + c(u) >= 0``; finite when the rays positively span."""
    d = r.diagram
    n = d.fan.ambient_dim
    x0 = d.A.lift(d.A.reduce(deg))
    rows = [list(rr) for rr in d.fan.rays]
    if not rows:
        return [tuple(x0)] if all(v >= 0 for v in x0) else []
    pts = lattice_points(rows, [-v for v in x0], n)
    out = sorted(tuple(x0[i] + sum(rows[i][j] * u[j] for j in range(n)) for i in range(len(rows))) for u in pts)
    if len(out) > limit:
        raise ValueError("too many monomials")
    return out


# ------------------------------------------------------------ modules


def _term_degree(ring: CoxRing, shifts, term: Term) -> Vector:
    pos, e = term
    return ring.diagram.A.sub(ring.degree(e), shifts[pos])


@dataclass(frozen=True, eq=False)
class GradedSubmodule:
    ring: CoxRing
    shifts: tuple[Vector, ...]
    generators: tuple[Vec, ...]
    groebner: tuple[Vec, ...] = field(repr=False)

    def __init__(self, ring: CoxRing, shifts: Sequence[Sequence[int]], generators: Iterable[Mapping[Term, Fraction]] = (),
                 _groebner: Optional[Sequence[Vec]] = None):
        A = ring.diagram.A
        shifts = tuple(A.reduce(s) for s in shifts)
        for s in shifts:
            if not ring.in_B(s):
                raise ValueError(f"shift {s} is not in the grading group")
        gens = tuple(dict(g) for g in generators if g)
        for g in gens:
            for pos, e in g:
                if pos >= len(shifts) or any(x < 0 for x in e) or len(e) != ring.nvars:
                    raise ValueError("generator is not an element of the ambient free module")
            degs = {_term_degree(ring, shifts, t) for t in g}
            if len(degs) != 1:
                raise ValueError("generator is not homogeneous")
            if not ring.in_B(next(iter(degs))):
                raise ValueError("generator degree is not in the grading group")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "shifts", shifts)
        object.__setattr__(self, "generators", gens)
        if _groebner is None:
            _groebner = _compute_groebner(gens, ring.order)
        object.__setattr__(self, "groebner", tuple(_groebner))

    # construction helpers
    @classmethod
    def ambient(cls, ring: CoxRing, shifts: Sequence[Sequence[int]]) -> "GradedSubmodule":
        k = ring.nvars
        return cls(ring, shifts, [{(j, (0,) * k): Fraction(1)} for j in range(len(shifts))])

    @classmethod
    def zero(cls, ring: CoxRing, shifts: Sequence[Sequence[int]]) -> "GradedSubmodule":
        return cls(ring, shifts, [])

    @classmethod
    def ideal(cls, ring: CoxRing, polys: Iterable[Mapping[tuple, Fraction]]) -> "GradedSubmodule":
        return cls(ring, [ring.diagram.A.zero()], [poly_to_vec(p) for p in polys])

    @classmethod
    def monomial(cls, ring: CoxRing, shifts, terms: Iterable[tuple[int, Sequence[int]]]) -> "GradedSubmodule":
        return cls(ring, shifts, [{(p, tuple(e)): Fraction(1)} for p, e in terms])

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @property
    def is_monomial(self) -> bool:
        return all(len(g) == 1 for g in self.groebner)

    def monomial_terms(self) -> list[Term]:
        if not self.is_monomial:
            raise Unsupported("module is not monomial")
        return [next(iter(g)) for g in self.groebner]

    def contains(self, v: Mapping[Term, Fraction]) -> bool:
        return not normal_form(v, self.groebner, self.ring.order)

    def issubset(self, other: "GradedSubmodule") -> bool:
        _compatible(self, other)
        return all(other.contains(g) for g in self.groebner)

    def __eq__(self, other):
        if not isinstance(other, GradedSubmodule):
            return NotImplemented
        return (self.ring == other.ring and self.shifts == other.shifts
                and _canon(self.groebner) == _canon(other.groebner))

    def __hash__(self):
        return hash((self.shifts, _canon(self.groebner)))

    def is_whole(self) -> bool:
        return self == GradedSubmodule.ambient(self.ring, self.shifts)

    def describe(self) -> dict:
        return {
            "shifts": [list(s) for s in self.shifts],
            "groebner": [format_vector(g, self.rank, self.ring.order) for g in self.groebner],
        }

    def element_degree(self, v: Mapping[Term, Fraction]) -> Vector:
        return _term_degree(self.ring, self.shifts, next(iter(v)))


def _canon(G) -> tuple:
    return tuple(tuple(sorted((t, (c.numerator, c.denominator)) for t, c in g.items())) for g in G)


def _compute_groebner(gens: Sequence[Vec], order: MonomialOrder) -> list[Vec]:
    if all(len(g) == 1 for g in gens):
        return _minimal_monomials([next(iter(g)) for g in gens], order)
    return groebner_basis(gens, order)


def _minimal_monomials(terms: Iterable[Term], order: MonomialOrder) -> list[Vec]:
    terms = sorted(set(terms), key=order.key)
    keep: list[Term] = []
    for t in terms:
        if not any(p == t[0] and divides(e, t[1]) for p, e in keep):
            keep.append(t)
    keep.sort(key=order.key, reverse=True)
    return [{t: Fraction(1)} for t in keep]


def _compatible(a: GradedSubmodule, b: GradedSubmodule) -> None:
    if a.ring != b.ring or a.shifts != b.shifts:
        raise ValueError("submodules of different ambient modules")


# ---------------------------------------------------- ideals of S_B


def irrelevant_ideal(r: CoxRing) -> GradedSubmodule:
    """``I_B``: for ``B = A`` generated by the ``zhat_sigma``; otherwise by the
    B-degree monomials of ``(zhat_sigma)`` after Dickson minimalization."""
    d = r.diagram
    k = d.num_rays
    zhats = [tuple(0 if i in s else 1 for i in range(k)) for s in d.fan.max_cones]
    if r.full_grading:
        return GradedSubmodule.ideal(r, [{z: Fraction(1)} for z in zhats])
    cands = set()
    for z in zhats:
        for x in _box(r.orders_mod_B):
            m = tuple(a + b for a, b in zip(z, x))
            if r.in_B(r.degree(m)):
                cands.add(m)
    minimal = [m for m in cands if not any(o != m and divides(o, m) for o in cands)]
    minimal.sort(key=lambda m: r.order.key((0, m)), reverse=True)
    return GradedSubmodule.ideal(r, [{m: Fraction(1)} for m in minimal])


def zhat(r: CoxRing, sigma) -> tuple[int, ...]:
    return tuple(0 if i in sigma else 1 for i in range(r.nvars))


def chart_ideal(r: CoxRing, sigma) -> GradedSubmodule:
    """``(zhat_sigma)``; over ``S_B`` we use a power of degree in ``B``."""
    z = zhat(r, sigma)
    Q = r.grading_group.quotient()
    o = Q.element_order(Q.project(r.degree(z)))
    return GradedSubmodule.ideal(r, [{tuple(int(o) * x for x in z): Fraction(1)}])


# --------------------------------------------------- colon and friends


def _restrict_to_B(ring: CoxRing, shifts, gens: Sequence[Vec]) -> list[Vec]:
    """Generators of ``S_A (C ∩ F_B)`` for ``C`` generated by ``gens``.

    A B-degree element of ``C`` is a sum of ``Z^y g`` with ``y`` reduced
    coordinatewise modulo the orders of the ``alpha_i`` in ``A/B`` times a
    monomial of ``S_B``; so the ``Z^t g`` with ``t`` in that box and degree
    in ``B`` suffice.
    """
    if ring.full_grading:
        return list(gens)
    out = []
    for g in gens:
        if not g:
            continue
        base = _term_degree(ring, shifts, next(iter(g)))
        for t in _box(ring.orders_mod_B):
            if ring.in_B(ring.diagram.A.add(base, ring.degree(t))):
                out.append({(p, tuple(a + b for a, b in zip(e, t))): c for (p, e), c in g.items()})
    return out


def _tagged(v: Mapping[Term, Fraction], t: int) -> Vec:
    return {(p, e + (t,)): c for (p, e), c in v.items()}


def intersect(a: GradedSubmodule, b: GradedSubmodule, method: str = "auto") -> GradedSubmodule:
    _compatible(a, b)
    ring = a.ring
    if method == "monomial" or (method == "auto" and a.is_monomial and b.is_monomial):
        terms = []
        for (p, e) in a.monomial_terms():
            for (q, f) in b.monomial_terms():
                if p == q:
                    terms.append((p, tuple(max(x, y) for x, y in zip(e, f))))
        return GradedSubmodule(ring, a.shifts, _restrict_to_B(ring, a.shifts, [{t: Fraction(1)} for t in terms]))
    gens = [_tagged(g, 1) for g in a.groebner]
    for g in b.groebner:
        gens.append(vec_add(_tagged(g, 0), _tagged(g, 1), -1))
    G = groebner_basis(gens, ring.order.with_tag())
    keep = [{(p, e[:-1]): c for (p, e), c in g.items()} for g in G if all(e[-1] == 0 for (_, e) in g)]
    return GradedSubmodule(ring, a.shifts, _restrict_to_B(ring, a.shifts, keep))


def _divide_exact(v: Mapping[Term, Fraction], f: Mapping[tuple, Fraction], order: MonomialOrder) -> Vec:
    """``v / f`` when ``f`` divides every component of ``v``."""
    lf = max(f, key=lambda e: order.key((0, e)))
    cf = f[lf]
    p = dict(v)
    q: Vec = {}
    while p:
        t = max(p, key=order.key)
        pos, e = t
        shift = tuple(x - y for x, y in zip(e, lf))
        if any(x < 0 for x in shift):
            raise ArithmeticError("division is not exact")
        c = p[t] / cf
        q[(pos, shift)] = q.get((pos, shift), 0) + c
        p = vec_add(p, poly_times_vec(f, {(pos, shift): Fraction(1)}), -c)
    return {t: c for t, c in q.items() if c}


def colon_element(n: GradedSubmodule, f: Mapping[tuple, Fraction], method: str = "auto") -> GradedSubmodule:
    """``{x in F : f x in n}`` for a homogeneous polynomial ``f``."""
    ring = n.ring
    f = {e: Fraction(c) for e, c in f.items() if c}
    if not f:
        return GradedSubmodule.ambient(ring, n.shifts)
    if method == "monomial" or (method == "auto" and n.is_monomial and len(f) == 1):
        (m,) = f
        terms = [(p, tuple(max(x - y, 0) for x, y in zip(e, m))) for p, e in n.monomial_terms()]
        return GradedSubmodule(ring, n.shifts, _restrict_to_B(ring, n.shifts, [{t: Fraction(1)} for t in terms]))
    k = ring.nvars
    multiples = GradedSubmodule(ring, n.shifts,
                                [poly_times_vec(f, {(j, (0,) * k): Fraction(1)}) for j in range(n.rank)])
    both = intersect(n, multiples, method="groebner")
    quot = [_divide_exact(g, f, ring.order) for g in both.groebner]
    return GradedSubmodule(ring, n.shifts, _restrict_to_B(ring, n.shifts, quot))


def colon(n: GradedSubmodule, a: GradedSubmodule, method: str = "auto") -> GradedSubmodule:
    """``(n : a)`` for an ideal ``a`` of the same ring."""
    if a.ring != n.ring or a.rank != 1:
        raise ValueError("colon needs an ideal of the same ring")
    gens = [vec_component(g, 0) for g in a.groebner]
    if not gens:
        return GradedSubmodule.ambient(n.ring, n.shifts)
    out = None
    for g in gens:
        c = colon_element(n, g, method)
        out = c if out is None else intersect(out, c, method="auto" if method == "auto" else method)
    return out


def saturate(n: GradedSubmodule, a: GradedSubmodule, method: str = "auto", max_iter: int = 500) -> GradedSubmodule:
    """``n : a^infinity`` by iterating the colon until it stops growing."""
    cur = n
    for _ in range(max_iter):
        nxt = colon(cur, a, method)
        if nxt == cur:
            return cur
        cur = nxt
    raise SaturationDiverged(f"saturation did not stabilise within {max_iter} steps")


def saturate_chartwise(n: GradedSubmodule, r: Optional[CoxRing] = None, method: str = "auto") -> GradedSubmodule:
    """``intersection over maximal sigma of n : (zhat_sigma)^infinity``."""
    ring = r or n.ring
    out = None
    for s in ring.diagram.fan.max_cones:
        c = saturate(n, chart_ideal(ring, s), method)
        out = c if out is None else intersect(out, c)
    return out


def is_saturated(n: GradedSubmodule, a: GradedSubmodule) -> bool:
    return colon(n, a) == n


def torsion_submodule(n: GradedSubmodule, a: GradedSubmodule) -> GradedSubmodule:
    """``Gamma_a(F/n)`` represented by its preimage ``Sat(n, a)`` in ``F``."""
    return saturate(n, a)


def is_torsion(n: GradedSubmodule, a: GradedSubmodule) -> bool:
    """Whether ``F/n`` is ``a``-torsion."""
    return saturate(n, a).is_whole()


# --------------------------------------------------- degree restriction


def degree_restriction(obj, B_prime: Subgroup):
    """Restrict a ring or a monomial submodule to the degrees in ``B'``."""
    if isinstance(obj, CoxRing):
        if not B_prime.issubset(obj.grading_group):
            raise ValueError("B' must be contained in B")
        return cox_ring(obj.diagram, B_prime)
    if not isinstance(obj, GradedSubmodule):
        raise TypeError("expected a CoxRing or a GradedSubmodule")
    if not obj.is_monomial:
        raise Unsupported("degree restriction is implemented for monomial submodules only")
    ring = degree_restriction(obj.ring, B_prime)
    A = ring.diagram.A
    terms = set()
    for (p, e) in obj.monomial_terms():
        for x in _box(ring.orders_mod_B):
            m = tuple(a + b for a, b in zip(e, x))
            if ring.in_B(A.sub(ring.degree(m), obj.shifts[p])):
                terms.add((p, m))
    minimal = [t for t in terms if not any(o != t and o[0] == t[0] and divides(o[1], t[1]) for o in terms)]
    return GradedSubmodule(ring, obj.shifts, [{t: Fraction(1)} for t in minimal])


def extension_degree_piece(n: GradedSubmodule, deg: Sequence[int]) -> list[Vec]:
    """Basis of ``n_deg`` as normal-form-free monomial span (monomial modules)."""
    terms = n.monomial_terms()
    out = []
    A = n.ring.diagram.A
    for j, s in enumerate(n.shifts):
        for x in n.ring.monomials_of_degree(A.add(deg, s)):
            if any(p == j and divides(e, x) for p, e in terms):
                out.append({(j, x): Fraction(1)})
    return out


def polys_product(fs: Sequence[Poly]) -> Poly:
    out: Poly = {}
    for f in fs:
        out = f if not out else poly_mul(out, f)
    return out
