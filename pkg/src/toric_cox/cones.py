"""Rational polyhedral cones and fans in ``Z^n``.

A sharp cone is stored by its primitive rays in lexicographic order; a fan
keeps its rays in input order (ray ``i`` is Cox variable ``Z_i``) and its
cones as frozensets of ray indices.

Dual cones come from brute-force facet enumeration, which is plenty at the
sizes we care about (a dozen rays in dimension three).
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .lattice import (
    Vector,
    dot,
    hermite_normal_form,
    kernel_basis,
    rank,
    saturation,
    smith_normal_form,
    solve_integer,
    transpose,
    vec_gcd,
)


class NonSharpCone(ValueError):
    pass


class InvalidCone(ValueError):
    pass


class IntersectionNotFace(ValueError):
    def __init__(self, sigma, tau, witness):
        self.sigma, self.tau, self.witness = sigma, tau, witness
        super().__init__(f"cones {sigma} and {tau} meet outside a common face (witness {witness})")


def primitive_ray(v: Sequence[int]) -> Vector:
    g = vec_gcd(v)
    if g == 0:
        raise ValueError("zero vector has no primitive ray")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class ConeData:
    """Generators of a possibly non-sharp cone: ``cone(rays) + span(lineality)``."""

    dim: int
    rays: tuple[Vector, ...]
    lineality: tuple[Vector, ...] = ()

    @property
    def generators(self) -> tuple[Vector, ...]:
        gens = set(self.rays)
        for v in self.lineality:
            gens.add(v)
            gens.add(tuple(-x for x in v))
        return tuple(sorted(gens))

    @property
    def is_sharp(self) -> bool:
        return not self.lineality

    def contains(self, v: Sequence[int]) -> bool:
        normals = dual_cone(self.generators, self.dim)
        eqs = normals.lineality
        return all(dot(u, v) == 0 for u in eqs) and all(dot(u, v) >= 0 for u in normals.rays)


def _clean(gens: Iterable[Sequence[int]]) -> list[Vector]:
    return sorted({primitive_ray(g) for g in gens if any(g)})


def dual_cone(gens: "Iterable[Sequence[int]] | Polycone", dim: Optional[int] = None) -> ConeData:
    """``{u : u(g) >= 0 for all generators g}`` as :class:`ConeData`.

    The lineality space is the orthogonal complement of the span (HNF basis);
    the pointed part is spanned by the inner facet normals, taken inside
    ``span(gens)`` so that they are canonical.
    """
    if isinstance(gens, Polycone):
        dim = gens.ambient_dim
        gens = gens.rays
    gens = _clean(gens)
    if dim is None:
        if not gens:
            raise ValueError("dimension needed for an empty generator list")
        dim = len(gens[0])
    lineality = tuple(kernel_basis(gens, dim)) if gens else tuple(
        tuple(int(i == j) for j in range(dim)) for i in range(dim))
    if not gens:
        return ConeData(dim, (), lineality)
    span = hermite_normal_form(gens)
    d = len(span)
    normals = set()
    for T in itertools.combinations(gens, d - 1):
        if d > 1 and rank(T) != d - 1:
            continue
        # u = lam . span with t.u = 0 for t in T
        if d == 1:
            lam = (1,)
        else:
            system = [[dot(t, b) for b in span] for t in T]
            ker = kernel_basis(system, d)
            if len(ker) != 1:
                continue
            lam = ker[0]
        u = tuple(sum(lam[i] * span[i][j] for i in range(d)) for j in range(dim))
        vals = [dot(g, u) for g in gens]
        if all(v >= 0 for v in vals):
            normals.add(primitive_ray(u))
        elif all(v <= 0 for v in vals):
            normals.add(primitive_ray(tuple(-x for x in u)))
    return ConeData(dim, tuple(sorted(normals)), lineality)


def cone_from_inequalities(rows: Sequence[Sequence[int]], dim: int) -> ConeData:
    """V-description of ``{x : a.x >= 0 for each row a}``."""
    return dual_cone(rows, dim)


@dataclass(frozen=True)
class Polycone:
    ambient_dim: int
    rays: tuple[Vector, ...]

    @classmethod
    def from_generators(cls, gens: Iterable[Sequence[int]], dim: Optional[int] = None) -> "Polycone":
        gens = _clean(gens)
        if dim is None:
            if not gens:
                raise ValueError("dimension needed for the zero cone")
            dim = len(gens[0])
        if not gens:
            return cls(dim, ())
        dual = dual_cone(gens, dim)
        if rank(list(dual.rays) + list(dual.lineality)) < dim:
            raise NonSharpCone(f"cone generated by {gens} contains a line")
        back = dual_cone(dual.generators, dim)
        assert not back.lineality
        return cls(dim, back.rays)

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def generator_matrix(self) -> list[list[int]]:
        return [list(r) for r in self.rays]

    @property
    def is_simplicial(self) -> bool:
        return len(self.rays) == self.dim

    @property
    def is_regular(self) -> bool:
        if not self.is_simplicial:
            return False
        if not self.rays:
            return True
        _, D, _ = smith_normal_form(self.generator_matrix)
        return all(D[i][i] == 1 for i in range(len(self.rays)))

    def facet_normals(self) -> tuple[Vector, ...]:
        return dual_cone(self.rays, self.ambient_dim).rays

    def equations(self) -> tuple[Vector, ...]:
        return dual_cone(self.rays, self.ambient_dim).lineality

    def contains(self, v: Sequence[int]) -> bool:
        d = dual_cone(self.rays, self.ambient_dim)
        return all(dot(u, v) == 0 for u in d.lineality) and all(dot(u, v) >= 0 for u in d.rays)

    def dual(self) -> ConeData:
        return dual_cone(self.rays, self.ambient_dim)

    def __repr__(self) -> str:
        return f"Polycone({list(self.rays)})"


def face_ray_sets(rays: Sequence[Vector], dim: int) -> set[frozenset[int]]:
    """All faces of ``cone(rays)`` as sets of indices into ``rays``.

    ``rays`` must be the extreme rays of a sharp cone.
    """
    full = frozenset(range(len(rays)))
    normals = dual_cone(rays, dim).rays
    facets = {frozenset(i for i, r in enumerate(rays) if dot(u, r) == 0) for u in normals}
    found = {full, frozenset()} | facets
    frontier = set(facets)
    while frontier:
        new = set()
        for a in frontier:
            for b in facets:
                c = a & b
                if c not in found:
                    new.add(c)
        found |= new
        frontier = new
    return found


def faces(c: Polycone) -> list[Polycone]:
    out = [Polycone(c.ambient_dim, tuple(c.rays[i] for i in sorted(s))) for s in face_ray_sets(c.rays, c.ambient_dim)]
    return sorted(out, key=lambda p: (len(p.rays), p.rays))


# ------------------------------------------------------------------- fans


@dataclass(frozen=True)
class FanFlags:
    complete: bool
    full: bool
    relatively_full_dimensional: bool
    relatively_skeletal_complete: bool
    simplicial: bool
    regular: bool
    affine: bool
    dim: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


@dataclass(frozen=True, eq=False)
class Fan:
    """A validated fan. Build it with :func:`validate_fan` or :meth:`from_rays`."""

    ambient_dim: int
    rays: tuple[Vector, ...]
    max_cones: tuple[frozenset[int], ...]
    cones: tuple[frozenset[int], ...] = field(repr=False)
    name: Optional[str] = field(default=None, compare=False)

    @classmethod
    def from_rays(cls, rays: Sequence[Sequence[int]], cones: Sequence[Iterable[int]], dim: Optional[int] = None,
                  name: Optional[str] = None) -> "Fan":
        rays = [tuple(int(x) for x in r) for r in rays]
        if dim is None:
            if not rays:
                raise ValueError("dimension needed for the empty fan")
            dim = len(rays[0])
        return _validate(dim, rays, [frozenset(c) for c in cones], name)

    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return (self.ambient_dim, self.rays, self.max_cones) == (other.ambient_dim, other.rays, other.max_cones)

    def __hash__(self):
        return hash((self.ambient_dim, self.rays, self.max_cones))

    def cone(self, idx: Iterable[int]) -> Polycone:
        return Polycone(self.ambient_dim, tuple(sorted(self.rays[i] for i in idx)))

    def cone_dim(self, idx: Iterable[int]) -> int:
        r = [self.rays[i] for i in idx]
        return rank(r) if r else 0

    @property
    def dim(self) -> int:
        return rank(self.rays) if self.rays else 0

    @property
    def face_lattice(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        return [(t, s) for s in self.cones for t in self.cones if t <= s]

    def faces_of(self, sigma: frozenset[int]) -> list[frozenset[int]]:
        return [t for t in self.cones if t <= sigma]

    def label(self, sigma: Iterable[int]) -> str:
        return "{" + ",".join(str(i) for i in sorted(sigma)) + "}"


def validate_fan(max_cones: Sequence[Polycone]) -> Fan:
    """Fan generated by the given cones; rays numbered by first appearance."""
    if not max_cones:
        raise ValueError("need at least one cone (use Fan.from_rays for an explicit empty fan)")
    dim = max_cones[0].ambient_dim
    rays: list[Vector] = []
    cones = []
    for c in max_cones:
        idx = set()
        for r in c.rays:
            if r not in rays:
                rays.append(r)
            idx.add(rays.index(r))
        cones.append(frozenset(idx))
    return _validate(dim, rays, cones, None)


def _validate(dim: int, rays: list[Vector], cones: list[frozenset[int]], name) -> Fan:
    for r in rays:
        if len(r) != dim:
            raise ValueError(f"ray {r} does not live in Z^{dim}")
        if vec_gcd(r) != 1:
            raise ValueError(f"ray {r} is not primitive")
    if len(set(rays)) != len(rays):
        raise ValueError("duplicate rays")
    used = set()
    face_sets: dict[frozenset[int], set[frozenset[int]]] = {}
    for c in cones:
        if not all(0 <= i < len(rays) for i in c):
            raise ValueError(f"cone {sorted(c)} references a missing ray")
        gens = [rays[i] for i in sorted(c)]
        pc = Polycone.from_generators(gens, dim)
        if set(pc.rays) != set(gens):
            raise InvalidCone(f"cone {sorted(c)} lists rays that are not extremal")
        order = sorted(c)
        local = face_ray_sets(gens, dim)
        face_sets[c] = {frozenset(order[i] for i in s) for s in local}
        used |= c
    if used != set(range(len(rays))):
        raise ValueError(f"rays {sorted(set(range(len(rays))) - used)} belong to no cone")
    maximal = [c for c in dict.fromkeys(cones) if not any(c < d for d in cones)]
    for a, b in itertools.combinations(maximal, 2):
        _check_pair(dim, rays, a, b, face_sets)
    all_cones = set()
    for c in maximal:
        all_cones |= face_sets[c]
    if not maximal:
        all_cones = {frozenset()}
    ordered = sorted(all_cones, key=lambda s: (len(s), sorted(s)))
    return Fan(dim, tuple(rays), tuple(maximal), tuple(ordered), name)


def _check_pair(dim, rays, a, b, face_sets) -> None:
    ineq = []
    for idx in (a, b):
        d = dual_cone([rays[i] for i in idx], dim)
        ineq += list(d.rays)
        for e in d.lineality:
            ineq += [e, tuple(-x for x in e)]
    meet = cone_from_inequalities(ineq, dim)
    shared = a & b
    shared_rays = {rays[i] for i in shared}
    if meet.lineality:
        raise IntersectionNotFace(sorted(a), sorted(b), meet.lineality[0])
    for r in meet.rays:
        if r not in shared_rays:
            raise IntersectionNotFace(sorted(a), sorted(b), r)
    if shared not in face_sets[a] or shared not in face_sets[b] or len(meet.rays) != len(shared):
        witness = tuple(sum(rays[i][j] for i in shared) for j in range(dim))
        raise IntersectionNotFace(sorted(a), sorted(b), witness)


def classify_fan(f: Fan) -> FanFlags:
    n = f.ambient_dim
    dim = f.dim
    cone_dims = {c: f.cone_dim(c) for c in f.cones}
    simplicial = all(cone_dims[c] == len(c) for c in f.cones)
    regular = simplicial and all(f.cone(c).is_regular for c in f.max_cones)
    full = dim == n
    rel_full = all(cone_dims[c] == dim for c in f.max_cones)
    hull = dual_cone(f.rays, n) if f.rays else None
    rel_skel = hull is None or not hull.rays
    complete = full and rel_full and _facets_paired(f, cone_dims)
    return FanFlags(
        complete=complete,
        full=full,
        relatively_full_dimensional=rel_full,
        relatively_skeletal_complete=rel_skel,
        simplicial=simplicial,
        regular=regular,
        affine=len(f.max_cones) <= 1,
        dim=dim,
    )


def _facets_paired(f: Fan, cone_dims) -> bool:
    n = f.ambient_dim
    if n == 0:
        return True
    counts: dict[frozenset[int], int] = {}
    for s in f.max_cones:
        for t in f.faces_of(s):
            if cone_dims[t] == n - 1:
                counts[t] = counts.get(t, 0) + 1
    return bool(f.max_cones) and all(v == 2 for v in counts.values())


def full_fan_associated(f: Fan) -> tuple[Fan, list[list[int]]]:
    """Fan re-expressed in a basis of ``N ∩ span(fan)``.

    Returns the new fan and the ``n x dim`` matrix whose columns are the
    chosen basis; ray ``i`` of the new fan maps to ray ``i`` of ``f``.
    """
    n = f.ambient_dim
    if f.dim == n:
        return f, [[int(i == j) for j in range(n)] for i in range(n)]
    basis = saturation(list(f.rays), n)
    B = transpose(basis, n) if basis else [[] for _ in range(n)]
    new_rays = []
    for r in f.rays:
        x = solve_integer(B, r, len(basis))
        assert x is not None
        new_rays.append(x)
    g = Fan.from_rays(new_rays, f.max_cones, len(basis), name=f.name)
    return g, B


# --------------------------------------------------------- random fans


def _cross(u, v) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _angle_cmp(u, v) -> int:
    hu = 0 if (u[1] > 0 or (u[1] == 0 and u[0] > 0)) else 1
    hv = 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1
    if hu != hv:
        return hu - hv
    c = _cross(u, v)
    return -1 if c > 0 else (1 if c < 0 else 0)


def _random_primitive(rng: random.Random, dim: int, bound: int) -> Vector:
    while True:
        v = tuple(rng.randint(-bound, bound) for _ in range(dim))
        if any(v):
            return primitive_ray(v)


def generate_random_fan(seed: int, dim: int, max_rays: int = 6, complete: bool = False) -> Fan:
    """Deterministic random fan.

    dim 1: one of the three one-dimensional fans.
    dim 2: random primitive rays sorted by angle; the 2-cones between
    angular neighbours (less than a half-turn apart), then a random subset.
    dim 3: cones over the facets of a random lattice polytope containing the
    origin in its interior, then a random subset of the face poset.
    """
    rng = random.Random(seed)
    if dim == 1:
        choice = 2 if complete else rng.randrange(3)
        if choice == 0:
            return Fan.from_rays([], [frozenset()], 1)
        if choice == 1:
            return Fan.from_rays([(rng.choice([1, -1]),)], [[0]], 1)
        return Fan.from_rays([(1,), (-1,)], [[0], [1]], 1)
    if dim == 2:
        return _random_fan_2d(rng, max(3, max_rays), complete)
    if dim == 3:
        return _random_fan_3d(rng, max(4, max_rays), complete)
    raise ValueError("random fans are only generated in dimensions 1, 2, 3")


def _random_fan_2d(rng: random.Random, max_rays: int, complete: bool) -> Fan:
    while True:
        k = rng.randint(3 if complete else 2, max_rays)
        rays = sorted({_random_primitive(rng, 2, 3) for _ in range(k)}, key=functools.cmp_to_key(_angle_cmp))
        pairs = [(i, (i + 1) % len(rays)) for i in range(len(rays))]
        two_cones = [p for p in pairs if len(rays) > 1 and _cross(rays[p[0]], rays[p[1]]) > 0]
        if complete:
            if len(two_cones) == len(rays) and len(rays) >= 3:
                return Fan.from_rays(rays, two_cones, 2)
            continue
        chosen = [c for c in two_cones if rng.random() < 0.6]
        covered = {i for c in chosen for i in c}
        cones = [list(c) for c in chosen] + [[i] for i in range(len(rays)) if i not in covered and rng.random() < 0.7]
        if not cones:
            cones = [[0]]
        used = sorted({i for c in cones for i in c})
        remap = {old: new for new, old in enumerate(used)}
        return Fan.from_rays([rays[i] for i in used], [[remap[i] for i in c] for c in cones], 2)


def _random_fan_3d(rng: random.Random, max_rays: int, complete: bool) -> Fan:
    while True:
        k = rng.randint(4, max(4, max_rays))
        pts = list({tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(k)} - {(0, 0, 0)})
        if len(pts) < 4:
            continue
        d = dual_cone(pts, 3)
        if d.rays or d.lineality:
            continue  # origin not interior
        facets = []
        for a, b, c in itertools.combinations(pts, 3):
            u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
            v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
            nrm = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
            if not any(nrm):
                continue
            off = dot(nrm, a)
            if off < 0:
                nrm, off = tuple(-x for x in nrm), -off
            if off == 0 or any(dot(nrm, q) > off for q in pts):
                continue
            on = frozenset(q for q in pts if dot(nrm, q) == off)
            facets.append(on)
        facets = list(dict.fromkeys(facets))
        cone_rays = [Polycone.from_generators(f, 3).rays for f in facets]
        rays = sorted({r for cr in cone_rays for r in cr})
        cones = [sorted(rays.index(r) for r in cr) for cr in cone_rays]
        fan = Fan.from_rays(rays, cones, 3)
        if complete:
            return fan
        pool = [c for c in fan.cones if c]
        chosen = [c for c in pool if rng.random() < 0.25] or [rng.choice(pool)]
        used = sorted({i for c in chosen for i in c})
        remap = {old: new for new, old in enumerate(used)}
        return Fan.from_rays([rays[i] for i in used], [[remap[i] for i in c] for c in chosen], 3)


def euclid_norm2(v: Sequence[int]) -> int:
    return sum(x * x for x in v)


def gcd_list(v: Sequence[int]) -> int:
    return functools.reduce(math.gcd, v, 0)
