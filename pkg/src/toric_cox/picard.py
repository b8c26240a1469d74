"""The diagram of a fan and its Picard group.

``A = Z^{rays} / im(c)`` where ``c`` sends a character ``m`` to
``(rho(m))_rho``. The Picard group is computed twice:

* as the intersection of the subgroups ``A^sigma`` over maximal cones, and
* as virtual polytopes (one character per maximal cone, agreeing on shared
  rays) modulo local triviality and global characters, mapped into ``A``
  by ``p -> a(d(p))``.

:func:`fan_classification_theorems` compares diagram-side predicates with
the geometric ones from :mod:`toric_cox.cones`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .cones import Fan, FanFlags, classify_fan, dual_cone
from .lattice import (
    FinAbGroup,
    Subgroup,
    Vector,
    cokernel,
    coordinates_in,
    dot,
    hermite_normal_form,
    kernel_basis,
    rank,
    reduce_mod_lattice,
    solve_integer,
    subgroup_index,
    subgroup_intersection,
    transpose,
    zeros,
)


class TheoremViolation(AssertionError):
    def __init__(self, name: str, fan: Fan, detail: str = ""):
        self.name, self.fan = name, fan
        super().__init__(f"{name} fails on fan {fan.rays} / {[sorted(c) for c in fan.max_cones]} {detail}")


@dataclass(frozen=True, eq=False)
class FanDiagram:
    fan: Fan
    c_matrix: tuple[Vector, ...]
    A: FinAbGroup
    alpha: tuple[Vector, ...]

    @property
    def num_rays(self) -> int:
        return len(self.fan.rays)

    def degree(self, exponents: Sequence[int]) -> Vector:
        """``a(x)``: the class of an exponent vector."""
        return self.A.project(exponents)

    def alpha_hat(self, sigma) -> Vector:
        return self.degree([0 if i in sigma else 1 for i in range(self.num_rays)])

    def A_sigma(self, sigma) -> Subgroup:
        return Subgroup(self.A, [self.alpha[i] for i in range(self.num_rays) if i not in sigma])

    def c(self, m: Sequence[int]) -> Vector:
        return tuple(dot(r, m) for r in self.fan.rays)

    def character_lattice_kernel(self) -> list[Vector]:
        """``ker(c)``, i.e. characters vanishing on the fan's span."""
        return kernel_basis(list(self.c_matrix), self.fan.ambient_dim) if self.c_matrix else [
            tuple(int(i == j) for j in range(self.fan.ambient_dim)) for i in range(self.fan.ambient_dim)]


def build_diagram(f: Fan) -> FanDiagram:
    k = len(f.rays)
    c = tuple(tuple(r) for r in f.rays)
    A = cokernel([list(r) for r in c] if c else [], k)
    alpha = tuple(A.project(tuple(int(i == j) for j in range(k))) for i in range(k))
    d = FanDiagram(f, c, A, alpha)
    assert len(d.character_lattice_kernel()) == f.ambient_dim - f.dim
    return d


def picard_group(d: FanDiagram, all_cones: bool = False) -> Subgroup:
    """``Pic = intersection of A^sigma``; over all cones when asked."""
    cones = d.fan.cones if all_cones else d.fan.max_cones
    return subgroup_intersection([d.A_sigma(s) for s in cones])


def is_big(s: Subgroup) -> bool:
    return subgroup_index(s) != float("inf")


def is_small(s: Subgroup, d: FanDiagram) -> bool:
    return s.issubset(picard_group(d))


def cone_regularity_via_diagram(d: FanDiagram, sigma) -> str:
    sub = d.A_sigma(frozenset(sigma))
    if sub == Subgroup.whole(d.A):
        return "regular"
    if is_big(sub):
        return "simplicial_only"
    return "neither"


# ------------------------------------------------------ virtual polytopes


@dataclass(frozen=True, eq=False)
class VirtualPolytope:
    """A family ``sigma -> m_sigma`` over all cones of the fan."""

    diagram: FanDiagram
    m_family: dict

    def is_compatible(self) -> bool:
        f = self.diagram.fan
        for s in f.cones:
            for t in f.faces_of(s):
                diff = [a - b for a, b in zip(self.m_family[s], self.m_family[t])]
                if any(dot(f.rays[i], diff) for i in t):
                    return False
        return True

    def d_vector(self) -> Vector:
        """``(rho(m_rho))_rho``."""
        f = self.diagram.fan
        return tuple(dot(f.rays[i], self.m_family[frozenset([i])]) for i in range(len(f.rays)))

    def picard_class(self) -> Vector:
        return self.diagram.degree(self.d_vector())


def _perp_basis(d: FanDiagram, sigma) -> list[Vector]:
    n = d.fan.ambient_dim
    rows = [d.fan.rays[i] for i in sorted(sigma)]
    return kernel_basis(rows, n) if rows else [tuple(int(i == j) for j in range(n)) for i in range(n)]


def virtual_polytope_for(d: FanDiagram, alpha: Sequence[int]) -> VirtualPolytope:
    """A virtual polytope of class ``alpha``; ``alpha`` must lie in Pic.

    Writes ``alpha = a(r) = a(s^sigma)`` with ``s^sigma`` supported off
    ``sigma`` and solves ``c(m_sigma) = r - s^sigma``.
    """
    A, f = d.A, d.fan
    alpha = A.reduce(alpha)
    k = len(f.rays)
    r = A.lift(alpha)
    fam = {}
    for s in f.cones:
        outside = [i for i in range(k) if i not in s]
        cols = [list(d.alpha[i]) for i in outside]
        cols += [[dd if j == t else 0 for j in range(A.rank)] for t, dd in enumerate(A.invariant_factors)]
        mat = transpose(cols, A.rank) if cols else zeros(A.rank, 0)
        sol = solve_integer(mat, alpha, len(cols)) if A.rank else ()
        if sol is None:
            raise ValueError(f"{alpha} is not in the Picard group (fails on cone {sorted(s)})")
        svec = [0] * k
        for i, v in zip(outside, sol):
            svec[i] = v
        target = [a - b for a, b in zip(r, svec)]
        m = solve_integer([list(x) for x in f.rays], target, f.ambient_dim) if k else (0,) * f.ambient_dim
        assert m is not None
        fam[s] = m
    vp = VirtualPolytope(d, fam)
    assert vp.is_compatible() and vp.picard_class() == alpha
    return vp


def normal_form_vp(p: VirtualPolytope, omega) -> VirtualPolytope:
    """Translate so ``m_sigma = 0`` on faces of ``omega``, then reduce each
    ``m_sigma`` to its canonical representative modulo ``sigma-perp``."""
    omega = frozenset(omega)
    d = p.diagram
    if omega not in d.fan.cones:
        raise ValueError(f"{sorted(omega)} is not a cone of the fan")
    shift = p.m_family[omega]
    fam = {}
    for s, m in p.m_family.items():
        moved = tuple(a - b for a, b in zip(m, shift))
        fam[s] = reduce_mod_lattice(moved, _perp_basis(d, s))
    return VirtualPolytope(d, fam)


@dataclass(frozen=True)
class PicardComparison:
    group: FinAbGroup
    generator_images: tuple[Vector, ...]
    subgroup: Subgroup
    well_defined: bool
    onto: bool
    isomorphic: bool

    @property
    def ok(self) -> bool:
        return self.well_defined and self.onto and self.isomorphic


def picard_via_polytopes(d: FanDiagram) -> PicardComparison:
    """``Pbar / K`` from the compatibility equations, with the witness map.

    Variables are ``m_sigma`` for maximal ``sigma``. ``L`` is the lattice of
    families agreeing on shared rays; we quotient by the families that are
    locally trivial (``m_sigma`` in ``sigma-perp``) and by the diagonal.
    """
    f = d.fan
    n = f.ambient_dim
    maxc = list(f.max_cones)
    N = n * len(maxc)
    eqs = []
    for (a, s), (b, t) in itertools.combinations(enumerate(maxc), 2):
        for i in sorted(s & t):
            row = [0] * N
            for j in range(n):
                row[a * n + j] += f.rays[i][j]
                row[b * n + j] -= f.rays[i][j]
            eqs.append(row)
    L = kernel_basis(eqs, N) if eqs else [tuple(int(i == j) for j in range(N)) for i in range(N)]
    rels = []
    for a, s in enumerate(maxc):
        for v in _perp_basis(d, s):
            w = [0] * N
            w[a * n:(a + 1) * n] = v
            rels.append(tuple(w))
    for j in range(n):
        rels.append(tuple(int(x % n == j) for x in range(N)))
    coords = [coordinates_in(v, L) for v in rels]
    assert all(c is not None for c in coords)
    ell = len(L)
    group = cokernel(transpose(coords, ell) if coords and ell else zeros(ell, 0), ell)

    def image(vec: Sequence[int]) -> Vector:
        fam = [vec[a * n:(a + 1) * n] for a in range(len(maxc))]
        dv = []
        for i in range(len(f.rays)):
            a = next(a for a, s in enumerate(maxc) if i in s)
            dv.append(dot(f.rays[i], fam[a]))
        return d.degree(dv)

    def combine(y: Sequence[int]) -> Vector:
        return tuple(sum(y[i] * L[i][j] for i in range(ell)) for j in range(N))

    well_defined = all(not any(image(v)) for v in rels)
    images = []
    for g in range(group.rank):
        e = tuple(int(i == g) for i in range(group.rank))
        images.append(image(combine(group.lift(e))))
    sub = Subgroup(d.A, images) if images else Subgroup(d.A, [])
    pic = picard_group(d)
    onto = sub == pic
    abstract = pic.as_group()
    iso = (abstract.invariant_factors, abstract.free_rank) == (group.invariant_factors, group.free_rank)
    return PicardComparison(group, tuple(images), sub, well_defined, onto, iso)


# -------------------------------------------------------- degree monoid


@dataclass(frozen=True)
class DegreeMonoidInfo:
    generators: tuple[Vector, ...]
    sharp: bool
    all_alpha_nonzero: bool
    positive_support: tuple[int, ...]


def _positive_support(rows: Sequence[Sequence[int]], dim: int) -> set[int]:
    """Coordinates ``i`` with ``(R y)_i > 0`` for some ``y`` in ``{R y >= 0}``."""
    cone = dual_cone(rows, dim)
    support = set()
    for g in cone.rays:
        for i, r in enumerate(rows):
            if dot(r, g) > 0:
                support.add(i)
    return support


def degree_monoid_info(d: FanDiagram) -> DegreeMonoidInfo:
    """Sharpness of the monoid generated by the ``alpha_rho``.

    ``alpha_rho`` is a unit iff some ``z`` in ``ker(a)`` with ``z >= 0`` has
    ``z_rho > 0``. The monoid is sharp iff every such ``rho`` has
    ``alpha_rho = 0``. ``ker(a)`` is handled in the coordinates of its own
    lattice basis, independently of ``c``.
    """
    k = d.num_rays
    if k == 0:
        return DegreeMonoidInfo((), True, True, ())
    basis = _ker_a_basis(d)
    if basis:
        K = transpose(basis, k)  # k x r, z = K y
        support = _positive_support(K, len(basis))
    else:
        support = set()
    sharp = all(not any(d.alpha[i]) for i in support)
    return DegreeMonoidInfo(d.alpha, sharp, all(any(a) for a in d.alpha), tuple(sorted(support)))


def _ker_a_basis(d: FanDiagram) -> list[Vector]:
    k = d.num_rays
    A = d.A
    # a(z) = 0  <=>  (alpha-matrix) z in the relation lattice diag(d_i)
    cols = [list(a) for a in d.alpha]
    cols += [[dd if j == t else 0 for j in range(A.rank)] for t, dd in enumerate(A.invariant_factors)]
    if A.rank == 0:
        return [tuple(int(i == j) for j in range(k)) for i in range(k)]
    ker = kernel_basis(transpose(cols, A.rank), len(cols))
    return hermite_normal_form([w[:k] for w in ker])


def positive_relation_exists(d: FanDiagram) -> bool:
    """Whether ``sum lambda_rho rho = 0`` for some strictly positive ``lambda``."""
    k = d.num_rays
    if k == 0:
        return True
    rel = kernel_basis(transpose([list(r) for r in d.fan.rays], k), k)
    if not rel:
        return False
    K = transpose(rel, k)
    return _positive_support(K, len(rel)) == set(range(k))


# ------------------------------------------------------ theorem report


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    kind: str
    lhs: bool
    rhs: bool

    @property
    def holds(self) -> bool:
        if self.kind == "iff":
            return self.lhs == self.rhs
        return (not self.lhs) or self.rhs


def fan_classification_theorems(d: FanDiagram, flags: Optional[FanFlags] = None, raise_on_violation: bool = True) -> dict:
    f = d.fan
    flags = flags or classify_fan(f)
    pic = picard_group(d)
    whole = Subgroup.whole(d.A)
    pic_all = picard_group(d, all_cones=True)
    pic_group = pic.as_group()
    A_finite = d.A.free_rank == 0
    pic_big = is_big(pic)
    monoid = degree_monoid_info(d)
    rel_skel_relation = positive_relation_exists(d)
    checks = [
        TheoremCheck("Pic over maximal cones equals Pic over all cones", "iff", True, pic == pic_all),
        TheoremCheck("fan regular iff Pic = A", "iff", flags.regular, pic == whole),
        TheoremCheck("fan simplicial iff Pic big", "iff", flags.simplicial, pic_big),
        TheoremCheck("big small subgroup exists iff simplicial", "iff", pic_big, flags.simplicial),
        TheoremCheck("relatively full-dimensional implies Pic free", "implies",
                     flags.relatively_full_dimensional, pic_group.is_free),
        TheoremCheck("affine implies Pic = 0", "implies", flags.affine, pic.is_trivial),
        TheoremCheck("relatively skeletal complete iff positive relation among rays", "iff", flags.relatively_skeletal_complete, rel_skel_relation),
        TheoremCheck("positive relation iff degree monoid sharp with nonzero ray degrees", "iff", rel_skel_relation,
                     monoid.sharp and monoid.all_alpha_nonzero),
        TheoremCheck("relatively skeletal complete implies A free", "implies",
                     flags.relatively_skeletal_complete, d.A.is_free),
        TheoremCheck("relatively skeletal complete implies Pic free", "implies",
                     flags.relatively_skeletal_complete, pic_group.is_free),
        TheoremCheck("A finite implies simplicial", "implies", A_finite, flags.simplicial),
        TheoremCheck("simplicial and affine iff relatively full-dimensional and A finite", "iff",
                     flags.simplicial and flags.affine, flags.relatively_full_dimensional and A_finite),
        TheoremCheck("Pic = 0 iff affine (relatively full-dimensional simplicial fans)", "iff",
                     pic.is_trivial if (flags.relatively_full_dimensional and flags.simplicial) else flags.affine,
                     flags.affine),
    ]
    for s in f.cones:
        cone = f.cone(s)
        verdict = cone_regularity_via_diagram(d, s)
        label = f.label(s)
        checks.append(TheoremCheck(f"cone {label} regular iff A^sigma = A", "iff",
                                   cone.is_regular, verdict == "regular"))
        checks.append(TheoremCheck(f"cone {label} simplicial iff A^sigma big", "iff",
                                   cone.is_simplicial, verdict != "neither"))
    failures = [c for c in checks if not c.holds]
    if failures and raise_on_violation:
        raise TheoremViolation(failures[0].name, f, f"(lhs={failures[0].lhs}, rhs={failures[0].rhs})")
    return {
        "checks": [
            {"name": c.name, "kind": c.kind, "lhs": c.lhs, "rhs": c.rhs, "holds": c.holds} for c in checks
        ],
        "degree_monoid_sharp": monoid.sharp,
        "all_alpha_nonzero": monoid.all_alpha_nonzero,
        "A_free": d.A.is_free,
        "pic_free": pic_group.is_free,
        "pic_big": pic_big,
        "pic_equals_A": pic == whole,
        "all_hold": not failures,
    }
