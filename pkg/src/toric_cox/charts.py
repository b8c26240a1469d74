"""Charts of the Cox scheme, sheaf data of graded submodules, twist modules.

Chart ``sigma`` is the spectrum of the degree-zero part of the Cox ring
with ``zhat_sigma`` inverted. Its monoid of exponents is
``{x in ker(a) : x_rho >= 0 for rho in sigma}``; the twist module in
degree ``alpha`` has the exponents ``{x : a(x) = alpha, x_rho >= 0 on sigma}``.
Everything here is monomial, so all computations are lattice point counts
inside ``Z^{rays}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cones import Fan, Polycone, dual_cone
from .graded import (
    CoxRing,
    GradedSubmodule,
    chart_ideal,
    cox_ring,
    intersect,
    irrelevant_ideal,
    saturate,
)
from .lattice import (
    Subgroup,
    Vector,
    dot,
    hermite_normal_form,
    rational_rank,
    reduce_mod_lattice,
    transpose,
)
from .picard import (
    FanDiagram,
    _ker_a_basis,
    build_diagram,
    normal_form_vp,
    picard_group,
    virtual_polytope_for,
)
from .semigroups import hilbert_basis, lattice_points, module_generators, split_lineality


# ------------------------------------------------------------ monoids


@dataclass(frozen=True)
class ChartMonoid:
    cone: frozenset
    hilbert_basis: tuple[Vector, ...]
    units: tuple[Vector, ...]
    stable: bool

    def contains(self, x: Sequence[int], d: FanDiagram) -> bool:
        return all(x[i] >= 0 for i in self.cone) and not any(d.degree(x))


def _ker_a(d: FanDiagram) -> list[Vector]:
    return _ker_a_basis(d)


def _to_z(K: Sequence[Vector], y: Sequence[int]) -> Vector:
    k = len(K[0]) if K else 0
    return tuple(sum(y[j] * K[j][i] for j in range(len(K))) for i in range(k))


def chart_monoid(d: FanDiagram, sigma: Iterable[int]) -> ChartMonoid:
    sigma = frozenset(sigma)
    K = _ker_a(d)
    k = d.num_rays
    if not K:
        return ChartMonoid(sigma, (), (), True)
    KT = transpose(K, k)
    G = [KT[i] for i in sorted(sigma)]
    hb = hilbert_basis(G, len(K), verify=True)
    units = tuple(hermite_normal_form([_to_z(K, u) for u in hb.units]))
    basis = tuple(sorted(reduce_mod_lattice(_to_z(K, y), units) for y in hb.basis))
    return ChartMonoid(sigma, basis, units, hb.stable)


def dual_monoid(sigma: Polycone) -> tuple[tuple[Vector, ...], tuple[Vector, ...]]:
    """``(units, basis)`` of ``sigma-dual ∩ M``."""
    n = sigma.ambient_dim
    hb = hilbert_basis([list(r) for r in sigma.rays], n) if sigma.rays else hilbert_basis([], n)
    return hb.units, hb.basis


def compare_cox_toric(d: FanDiagram) -> dict:
    """Check that ``c`` maps each dual monoid onto the chart monoid."""
    f = d.fan
    kernel_rank = f.ambient_dim - f.dim
    charts = {}
    for s in f.cones:
        cm = chart_monoid(d, s)
        units, basis = dual_monoid(f.cone(s))
        img_units = hermite_normal_form([d.c(u) for u in units])
        img_basis = sorted({reduce_mod_lattice(d.c(b), cm.units) for b in basis} - {tuple([0] * d.num_rays)})
        charts[f.label(s)] = tuple(img_units) == cm.units and tuple(img_basis) == cm.hilbert_basis
    full = kernel_rank == 0
    out = {"verdict": "isomorphic" if full and all(charts.values()) else ("not_full" if not full else "mismatch"),
           "kernel_rank": kernel_rank, "charts": charts}
    return out


# ------------------------------------------------------------ sheaves


@dataclass(frozen=True, eq=False)
class SheafData:
    representative: GradedSubmodule
    chart_witnesses: tuple[GradedSubmodule, ...]

    def consistent(self) -> bool:
        meet = self.chart_witnesses[0]
        for w in self.chart_witnesses[1:]:
            meet = intersect(meet, w)
        return meet == self.representative

    def __eq__(self, other):
        if not isinstance(other, SheafData):
            return NotImplemented
        return self.representative == other.representative


def sheaf_of(n: GradedSubmodule) -> SheafData:
    r = n.ring
    rep = saturate(n, irrelevant_ideal(r))
    wits = tuple(saturate(n, chart_ideal(r, s)) for s in r.diagram.fan.max_cones)
    return SheafData(rep, wits)


def xi_equal(n: GradedSubmodule, h: GradedSubmodule) -> bool:
    return sheaf_of(n).representative == sheaf_of(h).representative


def xi_equal_chartwise(n: GradedSubmodule, h: GradedSubmodule) -> bool:
    a, b = sheaf_of(n), sheaf_of(h)
    return all(x == y for x, y in zip(a.chart_witnesses, b.chart_witnesses))


def saturated_preimage(s: SheafData) -> GradedSubmodule:
    return s.representative


# ------------------------------------------------------- twist modules


@dataclass(frozen=True)
class TwistModule:
    cone: frozenset
    alpha: Vector
    generators: tuple[Vector, ...]
    units: tuple[Vector, ...]
    free_generator: Optional[Vector]

    @property
    def is_free_rank_one(self) -> bool:
        return self.free_generator is not None and len(self.generators) == 1


def _twist_system(d: FanDiagram, sigma, alpha):
    K = _ker_a(d)
    k = d.num_rays
    x0 = d.A.lift(d.A.reduce(alpha))
    KT = transpose(K, k) if K else [[] for _ in range(k)]
    return K, KT, x0


def twist_exponents(d: FanDiagram, sigma, alpha) -> tuple[list[Vector], tuple[Vector, ...]]:
    """Minimal generators and unit lattice of ``S_{sigma, alpha}``."""
    sigma = frozenset(sigma)
    K, KT, x0 = _twist_system(d, sigma, alpha)
    if not K:
        ok = all(x0[i] >= 0 for i in sigma)
        return ([tuple(x0)] if ok else []), ()
    G = [KT[i] for i in sorted(sigma)]
    b = [-x0[i] for i in sorted(sigma)]
    ys = module_generators(G, b, len(K))
    sp = split_lineality(G, len(K)) if G else None
    units = tuple(hermite_normal_form([_to_z(K, u) for u in sp.units])) if sp else tuple(K)
    gens = sorted(reduce_mod_lattice(tuple(a + c for a, c in zip(x0, _to_z(K, y))), units) for y in ys)
    return gens, units


def normal_form_generator(d: FanDiagram, sigma, alpha) -> Vector:
    """``d(p)`` for the virtual polytope of class ``alpha`` normalised at ``sigma``."""
    vp = normal_form_vp(virtual_polytope_for(d, alpha), frozenset(sigma))
    return vp.d_vector()


def twist_module(d: FanDiagram, sigma, alpha) -> TwistModule:
    sigma = frozenset(sigma)
    alpha = d.A.reduce(alpha)
    gens, units = twist_exponents(d, sigma, alpha)
    free = None
    if picard_group(d).contains(alpha):
        g = normal_form_generator(d, sigma, alpha)
        free = reduce_mod_lattice(g, units)
    return TwistModule(sigma, alpha, tuple(gens), units, free)


def invertibility_check(d: FanDiagram, alpha) -> bool:
    """True when every maximal chart has the normal-form monomial as sole generator."""
    alpha = d.A.reduce(alpha)
    if not picard_group(d).contains(alpha):
        return False
    for s in d.fan.max_cones:
        t = twist_module(d, s, alpha)
        if not (t.is_free_rank_one and t.generators[0] == t.free_generator):
            return False
    return True


def _factor_through(d: FanDiagram, sigma, alpha, beta, target: Sequence[int]) -> Optional[tuple[Vector, Vector]]:
    """``x`` of degree ``alpha`` and ``target - x`` of degree ``beta``, both
    nonnegative on ``sigma``; found by enumerating the bounded slice."""
    K, KT, x0 = _twist_system(d, sigma, alpha)
    idx = sorted(sigma)
    if not K:
        x = tuple(x0)
        y = tuple(t - v for t, v in zip(target, x))
        ok = all(0 <= x[i] <= target[i] for i in idx) and d.degree(y) == d.A.reduce(beta)
        return (x, y) if ok else None
    G = [KT[i] for i in idx] + [[-v for v in KT[i]] for i in idx]
    b = [-x0[i] for i in idx] + [x0[i] - target[i] for i in idx]
    sp = split_lineality(G, len(K))
    red = [list(r) for r in sp.reduced]
    if sp.rank == 0:
        pts = [()] if all(v <= 0 for v in b) else []
    else:
        pts = lattice_points(red, b, sp.rank)
    for p in pts:
        y = sp.lift(p)
        x = tuple(a + c for a, c in zip(x0, _to_z(K, y)))
        rest = tuple(t - v for t, v in zip(target, x))
        if d.degree(rest) == d.A.reduce(beta):
            return x, rest
    return None


def strongly_graded_check(d: FanDiagram, sigma, pairs: Sequence[tuple[Sequence[int], Sequence[int]]]) -> bool:
    """For each ``(alpha, beta)``: every generator of ``S_{sigma,alpha+beta}``
    is a product of a degree ``alpha`` and a degree ``beta`` element."""
    A = d.A
    for alpha, beta in pairs:
        target = twist_exponents(d, sigma, A.add(alpha, beta))[0]
        for t in target:
            if _factor_through(d, sigma, alpha, beta, t) is None:
                return False
    return True


# ---------------------------------------------------------- gluing


def glue_data(d: FanDiagram, sigma, tau) -> dict:
    """``p``, ``q``, ``l`` with ``q p = zhat_sigma^l`` (chart ``tau``)."""
    f = d.fan
    sigma, tau = frozenset(sigma), frozenset(tau)
    n = f.ambient_dim
    meet = sigma & tau
    dual = dual_cone([f.rays[i] for i in sorted(tau)], n)
    u = [0] * n
    for g in dual.generators:
        if all(dot(g, f.rays[i]) == 0 for i in meet):
            u = [a + b for a, b in zip(u, g)]
    assert {i for i in tau if dot(u, f.rays[i]) == 0} == set(meet)
    p = d.c(u)
    outside_sigma = [i for i in tau if i not in sigma]
    l = max([1] + [p[i] for i in outside_sigma])
    q = []
    for i in range(len(f.rays)):
        if i not in tau and i not in sigma:
            q.append(l - p[i])
        elif i in tau and i not in sigma:
            q.append(l - p[i])
        elif i not in tau:
            q.append(-p[i])
        else:
            q.append(0)
    return {"u": tuple(u), "p": p, "q": tuple(q), "l": l}


def glue_check(d: FanDiagram) -> bool:
    f = d.fan
    A = d.A
    for s in f.max_cones:
        zs = tuple(0 if i in s else 1 for i in range(len(f.rays)))
        for t in f.max_cones:
            g = glue_data(d, s, t)
            p, q, l = g["p"], g["q"], g["l"]
            if tuple(a + b for a, b in zip(p, q)) != tuple(l * z for z in zs):
                return False
            if any(d.degree(p)) or any(p[i] < 0 for i in t) or any(q[i] < 0 for i in t):
                return False
            if A.reduce(d.degree(q)) != A.scale(l, d.alpha_hat(s)):
                return False
    return True


# -------------------------------------------------- the tensor example


def _tensor_piece(d, chart, gens1, gens2, z):
    """Fine-degree ``z`` part of ``M1 ⊗ M2`` over the chart ring.

    Returns the valid generator pairs and the relation vectors.
    """
    def ok(v):
        return all(v[i] >= 0 for i in chart.cone) and not any(d.degree(v))

    def minus(a, *bs):
        return tuple(x - sum(b[i] for b in bs) for i, x in enumerate(a))

    pairs = [(i, j) for i in range(len(gens1)) for j in range(len(gens2)) if ok(minus(z, gens1[i], gens2[j]))]
    index = {p: n for n, p in enumerate(pairs)}
    rels = []
    for j in range(len(gens2)):
        col = [i for i in range(len(gens1)) if (i, j) in index]
        for a, b in zip(col, col[1:]):
            v = [0] * len(pairs)
            v[index[(a, j)]], v[index[(b, j)]] = 1, -1
            rels.append(v)
    for i in range(len(gens1)):
        row = [j for j in range(len(gens2)) if (i, j) in index]
        for a, b in zip(row, row[1:]):
            v = [0] * len(pairs)
            v[index[(i, a)]], v[index[(i, b)]] = 1, -1
            rels.append(v)
    return pairs, rels


def _locate(d, chart, gens, x) -> int:
    for i, g in enumerate(gens):
        v = tuple(a - b for a, b in zip(x, g))
        if all(v[r] >= 0 for r in chart.cone) and not any(d.degree(v)):
            return i
    raise ValueError(f"{x} is not in the module")


def tensor_map_report(d: FanDiagram, sigma, alpha, beta, element: Sequence[tuple[int, Vector, Vector]],
                      target: Optional[Vector] = None) -> dict:
    """Examine ``mu: S_{sigma,alpha} ⊗ S_{sigma,beta} -> S_{sigma,alpha+beta}``.

    ``element`` is a list of simple tensors ``(coeff, x, y)`` in one fine
    degree. Reports whether it is nonzero in the tensor product, whether it
    maps to zero, and whether ``target`` lies in the image of ``mu``.
    """
    chart = chart_monoid(d, sigma)
    g1 = twist_exponents(d, sigma, alpha)[0]
    g2 = twist_exponents(d, sigma, beta)[0]
    out: dict = {"generators_alpha": g1, "generators_beta": g2}
    if element:
        z = tuple(a + b for a, b in zip(element[0][1], element[0][2]))
        pairs, rels = _tensor_piece(d, chart, g1, g2, z)
        vec = [Fraction(0)] * len(pairs)
        image = Fraction(0)
        for c, x, y in element:
            assert tuple(a + b for a, b in zip(x, y)) == z
            i, j = _locate(d, chart, g1, x), _locate(d, chart, g2, y)
            vec[pairs.index((i, j))] += c
            image += c
        nonzero = rational_rank(rels + [vec]) > rational_rank(rels) if rels else any(vec)
        out.update({"degree": z, "pairs": pairs, "relations": rels, "coordinates": [str(v) for v in vec],
                    "nonzero_in_tensor": bool(nonzero), "maps_to_zero": image == 0})
    if target is not None:
        pairs, _ = _tensor_piece(d, chart, g1, g2, tuple(target))
        out["target"] = tuple(target)
        out["target_in_image"] = bool(pairs)
    return out


EX_3290 = ([(1, 0), (0, 1), (-2, -3)], [[0, 1], [1, 2], [2, 0]])


def delta_counterexample_check() -> dict:
    """The non-invertible twists on the fan with rays (1,0), (0,1), (-2,-3).

    On the chart where only ``Z_1`` is inverted (cone spanned by rays 0 and
    2) the multiplication ``S(1) ⊗ S(2) -> S(3)`` has a nonzero kernel
    element and misses ``Z_1``. For twists in Pic the same map is onto.
    """
    fan = Fan.from_rays(*EX_3290, name="ex-3.290")
    d = build_diagram(fan)
    sigma = frozenset({0, 2})
    # (Z_2 Z_0 Z_1^-1 * Z_2) ⊗ Z_0  -  Z_0^2 Z_1^-1 ⊗ Z_2^2
    element = [(1, (1, -1, 2), (1, 0, 0)), (-1, (2, -1, 0), (0, 0, 2))]
    rep = tensor_map_report(d, sigma, (1,), (2,), element, target=(0, 1, 0))
    rep["kernel_certificate"] = rep["nonzero_in_tensor"] and rep["maps_to_zero"]
    rep["image_certificate"] = not rep["target_in_image"]
    # independent reason: x = (0, t, 0) of degree 3 needs 3t = 3 with x in the image
    # only via pairs; none exist, and (0,1,0) itself has degree 3 so it is in S(3).
    rep["target_degree"] = d.degree((0, 1, 0))
    pic_ok = all(strongly_graded_check(d, s, [((6,), (6,)), ((0,), (6,))]) for s in fan.max_cones)
    rep["pic_twists_strongly_graded"] = pic_ok
    rep["ok"] = rep["kernel_certificate"] and rep["image_certificate"] and pic_ok
    return rep
