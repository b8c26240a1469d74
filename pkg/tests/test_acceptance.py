"""Acceptance criteria, one test each. Every test records a PASS/FAIL line
that is printed in the terminal summary.

Independent oracles used here: cone regularity and simpliciality from
maximal minors and rational rank computed in this file; Picard groups by
the intersection route against the virtual-polytope route; chart monoids
and cohomology tables against frozen values derived by brute force.
"""

import itertools
import math
import random
import time
from fractions import Fraction
from math import comb

from toric_cox.charts import (
    chart_monoid,
    compare_cox_toric,
    delta_counterexample_check,
    sheaf_of,
    xi_equal,
    xi_equal_chartwise,
)
from toric_cox.cohomology import global_sections_check, serre_grothendieck_verify, sheaf_cohomology
from toric_cox.cones import Fan, classify_fan, generate_random_fan
from toric_cox.graded import (
    GradedSubmodule,
    cox_ring,
    irrelevant_ideal,
    is_torsion,
    saturate,
    saturate_chartwise,
)
from toric_cox.lattice import Subgroup, subgroup_index
from toric_cox.picard import (
    build_diagram,
    degree_monoid_info,
    picard_group,
    picard_via_polytopes,
    positive_relation_exists,
)


def corpus(n_per_dim=70):
    fans = []
    for dim in (1, 2, 3):
        for seed in range(n_per_dim):
            fans.append(generate_random_fan(seed, dim))
        for seed in range(8):
            fans.append(generate_random_fan(1000 + seed, dim, complete=True))
    return fans


# independent geometry ------------------------------------------------


def _qrank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rk = 0
    for col in range(len(a[0]) if a else 0):
        piv = next((i for i in range(rk, len(a)) if a[i][col]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for i in range(len(a)):
            if i != rk and a[i][col]:
                f = a[i][col] / a[rk][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def _det(a):
    if not a:
        return 1
    return sum((-1) ** j * a[0][j] * _det([r[:j] + r[j + 1:] for r in a[1:]]) for j in range(len(a)))


def cone_simplicial(rays):
    return not rays or _qrank(rays) == len(rays)


def cone_regular(rays, n):
    if not rays:
        return True
    if not cone_simplicial(rays):
        return False
    k = len(rays)
    g = 0
    for cols in itertools.combinations(range(n), k):
        g = math.gcd(g, _det([[r[c] for c in cols] for r in rays]))
    return g == 1


# criteria ------------------------------------------------------------


def test_criterion_01_fixture_picard_groups(diagrams, record):
    expected = {"ex-1.100a": ("Z/2", 1), "ex-1.100b": ("Z", 1), "ex-1.230": ("0", 1), "ex-3.290": ("Z", 6)}
    ok, slow = True, []
    for name, (grp, idx) in expected.items():
        t = time.perf_counter()
        d = build_diagram(diagrams[name].fan)
        pic = picard_group(d)
        ok &= pic.as_group().describe() == grp and subgroup_index(pic) == idx
        dt = time.perf_counter() - t
        if dt >= 1:
            slow.append(name)
    ok &= not slow
    record(1, ok, "Z/2, Z, 0, index 6" + (f" slow: {slow}" if slow else ""))
    assert ok


def test_criterion_02_two_route_picard(record):
    t = time.perf_counter()
    fans = corpus()
    bad = [f for f in fans if not picard_via_polytopes(build_diagram(f)).ok]
    dt = time.perf_counter() - t
    ok = len(fans) >= 200 and not bad and dt < 60
    record(2, ok, f"{len(fans)} fans, {len(bad)} disagreements, {dt:.1f}s")
    assert ok


def test_criterion_03_regularity_theorems(record):
    disagreements = 0
    fans = corpus()
    for f in fans:
        d = build_diagram(f)
        n = f.ambient_dim
        pic = picard_group(d)
        whole = Subgroup.whole(d.A)
        fan_regular = all(cone_regular([f.rays[i] for i in s], n) for s in f.max_cones)
        fan_simplicial = all(cone_simplicial([f.rays[i] for i in s]) for s in f.max_cones)
        disagreements += fan_regular != (pic == whole)
        disagreements += fan_simplicial != (subgroup_index(pic) != math.inf)
        for s in f.cones:
            rays = [f.rays[i] for i in s]
            As = d.A_sigma(s)
            disagreements += cone_regular(rays, n) != (As == whole)
            disagreements += cone_simplicial(rays) != (subgroup_index(As) != math.inf)
    record(3, disagreements == 0, f"{len(fans)} fans, {disagreements} disagreements")
    assert disagreements == 0


def test_criterion_04_degree_monoid(diagrams, record):
    fans = corpus()
    # complete fan whose rays span an index 2 sublattice of Z^2
    square = Fan.from_rays([(1, 1), (-1, 1), (-1, -1), (1, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])
    equiv_bad = pic_bad = 0
    a_torsion = []
    for f in fans + [square]:
        d = build_diagram(f)
        info = degree_monoid_info(d)
        i = classify_fan(f).relatively_skeletal_complete
        ii = positive_relation_exists(d)
        iii = info.sharp and info.all_alpha_nonzero
        equiv_bad += not (i == ii == iii)
        if i:
            pic_bad += not picard_group(d).as_group().is_free
            # torsion of A is Z^n modulo the span of the rays
            if not d.A.is_free:
                a_torsion.append(f)
    a, b = diagrams["ex-1.400a"], diagrams["ex-1.400b"]
    ia, ib = degree_monoid_info(a), degree_monoid_info(b)
    non_converse_a = ia.sharp and a.A.is_trivial and not classify_fan(a.fan).relatively_skeletal_complete
    non_converse_b = (not ib.sharp) and b.A.is_free and b.A.describe() == "Z"
    sq = build_diagram(square)
    ok = equiv_bad == 0 and pic_bad == 0 and not a_torsion and non_converse_a and non_converse_b
    record(4, ok, f"{len(fans) + 1} fans: equivalence {equiv_bad} disagreements, Pic free {pic_bad} failures, "
                  f"A free {len(a_torsion)} failures (e.g. rays (+-1,+-1): A = {sq.A.describe()}); "
                  f"ex-1.400a/b non-converses {non_converse_a}/{non_converse_b}")
    # the A freeness claim does not hold when the rays span a proper sublattice
    assert equiv_bad == 0 and pic_bad == 0 and non_converse_a and non_converse_b
    n_torsion = len(a_torsion)
    assert n_torsion == 0, f"{n_torsion} relatively skeletal complete fans have torsion in A"


def test_criterion_05_chart_monoid_ex3290(diagrams, record):
    cm = chart_monoid(diagrams["ex-3.290"], {0, 2})
    # Z_3^3 Z_2^-1, Z_3 Z_1 Z_2^-1, Z_1^3 Z_2^-2 (1-based ray names)
    ok = set(cm.hilbert_basis) == {(0, -1, 3), (1, -1, 1), (3, -2, 0)}
    record(5, ok, f"generators {sorted(cm.hilbert_basis)}")
    assert ok


def _non_full_fans():
    out = []
    for seed in range(12):
        f = generate_random_fan(seed, 2)
        out.append(Fan.from_rays([r + (0,) for r in f.rays], f.max_cones, 3))
    for seed in range(6):
        f = generate_random_fan(seed, 1)
        if f.rays:
            out.append(Fan.from_rays([r + (0, 0) for r in f.rays], f.max_cones, 3))
            out.append(Fan.from_rays([(r[0], r[0]) for r in f.rays], f.max_cones, 2))
    for seed in range(6):
        f = generate_random_fan(seed, 2)
        # embed into Z^4 through a non-coordinate sublattice
        out.append(Fan.from_rays([(a, b, a + b, 0) for a, b in f.rays], f.max_cones, 4))
    return out


def test_criterion_06_cox_vs_toric(record):
    full_bad = 0
    full = [f for f in corpus(25) if f.dim == f.ambient_dim]
    for f in full:
        full_bad += compare_cox_toric(build_diagram(f))["verdict"] != "isomorphic"
    nonfull = [f for f in _non_full_fans() if f.dim < f.ambient_dim]
    nf_bad = 0
    for f in nonfull:
        d = build_diagram(f)
        out = compare_cox_toric(d)
        nf_bad += out["kernel_rank"] != f.ambient_dim - _qrank(list(f.rays)) or out["verdict"] != "not_full"
        nf_bad += len(d.character_lattice_kernel()) != out["kernel_rank"]
    ok = full_bad == 0 and nf_bad == 0 and len(nonfull) >= 20
    record(6, ok, f"{len(full)} full fans isomorphic, {len(nonfull)} non-full fans, {full_bad + nf_bad} failures")
    assert ok


def test_criterion_07_delta_counterexample(record):
    rep = delta_counterexample_check()
    ok = rep["kernel_certificate"] and rep["image_certificate"]
    record(7, ok, f"kernel witness nonzero={rep['nonzero_in_tensor']} maps to 0={rep['maps_to_zero']}, "
                  f"Z_2 outside image={not rep['target_in_image']}")
    assert ok


def _random_modules(ring, rng, count):
    out = []
    while len(out) < count:
        rank = rng.choice([1, 1, 2])
        shifts = [ring.diagram.A.zero()] * rank
        terms = []
        for _ in range(rng.randint(1, 4)):
            e = tuple(rng.randint(0, 4) for _ in range(ring.nvars))
            if ring.in_B(ring.degree(e)):
                terms.append((rng.randrange(rank), e))
        if terms:
            out.append(GradedSubmodule.monomial(ring, shifts, terms))
    return out


def _rings(diagrams):
    p2, e = diagrams["p2"], diagrams["ex-3.290"]
    return [cox_ring(p2), cox_ring(e), cox_ring(e, Subgroup(e.A, [(6,)]))]


def test_criterion_08_saturation_identities(diagrams, record):
    t = time.perf_counter()
    rng = random.Random(2024)
    bad, total = 0, 0
    for ring in _rings(diagrams):
        I = irrelevant_ideal(ring)
        for n in _random_modules(ring, rng, 40):
            total += 1
            sat = saturate(n, I)
            bad += saturate(sat, I) != sat
            bad += not n.issubset(sat)
            bad += saturate_chartwise(n) != sat
    dt = time.perf_counter() - t
    ok = bad == 0 and total >= 100 and dt < 120
    record(8, ok, f"{total} submodules, {bad} failures, {dt:.1f}s")
    assert ok


def test_criterion_09_sheaf_correspondence(diagrams, record):
    rng = random.Random(99)
    bad, pairs, torsion_seen = 0, 0, 0
    for ring in _rings(diagrams):
        I = irrelevant_ideal(ring)
        mods = _random_modules(ring, rng, 12)
        by_rank = {}
        for m in mods:
            by_rank.setdefault(m.rank, []).append(m)
        for group in by_rank.values():
            cands = group + [saturate(m, I) for m in group]
            for a, b in itertools.combinations(cands, 2):
                pairs += 1
                e1 = xi_equal(a, b)
                e2 = saturate(a, I) == saturate(b, I)
                e3 = xi_equal_chartwise(a, b)
                bad += not (e1 == e2 == e3)
        # torsion quotient <-> zero sheaf (B small for these rings except ex-3.290 with B = A)
        small = ring.grading_group.issubset(picard_group(ring.diagram))
        k = ring.nvars
        powers = GradedSubmodule.monomial(ring, [ring.diagram.A.zero()],
                                          [(0, tuple(6 * int(i == j) for j in range(k))) for i in range(k)])
        for n in mods + [powers]:
            whole = GradedSubmodule.ambient(ring, n.shifts)
            tors = is_torsion(n, I)
            zero_sheaf = xi_equal(n, whole)
            charts_zero = all(w.is_whole() for w in sheaf_of(n).chart_witnesses)
            torsion_seen += tors
            bad += tors and not zero_sheaf
            if small:
                bad += zero_sheaf != tors or charts_zero != tors
    ok = bad == 0 and torsion_seen > 0
    record(9, ok, f"{pairs} pairs, {torsion_seen} torsion quotients, {bad} failures")
    assert ok


def test_criterion_10_cohomology_tables(diagrams, record):
    t = time.perf_counter()
    p2, p1 = diagrams["p2"], diagrams["p1"]
    ok = True
    for d in range(0, 6):
        h, st, _ = sheaf_cohomology(p2, [], (d,))
        ok &= st and h == (comb(d + 2, 2), 0, 0)
    for d in range(3, 7):
        h, st, _ = sheaf_cohomology(p2, [], (-d,))
        ok &= st and h == (0, 0, comb(d - 1, 2))
    for d in range(2, 6):
        h, st, _ = sheaf_cohomology(p1, [], (-d,))
        ok &= st and h == (0, d - 1)
    dt = time.perf_counter() - t
    ok &= dt < 30
    record(10, ok, f"P2 and P1 tables exact and box-stable, {dt:.2f}s")
    assert ok


def test_criterion_11_serre_grothendieck(diagrams, record):
    t = time.perf_counter()
    cases = [
        ("p1", [(0,)], [(a,) for a in range(-6, 7)]),
        ("p1", [(1,), (-4,)], [(a,) for a in range(-6, 7)]),
        ("p2", [(0,)], [(a,) for a in range(-6, 7)]),
        ("p2", [(1,), (-4,)], [(a,) for a in range(-6, 7)]),
        ("hirzebruch-a", [(0, 0)], [(a, b) for a in range(-3, 4) for b in range(-3, 4)]),
        ("hirzebruch-a", [(1, 0), (-4, 0)], [(a, b) for a in range(-3, 4) for b in range(-3, 4)]),
    ]
    violations, rows = 0, 0
    for name, shifts, twists in cases:
        rep = serre_grothendieck_verify(diagrams[name], shifts, twists, raise_on_violation=False)
        violations += len(rep.violations)
        rows += len(rep.rows)
    dt = time.perf_counter() - t
    ok = violations == 0 and dt < 300
    record(11, ok, f"{rows} (fan, module, twist) rows, {violations} violations, {dt:.1f}s")
    assert ok


def test_criterion_12_global_sections(diagrams, record):
    ranges = {"p1": [(a,) for a in range(-3, 8)], "p2": [(a,) for a in range(-3, 7)],
              "ex-3.290": [(a,) for a in range(-3, 13)],
              "hirzebruch-a": [(a, b) for a in range(-2, 4) for b in range(-2, 4)]}
    bad, n = 0, 0
    for name, twists in ranges.items():
        d = diagrams[name]
        for t in twists:
            n += 1
            bad += not global_sections_check(d, t)
        bad += sheaf_cohomology(d, [], d.A.zero())[0][0] != 1
    record(12, bad == 0, f"{n} twists on 4 complete fans, h0(O) = 1, {bad} failures")
    assert bad == 0
