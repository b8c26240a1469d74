import itertools
from fractions import Fraction
from math import comb

import pytest

from toric_cox.cohomology import (
    CorrespondenceViolation,
    SGRow,
    character_complex,
    cohomology_report,
    finiteness_evidence,
    global_sections_check,
    local_cohomology,
    serre_grothendieck_verify,
    sheaf_cohomology,
    tensor_h0,
)
from toric_cox.cones import Fan
from toric_cox.picard import build_diagram


def count_with_sign(n, total, negative):
    """#{x in Z^n : all x_i >= 0 (or all <= -1), sum = total}, brute force."""
    rng = range(-12, 0) if negative else range(0, 13)
    return sum(1 for x in itertools.product(rng, repeat=n) if sum(x) == total)


def _rank(rows):
    a = [[Fraction(x) for x in r] for r in rows]
    rk, col = 0, 0
    ncols = len(a[0]) if a else 0
    for col in range(ncols):
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


def brute_cech(fan, degree_vector, radius):
    """Čech cohomology of the line bundle with exponent base ``degree_vector``
    (a divisor sum D = sum d_i D_i), written from scratch: characters m in
    M with <m, rho_i> + d_i >= 0 on the rays of each chart."""
    maxc = list(fan.max_cones)
    s = len(maxc)
    totals = [0] * s
    for m in itertools.product(range(-radius, radius + 1), repeat=fan.ambient_dim):
        val = [sum(a * b for a, b in zip(m, r)) + d for r, d in zip(fan.rays, degree_vector)]

        def ok(T):
            common = set(range(len(fan.rays)))
            for i in T:
                common &= maxc[i]
            return all(val[j] >= 0 for j in common)

        terms = [[T for T in itertools.combinations(range(s), p + 1) if ok(T)] for p in range(s)]
        ranks = []
        for p in range(s - 1):
            idx = {T: i for i, T in enumerate(terms[p])}
            mat = []
            for T in terms[p + 1]:
                row = [0] * len(terms[p])
                for k in range(len(T)):
                    face = T[:k] + T[k + 1:]
                    if face in idx:
                        row[idx[face]] = (-1) ** k
                mat.append(row)
            ranks.append(_rank(mat) if mat and terms[p] else 0)
        for p in range(s):
            rin = ranks[p - 1] if p > 0 else 0
            rout = ranks[p] if p < s - 1 else 0
            totals[p] += len(terms[p]) - rin - rout
    return tuple(totals)


@pytest.fixture(scope="module")
def p2():
    return build_diagram(Fan.from_rays([(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]], name="p2"))


@pytest.fixture(scope="module")
def p1():
    return build_diagram(Fan.from_rays([(1,), (-1,)], [[0], [1]], name="p1"))


def test_p2_table(p2):
    for d in range(0, 6):
        h, stable, _ = sheaf_cohomology(p2, [], (d,))
        assert stable and h == (comb(d + 2, 2), 0, 0) == (count_with_sign(3, d, False), 0, 0)
    for d in range(3, 7):
        h, stable, _ = sheaf_cohomology(p2, [], (-d,))
        assert stable and h == (0, 0, comb(d - 1, 2)) == (0, 0, count_with_sign(3, -d, True))
    assert sheaf_cohomology(p2, [], (-1,))[0] == (0, 0, 0)
    assert sheaf_cohomology(p2, [], (-2,))[0] == (0, 0, 0)


def test_p1_table(p1):
    for d in range(2, 6):
        h, stable, _ = sheaf_cohomology(p1, [], (-d,))
        assert stable and h == (0, d - 1) == (0, count_with_sign(2, -d, True))


def test_hirzebruch_against_direct_cech(diagrams):
    d = diagrams["hirzebruch-a"]
    f = d.fan
    for D in [(0, 0, 0, 0), (1, 0, 0, 0), (0, 0, 0, -3), (-2, 0, -1, 0), (0, 2, 0, 1), (-1, -1, -1, -1)]:
        twist = d.degree(D)
        ours, stable, r = sheaf_cohomology(d, [], twist)
        assert stable
        assert ours == brute_cech(f, D, r + 2)


def test_shift_compatibility(p2, diagrams):
    for a in range(-4, 4):
        for b in (-2, 1, 3):
            assert sheaf_cohomology(p2, [(b,)], (a,))[0] == sheaf_cohomology(p2, [(0,)], (a + b,))[0]
    h = diagrams["hirzebruch-a"]
    assert sheaf_cohomology(h, [(1, -1)], (0, 2))[0] == sheaf_cohomology(h, [], (1, 1))[0]


def test_direct_sums_add(p1):
    a = sheaf_cohomology(p1, [(1,), (-4,)], (-1,))[0]
    assert a == (1, 4)


def test_local_cohomology(p2, p1):
    assert local_cohomology(p2, [], (-3,))[0] == (0, 0, 0, 1)
    assert local_cohomology(p2, [], (0,))[0] == (0, 0, 0, 0)
    assert local_cohomology(p1, [], (-2,))[0] == (0, 0, 1)


def test_character_complexes_are_complexes():
    masks = (0b011, 0b110, 0b101)
    for mask in range(8):
        for ext in (False, True):
            cx = character_complex(mask, masks, 3, ext)
            assert cx.check_dd() and cx.euler_ok()
            assert all(x >= 0 for x in cx.dims())


def test_serre_grothendieck(p2, p1, diagrams):
    assert serre_grothendieck_verify(p2, [], [(t,) for t in range(-5, 6)]).ok
    assert serre_grothendieck_verify(p1, [(1,), (-4,)], [(t,) for t in range(-3, 4)]).ok
    h = diagrams["hirzebruch-a"]
    assert serre_grothendieck_verify(h, [], [(a, b) for a in range(-2, 3) for b in range(-2, 3)]).ok


def test_violation_reporting():
    row = SGRow((0,), (1, 0), (0, 1, 0), 0, 0, True)
    assert row.problems() == ["coker eta 0 != H^1_I 1"]


def test_global_sections(p2, diagrams):
    assert global_sections_check(p2, (3,))
    assert global_sections_check(p2, (0,))
    e = diagrams["ex-3.290"]
    assert global_sections_check(e, (1,))
    assert all(global_sections_check(e, (a,)) for a in range(-2, 8))


def test_finiteness(p2, p1):
    assert all(finiteness_evidence(p2, [], (a,)) for a in range(-6, 7))
    assert finiteness_evidence(p1, [], (-2,), box=3)


def test_non_complete_fan_is_flagged(diagrams):
    d = diagrams["ex-1.230"]
    # two rays, A = 0: the sections of O are all of Q[Z_0, Z_1], infinitely many
    _, stable, _ = sheaf_cohomology(d, [], ())
    assert not stable


def test_tensor_route_ex3290(diagrams):
    d = diagrams["ex-3.290"]
    h_sum = sheaf_cohomology(d, [], (3,))[0][0]
    h_tensor, stable = tensor_h0(d, (1,), (2,))
    assert stable and (h_sum, h_tensor) == (3, 3)
    for a, b in [((6,), (6,)), ((0,), (6,)), ((6,), (-6,))]:
        t, ok = tensor_h0(d, a, b)
        s = sheaf_cohomology(d, [], d.A.add(a, b))[0][0]
        assert ok and t == s


def test_report(p2):
    rep = cohomology_report(p2, [], [(-3,), (2,)])
    assert rep.table[(-3,)] == (0, 0, 1) and rep.table[(2,)] == (6, 0, 0) and rep.stable
    assert rep.as_dict()["kind"] == "sheaf"
