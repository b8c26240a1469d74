import itertools

import pytest

from toric_cox.charts import (
    chart_monoid,
    compare_cox_toric,
    delta_counterexample_check,
    dual_monoid,
    glue_check,
    glue_data,
    invertibility_check,
    sheaf_of,
    strongly_graded_check,
    tensor_map_report,
    twist_module,
    xi_equal,
    xi_equal_chartwise,
)
from toric_cox.cones import Fan, generate_random_fan
from toric_cox.graded import GradedSubmodule, cox_ring
from toric_cox.picard import build_diagram


def brute_chart_irreducibles(d, sigma, r=4):
    """Irreducibles of {x : a(x) = 0, x >= 0 on sigma} inside a box."""
    k = d.num_rays
    pts = [x for x in itertools.product(range(-r, r + 1), repeat=k)
           if any(x) and all(x[i] >= 0 for i in sigma) and not any(d.degree(x))]
    S = set(pts)
    return sorted(x for x in pts if not any(y != x and tuple(a - b for a, b in zip(x, y)) in S for y in pts))


def test_ex3290_chart_monoid_generators(diagrams):
    d = diagrams["ex-3.290"]
    cm = chart_monoid(d, {0, 2})
    # Z_3^3 Z_2^-1, Z_3 Z_1 Z_2^-1, Z_1^3 Z_2^-2 with 1-based names
    assert set(cm.hilbert_basis) == {(0, -1, 3), (1, -1, 1), (3, -2, 0)}
    assert cm.stable and not cm.units


@pytest.mark.parametrize("name", ["p2", "ex-3.290", "hirzebruch-a"])
def test_chart_monoids_against_brute_force(diagrams, name):
    d = diagrams[name]
    for s in d.fan.max_cones:
        cm = chart_monoid(d, s)
        assert sorted(cm.hilbert_basis) == brute_chart_irreducibles(d, s, 3)


def test_dual_monoid(fans):
    units, basis = dual_monoid(fans["ex-3.290"].cone({1, 2}))
    assert not units
    # u_2 >= 0 and -2 u_1 - 3 u_2 >= 0
    assert sorted(basis) == [(-3, 2), (-2, 1), (-1, 0)]


@pytest.mark.parametrize("name", ["p2", "p1", "hirzebruch-a", "ex-3.290", "ex-1.100a", "ex-1.400b"])
def test_cox_vs_toric_full_fans(diagrams, name):
    assert compare_cox_toric(diagrams[name])["verdict"] == "isomorphic"


def test_cox_vs_toric_non_full():
    f = Fan.from_rays([(1, 0, 0), (0, 1, 0)], [[0, 1]])
    out = compare_cox_toric(build_diagram(f))
    assert out["verdict"] == "not_full" and out["kernel_rank"] == 1


def test_twist_modules(diagrams):
    d = diagrams["ex-3.290"]
    assert twist_module(d, {0, 2}, (1,)).generators == ((0, 0, 1), (2, -1, 0))
    assert twist_module(d, {0, 2}, (2,)).generators == ((0, 0, 2), (1, 0, 0))
    t = twist_module(d, {0, 2}, (6,))
    assert t.is_free_rank_one and t.generators == ((0, 2, 0),)
    assert invertibility_check(d, (6,)) and invertibility_check(d, (12,))
    assert not invertibility_check(d, (1,))
    p2 = diagrams["p2"]
    assert all(invertibility_check(p2, (a,)) for a in range(-3, 4))


def test_strong_grading(diagrams):
    d = diagrams["ex-3.290"]
    assert strongly_graded_check(d, {0, 2}, [((6,), (6,)), ((6,), (-6,))])
    assert not strongly_graded_check(d, {0, 2}, [((1,), (2,))])


def test_delta_counterexample():
    rep = delta_counterexample_check()
    assert rep["kernel_certificate"] and rep["image_certificate"] and rep["ok"]
    assert rep["pairs"] == [(0, 1), (1, 0)] and rep["relations"] == []


def test_tensor_map_is_onto_for_pic(diagrams):
    d = diagrams["ex-3.290"]
    for s in d.fan.max_cones:
        g = twist_module(d, s, (12,)).generators[0]
        rep = tensor_map_report(d, s, (6,), (6,), [], target=g)
        assert rep["target_in_image"]


def test_glue(diagrams):
    for d in diagrams.values():
        assert glue_check(d)
    g = glue_data(diagrams["ex-3.290"], {0, 1}, {1, 2})
    assert tuple(a + b for a, b in zip(g["p"], g["q"])) == tuple(g["l"] * z for z in (0, 0, 1))


def test_glue_on_random_fans():
    for seed in range(20):
        assert glue_check(build_diagram(generate_random_fan(seed, 2, complete=True)))


def test_sheaf_equality(diagrams):
    r = cox_ring(diagrams["p2"])
    I = GradedSubmodule.monomial(r, [(0,)], [(0, (1, 0, 0)), (0, (0, 1, 0)), (0, (0, 0, 1))])
    S = GradedSubmodule.ambient(r, [(0,)])
    assert xi_equal(I, S) and xi_equal_chartwise(I, S)
    J = GradedSubmodule.monomial(r, [(0,)], [(0, (1, 0, 0))])
    assert not xi_equal(J, S) and not xi_equal_chartwise(J, S)
    assert sheaf_of(I).consistent()
