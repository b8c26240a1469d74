import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toric_cox.cones import (
    Fan,
    IntersectionNotFace,
    InvalidCone,
    NonSharpCone,
    Polycone,
    classify_fan,
    dual_cone,
    faces,
    full_fan_associated,
    generate_random_fan,
    primitive_ray,
    validate_fan,
)


def test_primitive_ray():
    assert primitive_ray((2, 4)) == (1, 2)
    assert primitive_ray((-3, 0, 6)) == (-1, 0, 2)


def test_polycone_basics():
    c = Polycone.from_generators([(1, 0), (1, 2), (1, 1)])
    assert sorted(c.rays) == [(1, 0), (1, 2)]
    assert c.dim == 2 and c.is_simplicial and not c.is_regular
    assert Polycone.from_generators([(1, 0), (0, 1)]).is_regular
    with pytest.raises(NonSharpCone):
        Polycone.from_generators([(1, 0), (-1, 0)])


def _brute_dual(gens, n, r=3):
    return {u for u in itertools.product(range(-r, r + 1), repeat=n)
            if all(sum(a * b for a, b in zip(u, g)) >= 0 for g in gens)}


@given(st.lists(st.tuples(*[st.integers(-2, 2)] * 3).filter(any), min_size=1, max_size=4))
def test_dual_cone_membership(gens):
    D = dual_cone(gens, 3)
    for u in _brute_dual(gens, 3, 2):
        assert D.contains(u)
    for u in itertools.product(range(-2, 3), repeat=3):
        if D.contains(u):
            assert all(sum(a * b for a, b in zip(u, g)) >= 0 for g in gens)


def test_faces_of_square_cone():
    c = Polycone.from_generators([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)])
    fs = faces(c)
    assert sorted(len(f.rays) for f in fs) == [0, 1, 1, 1, 1, 2, 2, 2, 2, 4]
    assert not c.is_simplicial


def test_fan_validation_errors():
    with pytest.raises(IntersectionNotFace):
        Fan.from_rays([(1, 0), (0, 1), (1, 1)], [[0, 1], [2]])
    with pytest.raises(InvalidCone):
        Fan.from_rays([(1, 0), (0, 1), (1, 1)], [[0, 1, 2]])
    with pytest.raises(ValueError):
        Fan.from_rays([(1, 0), (0, 1), (-1, 0)], [[0, 1]])


def test_redundant_cone_dropped():
    f = Fan.from_rays([(1, 0), (0, 1)], [[0, 1], [0]])
    assert f.max_cones == (frozenset({0, 1}),)


def test_classification_of_fixtures(fans):
    p2 = classify_fan(fans["p2"])
    assert p2.complete and p2.regular and p2.simplicial and not p2.affine
    e = classify_fan(fans["ex-3.290"])
    assert e.complete and e.simplicial and not e.regular
    a = classify_fan(fans["ex-1.100a"])
    assert a.regular and a.full and not a.relatively_full_dimensional
    b = classify_fan(fans["ex-1.100b"])
    assert b.relatively_skeletal_complete and not b.relatively_full_dimensional
    assert not classify_fan(fans["ex-1.400a"]).relatively_skeletal_complete


def test_validate_fan_from_polycones():
    f = validate_fan([Polycone.from_generators([(1, 0), (0, 1)]), Polycone.from_generators([(0, 1), (-1, -1)])])
    assert len(f.rays) == 3 and len(f.max_cones) == 2


def test_full_fan_associated(fans):
    g, B = full_fan_associated(fans["ex-1.100a"])
    assert g.ambient_dim == 2  # rays (1,0),(1,2) span R^2 already
    f = Fan.from_rays([(1, 1, 0), (-1, -1, 0)], [[0], [1]])
    g, B = full_fan_associated(f)
    assert g.ambient_dim == 1 and sorted(g.rays) == [(-1,), (1,)]
    for i, r in enumerate(g.rays):
        assert tuple(sum(B[a][j] * r[j] for j in range(1)) for a in range(3)) == f.rays[i]


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_random_fans_are_deterministic_and_valid(dim):
    for seed in range(15):
        f = generate_random_fan(seed, dim)
        assert f == generate_random_fan(seed, dim)
        classify_fan(f)
        c = generate_random_fan(seed, dim, complete=True)
        assert classify_fan(c).complete
