import itertools
import math

import pytest

from toric_cox.cones import Fan, classify_fan, generate_random_fan
from toric_cox.lattice import Subgroup, subgroup_index
from toric_cox.picard import (
    TheoremViolation,
    build_diagram,
    cone_regularity_via_diagram,
    degree_monoid_info,
    fan_classification_theorems,
    is_big,
    is_small,
    normal_form_vp,
    picard_group,
    picard_via_polytopes,
    positive_relation_exists,
    virtual_polytope_for,
)


@pytest.mark.parametrize("name,group,index", [
    ("ex-1.100a", "Z/2", 1),
    ("ex-1.100b", "Z", 1),
    ("ex-1.230", "0", 1),
    ("ex-3.290", "Z", 6),
    ("p2", "Z", 1),
    ("p1", "Z", 1),
    ("hirzebruch-a", "Z^2", 1),
])
def test_picard_groups_of_fixtures(diagrams, name, group, index):
    d = diagrams[name]
    pic = picard_group(d)
    assert pic.as_group().describe() == group
    assert subgroup_index(pic) == index
    assert picard_via_polytopes(d).ok


def test_class_groups(diagrams):
    assert diagrams["ex-1.100a"].A.describe() == "Z/2"
    assert diagrams["ex-3.290"].alpha == ((2,), (3,), (1,))
    sq = build_diagram(Fan.from_rays([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]]))
    assert sq.A.describe() == "Z/2 + Z"
    assert picard_group(sq).is_trivial


def test_ex3290_pic_generated_by_six(diagrams):
    d = diagrams["ex-3.290"]
    pic = picard_group(d)
    assert pic == Subgroup(d.A, [(6,)])
    # A^sigma for the three maximal cones: <1>, <2>, <3>
    assert [subgroup_index(d.A_sigma(s)) for s in d.fan.max_cones] == [1, 2, 3]


def test_virtual_polytope_normal_form(diagrams):
    d = diagrams["ex-3.290"]
    vp = virtual_polytope_for(d, (6,))
    nf = normal_form_vp(vp, {0, 1})
    assert nf.m_family[frozenset({0, 1})] == (0, 0)
    assert nf.m_family[frozenset({1, 2})] == (-3, 0)
    assert nf.m_family[frozenset({0, 2})] == (0, -2)
    assert nf.picard_class() == (6,)
    again = normal_form_vp(nf, {0, 1})
    assert again.m_family == nf.m_family
    with pytest.raises(ValueError):
        virtual_polytope_for(d, (1,))


def test_big_and_small(diagrams):
    d = diagrams["ex-3.290"]
    assert is_big(Subgroup(d.A, [(12,)])) and is_small(Subgroup(d.A, [(12,)]), d)
    assert not is_small(Subgroup(d.A, [(3,)]), d)
    assert not is_big(Subgroup(diagrams["p1"].A, []))


def test_cone_regularity_via_diagram(diagrams):
    d = diagrams["ex-3.290"]
    assert cone_regularity_via_diagram(d, frozenset({0, 1})) == "regular"
    assert cone_regularity_via_diagram(d, frozenset({1, 2})) == "simplicial_only"
    sq = build_diagram(Fan.from_rays([(1, 0, 1), (0, 1, 1), (-1, 0, 1), (0, -1, 1)], [[0, 1, 2, 3]]))
    assert cone_regularity_via_diagram(sq, frozenset({0, 1, 2, 3})) == "neither"


def test_degree_monoid_non_converses(diagrams):
    a = degree_monoid_info(diagrams["ex-1.400a"])
    assert a.sharp and not classify_fan(diagrams["ex-1.400a"].fan).relatively_skeletal_complete
    b = degree_monoid_info(diagrams["ex-1.400b"])
    assert not b.sharp and diagrams["ex-1.400b"].A.is_free
    assert diagrams["ex-1.400b"].A.describe() == "Z"


def test_positive_relation(diagrams):
    assert positive_relation_exists(diagrams["p2"])
    assert not positive_relation_exists(diagrams["ex-1.230"])


def test_theorem_checks_hold_on_fixtures(diagrams):
    for d in diagrams.values():
        rep = fan_classification_theorems(d)
        assert rep["all_hold"]
        assert not any(ch in c["name"] for c in rep["checks"] for ch in ("Thm", "Prop", "Cor"))


def test_theorem_violation_is_raised_on_bad_flags(diagrams):
    d = diagrams["ex-3.290"]
    flags = classify_fan(d.fan)
    bad = type(flags)(**{**flags.as_dict(), "regular": True})
    with pytest.raises(TheoremViolation):
        fan_classification_theorems(d, bad)


@pytest.mark.parametrize("dim", [1, 2, 3])
def test_two_routes_agree_on_random_fans(dim):
    for seed in range(25):
        d = build_diagram(generate_random_fan(seed, dim))
        assert picard_via_polytopes(d).ok
