"""Tests for superquivers and their representations."""

import pytest

from atilde_exceptional.errors import InconsistentAssignment
from atilde_exceptional.homext import build_algebraic, build_geometric
from atilde_exceptional.quiver import Arrow, QuiverWithRelations
from atilde_exceptional.superquiver import (
    Superquiver,
    check_representation,
    converse_report,
    from_homext,
    is_irreducible,
    representation_from_homext,
    super_of,
    trivial_twist,
    twist_equivalent_super,
)


def _arrow_index(q, source, target):
    return next(k for k, a in enumerate(q.arrows) if (a.source, a.target) == (source, target))


# ── Construction ──────────────────────────────────────────────────────────


def test_frozen_arrow_joins_regular_simples(simples_four):
    """Only S2 -> S3 joins two regular modules."""
    s = super_of(simples_four)
    assert s.frozen == {_arrow_index(s.quiver, "(1,2;0)", "(2,3;0)")}
    assert {a.degree for a in s.quiver.arrows} == {1}


def test_case_a_has_no_frozen_arrows(case_a):
    """P2 and S3 are preprojective and S1 preinjective, so nothing is frozen."""
    assert super_of(case_a).frozen == frozenset()


def test_algebraic_and_geometric_superquivers_agree(simples_four):
    assert twist_equivalent_super(super_of(simples_four), super_of(simples_four, algebraic=True))


def test_to_dict_lists_frozen_arrows(simples_four):
    data = super_of(simples_four).to_dict()
    assert len(data["frozen"]) == 1


def test_degree_two_path_must_be_a_relation():
    q = QuiverWithRelations((1, 2, 3), (Arrow(1, 2, 1), Arrow(2, 3, 1)))
    with pytest.raises(ValueError):
        Superquiver(q)


def test_frozen_index_must_exist():
    q = QuiverWithRelations((1, 2), (Arrow(1, 2, 0),))
    with pytest.raises(ValueError):
        Superquiver(q, frozenset({3}))


def test_arrows_need_degrees():
    q = QuiverWithRelations((1, 2), (Arrow(1, 2),))
    with pytest.raises(ValueError):
        Superquiver(q)


# ── Equivalence ───────────────────────────────────────────────────────────


def test_twisted_simples_are_super_equivalent(simples_four, simples_four_twisted):
    assert twist_equivalent_super(super_of(simples_four), super_of(simples_four_twisted))


def test_trivial_twist_keeps_frozen_degrees(simples_four):
    s = super_of(simples_four)
    t = trivial_twist(s)
    degrees = [a.degree for a in t.quiver.arrows]
    assert [degrees[k] for k in sorted(t.frozen)] == [1]
    assert sum(degrees) == 1
    assert twist_equivalent_super(s, t)


def test_different_sizes_are_not_equivalent(case_a, simples_four):
    assert not twist_equivalent_super(super_of(case_a), super_of(simples_four))


def test_frozen_degree_matters(simples_four):
    """Changing the degree of the frozen arrow breaks the equivalence."""
    s = super_of(simples_four)
    q = s.quiver
    arrows = tuple(
        Arrow(a.source, a.target, 0, a.name) if k in s.frozen else a for k, a in enumerate(q.arrows)
    )
    changed = Superquiver(QuiverWithRelations(q.vertices, arrows, q.relations), s.frozen)
    assert not twist_equivalent_super(s, changed)


def test_converse_report_finds_the_twist(simples_four, simples_four_twisted):
    report = converse_report([simples_four, simples_four_twisted])
    assert report["super_equivalent_pairs"] == 1
    assert report["without_twist"] == []
    assert report["undetermined"] == []


# ── Representations ───────────────────────────────────────────────────────


def test_defining_maps_form_an_irreducible_representation(simples_four):
    h = build_algebraic(simples_four)
    s = from_homext(h)
    r = representation_from_homext(h)
    assert check_representation(s, r)
    assert is_irreducible(s, r)


def test_extension_composite_vanishes_in_twisted_simples(simples_four_twisted):
    """S2 -> S3 -> P1 is a path of two extensions, so it is a relation and its
    composite is zero."""
    h = build_algebraic(simples_four_twisted)
    q = h.quiver
    first = _arrow_index(q, "(1,2;0)", "(2,3;0)")
    second = _arrow_index(q, "(2,3;0)", "(3,4;1)")
    assert (first, second) in q.relations
    r = representation_from_homext(h)
    assert r.spaces.is_zero(r.spaces.compose(r.maps[first], r.maps[second]))
    assert check_representation(from_homext(h), r)


def test_matrix_family_representation(d4_family):
    """Without string modules nothing is frozen; the maps still satisfy the relations."""
    h = build_algebraic(d4_family)
    s = from_homext(h)
    assert s.frozen == frozenset()
    assert check_representation(s, representation_from_homext(h))


def test_missing_map_is_inconsistent(case_a):
    h = build_algebraic(case_a)
    r = representation_from_homext(h)
    r.maps.pop(0)
    with pytest.raises(InconsistentAssignment):
        check_representation(from_homext(h), r)


def test_swapped_map_is_inconsistent(case_a):
    h = build_algebraic(case_a)
    r = representation_from_homext(h)
    degree_one = next(k for k, x in r.maps.items() if x.degree == 1)
    degree_zero = next(k for k, x in r.maps.items() if x.degree == 0)
    r.maps[degree_one] = r.maps[degree_zero]
    with pytest.raises(InconsistentAssignment):
        is_irreducible(from_homext(h), r)


def test_geometric_quiver_has_no_maps(case_a):
    with pytest.raises(ValueError):
        representation_from_homext(build_geometric(case_a))
