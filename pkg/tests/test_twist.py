"""Tests for Dehn twists, twist words and the classification of exceptional sets."""

import pytest

from atilde_exceptional.annulus import diagram_from_modules, phi
from atilde_exceptional.homext import is_exceptional_set
from atilde_exceptional.quiver import Orientation
from atilde_exceptional.strings import (
    HookKind,
    StringEnd,
    StringModule,
    enumerate_strings,
    exceptional_strings,
    hook_op,
    projective,
    simple,
    tau_inverse,
)
from atilde_exceptional.twist import (
    Relation,
    apply_word,
    canonical_word,
    classify,
    enumerate_exceptional_sets,
    find_relation,
    full_twist_exponents,
    full_twist_normal_form,
    has_boundary_swap,
    relation_report,
    swap_boundaries,
    swap_set,
    twist_diagram,
    twist_equivalent,
    twist_L,
    twist_L_inv,
    twist_R,
    twist_R_inv,
    twist_set,
    up_to_full_twist,
)

# ── Twist words ───────────────────────────────────────────────────────────


def test_full_twist_exponents(headline):
    """Two outer and one inner marked point."""
    assert full_twist_exponents(headline) == (2, 1)


def test_canonical_word(headline):
    assert canonical_word(headline, (5, 0)) == (1, 2)
    assert canonical_word(headline, (-1, 0)) == (1, -1)
    assert canonical_word(headline, (0, 0)) == (0, 0)


# ── Twists of single strings ──────────────────────────────────────────────


def test_twists_are_invertible(headline):
    for m in enumerate_strings(headline, 1):
        assert twist_L_inv(twist_L(m)) == m
        assert twist_R_inv(twist_R(m)) == m


def test_outer_full_twist_equals_inner_full_twist(headline):
    for m in enumerate_strings(headline, 1):
        assert apply_word(m, (2, 0)) == apply_word(m, (0, 1))


def test_tau_inverse_is_product_of_twists(headline):
    """tau^-1 = T_L T_R on the simple projective."""
    s3 = simple(headline, 3)
    assert apply_word(s3, (1, 1)) == tau_inverse(s3) == StringModule(headline, 1, 3, 1)


@pytest.mark.parametrize("quiver", ["++-", "+--", "+++-"])
def test_outer_twist_adds_hook_to_projectives(quiver):
    """T_L(P_v) is P_v with a hook added at its start."""
    eps = Orientation.parse(quiver)
    for v in range(1, eps.n + 1):
        p = projective(eps, v)
        assert twist_L(p) == hook_op(p, HookKind.ADD_HOOK, StringEnd.START)


def test_twists_preserve_exceptional_strings(headline):
    window = set(exceptional_strings(headline, 3))
    for m in exceptional_strings(headline, 1):
        assert twist_L(m) in window
        assert twist_R(m) in window


# ── Twists of sets and diagrams ───────────────────────────────────────────


def test_twisted_set_stays_exceptional(case_a):
    for word in ((1, 0), (0, 1), (-1, 1)):
        assert is_exceptional_set(twist_set(case_a, word))


def test_full_twists_agree_on_sets(case_a):
    assert twist_set(case_a, (2, 0)) == twist_set(case_a, (0, 1))


def test_twist_diagram_follows_modules(case_a):
    d = twist_diagram(diagram_from_modules(case_a), (1, 0))
    assert set(d.arcs) == {phi(m) for m in twist_set(case_a, (1, 0))}


def test_full_twist_normal_form_is_shared(case_a):
    assert full_twist_normal_form(twist_set(case_a, (0, 1))) == full_twist_normal_form(case_a)


# ── Twist equivalence ─────────────────────────────────────────────────────


def test_twist_equivalent_to_itself(case_a):
    assert twist_equivalent(case_a, case_a) == (0, 0)


def test_twist_equivalent_finds_canonical_word(simples_four, simples_four_twisted):
    word = twist_equivalent(simples_four, simples_four_twisted)
    assert word is not None
    q, _ = full_twist_exponents(simples_four.orientation)
    assert 0 <= word[0] < q
    assert twist_set(simples_four, word) == simples_four_twisted


def test_twist_equivalent_recovers_applied_word(case_a):
    target = twist_set(case_a, (1, 2))
    word = twist_equivalent(case_a, target)
    assert twist_set(case_a, word) == target


# ── Enumeration and classification ────────────────────────────────────────


def test_enumerated_sets_are_exceptional(headline):
    sets = enumerate_exceptional_sets(headline, 1)
    assert sets
    assert all(is_exceptional_set(s) for s in sets)
    assert len({s.modules for s in sets}) == len(sets)


def test_headline_classification(headline):
    """Eight sets up to the full twist fall into four classes."""
    sets = up_to_full_twist(enumerate_exceptional_sets(headline, 1))
    assert len(sets) == 8
    classes = classify(sets)
    assert len(classes) == 4
    assert sum(len(c.members) for c in classes) == 8


def test_kronecker_has_one_class():
    eps = Orientation.parse("+-")
    sets = up_to_full_twist(enumerate_exceptional_sets(eps, 1))
    classes = classify(sets)
    assert len(classes) == 1
    assert all(r is not None for r in classes[0].relations)


def test_class_to_dict(case_a):
    classes = classify([case_a])
    data = classes[0].to_dict()
    assert data["representative"] == case_a.labels
    assert data["members"] == [{"modules": case_a.labels, "word": [0, 0], "swapped": False}]


# ── Exchanging the boundaries ─────────────────────────────────────────────


def test_boundary_swap_needs_balanced_boundaries(headline):
    assert not has_boundary_swap(headline)
    assert has_boundary_swap(Orientation.parse("++--"))
    with pytest.raises(ValueError):
        swap_boundaries(simple(headline, 1))


def test_boundary_swap_moves_peripheral_arcs_across(left_tube_set, right_tube_set):
    """The outer peripheral arc (1,3;0) becomes the inner peripheral arc (4,2;0)."""
    eps = left_tube_set.orientation
    assert swap_boundaries(StringModule(eps, 1, 3, 0)) == StringModule(eps, 4, 2, 0)
    assert swap_set(left_tube_set) == right_tube_set


def test_boundary_swap_is_an_involution(left_tube_set):
    assert swap_set(swap_set(left_tube_set)) == left_tube_set


def test_tube_exchanged_sets_are_not_twist_equivalent(left_tube_set, right_tube_set):
    """Twists keep the tubes apart, so only the swap relates the two sets."""
    assert twist_equivalent(left_tube_set, right_tube_set) is None
    assert find_relation(left_tube_set, right_tube_set) == Relation((0, 0), swapped=True)


@pytest.mark.parametrize("quiver", ["+-+-", "++--"])
def test_isomorphic_sets_are_always_related(quiver):
    """Every set with the representative's Hom-Ext quiver is reached by a twist or the swap."""
    sets = up_to_full_twist(enumerate_exceptional_sets(Orientation.parse(quiver), 0))
    report = relation_report(classify(sets))
    assert report["unjustified"] == []
    assert report["sets"] == len(sets)
    assert report["twist_related"] + report["swap_related"] == len(sets)
