"""Tests for graph maps, connections and the combinatorial Hom/Ext dimensions."""

import itertools

from atilde_exceptional.oracle import ext_dim, hom_dim
from atilde_exceptional.quiver import Orientation
from atilde_exceptional.string_hom import (
    connections,
    dim_ext,
    dim_hom,
    ext_basis,
    graph_maps,
    quotient_factorizations,
    submodule_factorizations,
)
from atilde_exceptional.strings import (
    StringModule,
    enumerate_strings,
    parse_string_module,
    projective,
    simple,
)

# ── Factorizations ────────────────────────────────────────────────────────


def test_factorizations_of_projective(headline):
    """P2 = 2 -> 3: the top (E at position 0) is a quotient, the socle a submodule."""
    p2 = projective(headline, 2)
    quotients = {(f.first, f.last) for f in quotient_factorizations(p2)}
    submodules = {(f.first, f.last) for f in submodule_factorizations(p2)}
    assert quotients == {(0, 0), (0, 1)}
    assert submodules == {(1, 1), (0, 1)}


# ── Hom ───────────────────────────────────────────────────────────────────


def test_hom_simple_into_projective(headline):
    """S3 is the socle of P2 and not a quotient of it."""
    s3, p2 = simple(headline, 3), projective(headline, 2)
    assert dim_hom(s3, p2) == 1
    assert dim_hom(p2, s3) == 0


def test_hom_into_string_over_plus_minus_minus():
    """S2 sits in the socle of (1,3;0) over (+,-,-)."""
    s2 = parse_string_module("(1,2;0)", "+--")
    m = parse_string_module("(1,3;0)", "+--")
    assert dim_hom(s2, m) == 1
    assert dim_hom(m, s2) == 0


def test_kronecker_hom_is_two_dimensional(kronecker_set):
    s2, p1 = kronecker_set.modules
    maps = graph_maps(s2, p1)
    assert len(maps) == 2
    assert not any(g.two_sided for g in maps)
    assert dim_hom(p1, s2) == 0


def test_identity_is_a_graph_map(headline):
    m = projective(headline, 1)
    maps = graph_maps(m, m)
    assert len(maps) == 1
    assert maps[0].to_dict() == {"quotient": [0, 3], "submodule": [0, 3], "two_sided": False}


# ── Ext ───────────────────────────────────────────────────────────────────


def test_ext_between_simples_follows_arrows(headline):
    """Ext(S_i, S_j) counts arrows i -> j."""
    s1, s2, s3 = (simple(headline, v) for v in (1, 2, 3))
    assert dim_ext(s1, s2) == 1
    assert dim_ext(s1, s3) == 1
    assert dim_ext(s2, s3) == 1
    assert dim_ext(s3, s1) == 0


def test_connection_middle_term(headline):
    """0 -> S3 -> I -> S1 -> 0 along a3 has the string 1 -> 3 in the middle."""
    found = connections(simple(headline, 1), simple(headline, 3))
    assert len(found) == 1
    assert found[0].arrow == 3
    assert found[0].middle == StringModule(headline, 2, 1, 0)


def test_ext_into_projective_is_two_dimensional(headline):
    """Ext(S1, P2) has one class per arrow out of vertex 1."""
    basis = ext_basis(simple(headline, 1), projective(headline, 2))
    assert len(basis) == 2
    assert {c.kind for c in basis} == {"connection"}


def test_self_extension_of_homogeneous_string():
    """(1,1;0) over the Kronecker quiver extends itself by (1,1;1)."""
    m = parse_string_module("(1,1;0)", "+-")
    basis = ext_basis(m, m)
    assert len(basis) == 1
    assert basis[0].middle == (parse_string_module("(1,1;1)", "+-"),)


def test_ext_from_projective_vanishes(headline):
    p1 = projective(headline, 1)
    for m in enumerate_strings(headline, 1):
        assert dim_ext(p1, m) == 0


# ── Agreement with the matrix oracle ──────────────────────────────────────


def test_graph_maps_match_oracle_small_sweep(headline):
    """Graph maps and connections give the oracle's dimensions for l <= 1."""
    for x, y in itertools.product(enumerate_strings(headline, 1), repeat=2):
        assert dim_hom(x, y) == hom_dim(x, y), (x.label, y.label)
        assert dim_ext(x, y) == ext_dim(x, y), (x.label, y.label)


def test_graph_maps_match_oracle_kronecker():
    eps = Orientation.parse("+-")
    for x, y in itertools.product(enumerate_strings(eps, 1), repeat=2):
        assert dim_hom(x, y) == hom_dim(x, y), (x.label, y.label)
        assert dim_ext(x, y) == ext_dim(x, y), (x.label, y.label)
