"""Shared pytest fixtures for atilde_exceptional tests."""

import pytest

from atilde_exceptional.homext import ModuleSet
from atilde_exceptional.oracle import MatrixRepresentation
from atilde_exceptional.quiver import Arrow, Orientation, QuiverWithRelations
from atilde_exceptional.strings import parse_string_module


def _make_set(eps, *labels):
    """Helper to build a ModuleSet from "(i,j;l)" labels."""
    eps = Orientation.parse(eps) if isinstance(eps, str) else eps
    return ModuleSet.of(parse_string_module(label, eps) for label in labels)


def _make_collection_file(tmp_path, labels, name="collection.txt"):
    """Helper to write a collection file with a comment header."""
    path = tmp_path / name
    path.write_text("# test collection\n" + "".join(f"{label}\n" for label in labels))
    return path


def _make_d4_family():
    """Three representations of the quiver 1->3, 4->3, 3->2.

    X1 = 4/3/2, M = (1 4)/3/2 and X3 = 1/3; their Hom-Ext quiver is the
    oriented cycle X1 -> M -> X3 -> X1 with the last arrow of degree one.
    """
    quiver = QuiverWithRelations(
        (1, 2, 3, 4),
        (Arrow(1, 3, name="x"), Arrow(4, 3, name="y"), Arrow(3, 2, name="z")),
    )
    x1 = MatrixRepresentation.from_lists(quiver, {2: 1, 3: 1, 4: 1}, {1: [[1]], 2: [[1]]}, "X1")
    m = MatrixRepresentation.from_lists(
        quiver, {1: 1, 2: 1, 3: 2, 4: 1}, {0: [[1], [0]], 1: [[0], [1]], 2: [[1, 1]]}, "M"
    )
    x3 = MatrixRepresentation.from_lists(quiver, {1: 1, 3: 1}, {0: [[1]]}, "X3")
    return [x1, m, x3]


@pytest.fixture
def headline():
    """The orientation (+,+,-): arrows 1->2, 2->3 and 1->3."""
    return Orientation.parse("++-")


@pytest.fixture
def case_a():
    """Exceptional set {P2, S3, S1} over (+,+,-)."""
    return _make_set("++-", "(1,3;0)", "(2,3;0)", "(3,1;0)")


@pytest.fixture
def kronecker_set():
    """{S2, P1} over the Kronecker quiver (+,-)."""
    return _make_set("+-", "(1,2;0)", "(1,2;1)")


@pytest.fixture
def simples_four():
    """All simples over (+,+,+,-)."""
    return _make_set("+++-", "(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)")


@pytest.fixture
def simples_four_twisted():
    """{P2, S2, S3, P1} over (+,+,+,-), a twist of the simples."""
    return _make_set("+++-", "(1,4;0)", "(1,2;0)", "(2,3;0)", "(3,4;1)")


@pytest.fixture
def d4_family():
    """Representations X1, M, X3 of the quotient example."""
    return _make_d4_family()


@pytest.fixture
def write_collection(tmp_path):
    """Factory writing collection files into tmp_path."""
    def _write(labels, name="collection.txt"):
        return _make_collection_file(tmp_path, labels, name)
    return _write


@pytest.fixture
def left_tube_set():
    """Exceptional set over (+,-,+,-) with the peripheral arc (1,3;0) on the outer boundary."""
    return _make_set("+-+-", "(1,2;0)", "(1,3;0)", "(1,4;0)", "(3,2;0)")


@pytest.fixture
def right_tube_set():
    """Exceptional set over (+,-,+,-) with the peripheral arc (4,2;0) on the inner boundary."""
    return _make_set("+-+-", "(1,2;0)", "(1,4;0)", "(3,2;0)", "(4,2;0)")
