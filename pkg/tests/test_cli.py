"""Tests for CLI entry point (cli.py main() function)."""

import json
import sys

import pytest

from atilde_exceptional import cli
from atilde_exceptional.errors import ParseError


def _run(monkeypatch, *argv):
    monkeypatch.setattr(sys, "argv", ["atilde-exceptional", *argv])
    cli.main()


def _run_json(monkeypatch, capsys, *argv):
    _run(monkeypatch, *argv, "--json")
    return json.loads(capsys.readouterr().out)


# ── Collection files ──────────────────────────────────────────────────────


def test_parse_collection_lines_and_comments(headline):
    chi = cli.parse_collection("# header\n(3,1;0)\n(1,3;0)  # P2\n\n(2,3;0)\n", headline)
    assert chi.labels == ["(1,3;0)", "(2,3;0)", "(3,1;0)"]


def test_parse_collection_json(headline):
    as_list = cli.parse_collection('["(2,3;0)", "(1,3;0)"]', headline)
    as_object = cli.parse_collection('{"modules": ["(1,3;0)", "(2,3;0)"]}', headline)
    assert as_list == as_object


@pytest.mark.parametrize("text", ["", "# only a comment\n", "[]", "[1, 2]", "{bad json"])
def test_parse_collection_rejects_empty_or_malformed(text, headline):
    with pytest.raises(ParseError):
        cli.parse_collection(text, headline)


def test_parse_collection_rejects_repeated_module(headline):
    with pytest.raises(ParseError):
        cli.parse_collection("(1,3;0)\n(1,3;0)\n", headline)


def test_format_collection_is_sorted(case_a):
    assert cli.format_collection(case_a) == "(1,3;0)\n(2,3;0)\n(3,1;0)\n"


# ── Argument Parsing ──────────────────────────────────────────────────────


def test_cli_requires_subcommand(monkeypatch):
    monkeypatch.setattr(sys, "argv", ["atilde-exceptional"])

    with pytest.raises(SystemExit) as exc_info:
        cli.main()

    assert exc_info.value.code == 2  # argparse error


def test_cli_requires_quiver(monkeypatch):
    monkeypatch.setattr(sys, "argv", ["atilde-exceptional", "hom", "(1,2;0)", "(1,3;0)"])

    with pytest.raises(SystemExit) as exc_info:
        cli.main()

    assert exc_info.value.code == 2


def test_render_requires_out(monkeypatch, write_collection):
    path = write_collection(["(1,3;0)", "(2,3;0)", "(3,1;0)"])
    monkeypatch.setattr(sys, "argv", ["atilde-exceptional", "render", "--quiver", "++-", str(path)])

    with pytest.raises(SystemExit) as exc_info:
        cli.main()

    assert exc_info.value.code == 2


# ── Input errors ──────────────────────────────────────────────────────────


def test_malformed_label_exits_2(monkeypatch):
    with pytest.raises(SystemExit) as exc_info:
        _run(monkeypatch, "hom", "--quiver", "+--", "(1,3)", "(1,2;0)")

    assert exc_info.value.code == 2


def test_equal_signs_exit_2(monkeypatch):
    with pytest.raises(SystemExit) as exc_info:
        _run(monkeypatch, "hom", "--quiver", "+++", "(1,2;0)", "(1,3;0)")

    assert exc_info.value.code == 2


def test_empty_collection_exits_2(monkeypatch, tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n")

    with pytest.raises(SystemExit) as exc_info:
        _run(monkeypatch, "hequiver", "--quiver", "++-", str(path))

    assert exc_info.value.code == 2


def test_missing_collection_file_exits_1(monkeypatch, tmp_path):
    with pytest.raises(SystemExit) as exc_info:
        _run(monkeypatch, "hequiver", "--quiver", "++-", str(tmp_path / "missing.txt"))

    assert exc_info.value.code == 1


# ── hom / ext / oracle ────────────────────────────────────────────────────


def test_hom_json(monkeypatch, capsys):
    """S2 maps into (1,3;0) over (+,-,-)."""
    data = _run_json(monkeypatch, capsys, "hom", "--quiver", "+--", "(1,2;0)", "(1,3;0)")
    assert data["_meta"]["section"] == "hom"
    assert data["_meta"]["orientation"] == "+--"
    assert data["dim"] == 1


def test_ext_text(monkeypatch, capsys):
    _run(monkeypatch, "ext", "--quiver", "++-", "(3,1;0)", "(1,3;0)")
    out = capsys.readouterr().out
    assert out.startswith("dim Ext((3,1;0), (1,3;0)) = 2")


def test_oracle_values(monkeypatch, capsys):
    data = _run_json(monkeypatch, capsys, "oracle", "--quiver", "+--", "(2,3;0)", "(3,1;0)")
    # S3 and S1 over (+,-,-): one arrow 1 -> 3 gives Ext(S1, S3), nothing from S3 to S1
    assert data["dims"] == [[0, 0, 1], [1, 0, 0]]
    assert data["hom"] == 0
    assert data["ext"] == data["ext_cokernel"] == 0
    assert data["euler_form"] == 0


def test_oracle_prime_field(monkeypatch, capsys):
    data = _run_json(
        monkeypatch, capsys, "oracle", "--quiver", "++-", "--field", "prime", "(3,1;0)", "(2,3;0)"
    )
    assert data["ext"] == 1
    assert "32003" in data["field"]


# ── hequiver / orderings ──────────────────────────────────────────────────


def test_hequiver_exceptional(monkeypatch, capsys, write_collection):
    path = write_collection(["(1,3;0)", "(2,3;0)", "(3,1;0)"])
    data = _run_json(monkeypatch, capsys, "hequiver", "--quiver", "++-", str(path))
    assert data["exceptional"] is True
    assert data["linear_extensions"] == 1
    assert data["orderings"] == [["(3,1;0)", "(2,3;0)", "(1,3;0)"]]
    assert len(data["quiver"]["arrows"]) == 3


def test_hequiver_reports_total_poset(monkeypatch, capsys, write_collection):
    """A single linear extension means every pair is comparable."""
    path = write_collection(["(1,3;0)", "(2,3;0)", "(3,1;0)"])
    data = _run_json(monkeypatch, capsys, "hequiver", "--quiver", "++-", str(path))
    assert {tuple(pair) for pair in data["poset"]} == {
        ("(3,1;0)", "(2,3;0)"),
        ("(3,1;0)", "(1,3;0)"),
        ("(2,3;0)", "(1,3;0)"),
    }


def test_hequiver_reports_fans(monkeypatch, capsys, write_collection):
    """Three arcs of the alternating collection meet at the marked point 3."""
    path = write_collection(["(4,2;0)", "(1,3;0)", "(4,3;0)", "(3,4;0)"])
    data = _run_json(monkeypatch, capsys, "hequiver", "--quiver", "+-+-", str(path))
    assert data["exceptional"] is True
    assert data["fans"]["3"] == ["(3,4;0)", "(4,3;0)", "(1,3;0)"]
    assert data["fans"]["2"] == ["(4,2;0)"]
    assert data["fans"]["1"] == ["(1,3;0)"]
    assert len(data["orderings"]) == data["linear_extensions"]
    for order in data["orderings"]:
        for x, y in data["poset"]:
            assert order.index(x) < order.index(y)


def test_hequiver_text_lists_fans(monkeypatch, capsys, write_collection):
    path = write_collection(["(4,2;0)", "(1,3;0)", "(4,3;0)", "(3,4;0)"])
    _run(monkeypatch, "hequiver", "--quiver", "+-+-", str(path))
    assert "fan at 3: (3,4;0) (4,3;0) (1,3;0)" in capsys.readouterr().out


def test_hequiver_algebraic(monkeypatch, capsys, write_collection):
    path = write_collection(["(1,2;0)", "(1,2;1)"])
    data = _run_json(monkeypatch, capsys, "hequiver", "--quiver", "+-", "--algebraic", str(path))
    assert [a["degree"] for a in data["quiver"]["arrows"]] == [0, 0]


def test_hequiver_not_exceptional_exits_0(monkeypatch, capsys, write_collection):
    """A crossing collection gets a verdict and a witness, not an error."""
    path = write_collection(["(1,3;0)", "(3,2;0)", "(3,1;0)"])
    data = _run_json(monkeypatch, capsys, "hequiver", "--quiver", "++-", str(path))
    assert data["exceptional"] is False
    assert "quiver" not in data
    assert any("intersect" in reason for reason in data["witness"])


def test_hequiver_writes_out_file(monkeypatch, capsys, tmp_path, write_collection):
    path = write_collection(["(1,3;0)", "(2,3;0)", "(3,1;0)"])
    out = tmp_path / "results" / "case_a.json"
    _run(monkeypatch, "hequiver", "--quiver", "++-", "--json", "--out", str(out), str(path))
    assert capsys.readouterr().out.strip() == str(out)
    assert json.loads(out.read_text())["exceptional"] is True


def test_orderings(monkeypatch, capsys, write_collection):
    path = write_collection(["(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)"])
    data = _run_json(monkeypatch, capsys, "orderings", "--quiver", "+++-", str(path))
    assert data["count"] == 1
    assert data["orderings"] == [["(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)"]]


# ── twist ─────────────────────────────────────────────────────────────────


def test_twist_round_trip(monkeypatch, capsys, tmp_path, write_collection):
    """T_L followed by T_L^-1 gives back the canonical collection file."""
    path = write_collection(["(3,1;0)", "(2,3;0)", "(1,3;0)"])
    once = tmp_path / "once.txt"
    back = tmp_path / "back.txt"
    _run(monkeypatch, "twist", "--quiver", "++-", "--word", "1", "0", "--out", str(once), str(path))
    _run(monkeypatch, "twist", "--quiver", "++-", "--word", "-1", "0", "--out", str(back), str(once))
    capsys.readouterr()
    assert once.read_text() != back.read_text()
    assert back.read_text() == "(1,3;0)\n(2,3;0)\n(3,1;0)\n"


def test_twist_search(monkeypatch, capsys, write_collection):
    source = write_collection(["(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)"], "simples.txt")
    target = write_collection(["(1,4;0)", "(1,2;0)", "(2,3;0)", "(3,4;1)"], "twisted.txt")
    data = _run_json(
        monkeypatch, capsys, "twist", "--quiver", "+++-", "--to", str(target), str(source)
    )
    assert data["_meta"]["section"] == "twist"
    assert data["word"] is not None
    assert 0 <= data["word"][0] < 3


# ── classify / superquiver / check / render ───────────────────────────────


def test_classify_kronecker(monkeypatch, capsys):
    data = _run_json(monkeypatch, capsys, "classify", "--quiver", "+-", "--max-winding", "1")
    assert len(data["classes"]) == 1


def test_superquiver(monkeypatch, capsys, write_collection):
    path = write_collection(["(4,1;0)", "(1,2;0)", "(2,3;0)", "(3,4;0)"])
    data = _run_json(monkeypatch, capsys, "superquiver", "--quiver", "+++-", str(path))
    assert len(data["superquiver"]["frozen"]) == 1


def test_check_pairs_only(monkeypatch, capsys):
    data = _run_json(
        monkeypatch, capsys, "check", "--quiver", "++-", "--quiver", "+-",
        "--max-winding", "0", "--skip-sets",
    )
    assert data["_meta"]["orientations"] == ["++-", "+-"]
    assert data["pairs"] == 9 * 9 + 4 * 4
    assert data["sets"] == 0


def test_check_sets(monkeypatch, capsys):
    _run(monkeypatch, "check", "--quiver", "+-", "--max-winding", "1", "--compare-fields")
    assert capsys.readouterr().out.startswith("ok: ")


def test_check_reports_boundary_swaps(monkeypatch, capsys):
    """Over (+,-,+,-) some isomorphic sets are related only through the swap."""
    data = _run_json(monkeypatch, capsys, "check", "--quiver", "+-+-", "--max-winding", "0")
    report = data["classes"]["+-+-"]
    assert report["unjustified"] == []
    assert report["swap_related"] >= 1


def test_render_writes_svg(monkeypatch, capsys, tmp_path, write_collection):
    path = write_collection(["(1,3;0)", "(2,3;0)", "(3,1;0)"])
    out = tmp_path / "case_a.svg"
    _run(monkeypatch, "render", "--quiver", "++-", "--heart", "--band", "1", "--out", str(out), str(path))
    svg = out.read_text()
    assert svg.startswith("<svg")
    assert "stroke-dasharray" in svg
    assert capsys.readouterr().out.strip() == str(out)


def test_orientation_with_leading_minus_uses_equals(monkeypatch, capsys):
    """An orientation starting with '-' is passed as --quiver=-+..."""
    data = _run_json(monkeypatch, capsys, "hom", "--quiver=-+", "(1,2;0)", "(1,2;0)")
    assert data["dim"] == 1
    assert data["_meta"]["orientation"] == "-+"


def test_log_file_receives_debug_messages(monkeypatch, capsys, tmp_path):
    log_file = tmp_path / "logs" / "run.log"
    _run(
        monkeypatch, "--log-level", "DEBUG", "--log-file", str(log_file),
        "hom", "--quiver", "++-", "(2,3;0)", "(1,3;0)",
    )
    assert capsys.readouterr().out.startswith("dim Hom((2,3;0), (1,3;0)) = 1")
    assert "atilde_exceptional.cli" in log_file.read_text()
