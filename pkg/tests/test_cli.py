import json

import pytest

from tetris.cli import RunSpec, main, parse_layout, run_compile
from tetris.compiler import CompileOptions


@pytest.fixture
def fig3(tmp_path):
    p = tmp_path / "fig3.txt"
    p.write_text("YZZZY\nXZZZX\n")
    return p


def test_run_compile_counts(fig3):
    _, tetris = run_compile(RunSpec(fig3, "linear:5"))
    _, naive = run_compile(RunSpec(fig3, "linear:5", CompileOptions(mode="naive_chain")))
    assert tetris.canceled_cnots == 4
    assert naive.canceled_cnots == 0


def test_compile_writes_outputs(fig3, tmp_path):
    q, r, c = tmp_path / "o.qasm", tmp_path / "r.json", tmp_path / "r.csv"
    code = main(["compile", "--input", str(fig3), "--topology", "linear:5", "--qasm-out", str(q),
                 "--report-out", str(r), "--csv-out", str(c)])
    assert code == 0
    assert q.read_text().count("OPENQASM 2.0;") == 1
    assert json.loads(r.read_text())["canceled_cnots"] == 4
    header, row = c.read_text().splitlines()
    assert header.startswith("input,mode") and ",tetris,linear-5," in row


def test_text_report(fig3, tmp_path):
    r = tmp_path / "r.txt"
    main(["compile", "--input", str(fig3), "--topology", "linear:5", "--report-out", str(r), "--qasm-out",
          str(tmp_path / "x.qasm")])
    assert "canceled_cnots=4" in r.read_text()


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.txt"
    bad.write_text("XX\n\n\nZZ\n")
    assert main(["compile", "--input", str(bad), "--topology", "linear:2"]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_file_exit_code(tmp_path, capsys):
    assert main(["compile", "--input", str(tmp_path / "nope.txt")]) == 1
    assert "error" in capsys.readouterr().err


def test_layout_file(fig3, tmp_path, capsys):
    lay = tmp_path / "layout.txt"
    lay.write_text("# logical physical\n0 4\n1 3\n2 2\n3 1\n4 0\n")
    assert parse_layout(lay.read_text()) == {0: 4, 1: 3, 2: 2, 3: 1, 4: 0}
    assert main(["compile", "--input", str(fig3), "--topology", "linear:5", "--layout", str(lay)]) == 0
    assert "// initial_layout=4 3 2 1 0" in capsys.readouterr().out
    with pytest.raises(ValueError):
        parse_layout("0 1\n0 2\n")


def test_generators(tmp_path):
    u, q = tmp_path / "u.txt", tmp_path / "q.txt"
    assert main(["gen-ucc", "--n", "5", "--blocks", "4", "--seed", "1", "--out", str(u)]) == 0
    assert main(["gen-qaoa", "--kind", "regular", "--n", "6", "--out", str(q)]) == 0
    assert len(u.read_text().strip().split("\n\n")) == 4
    assert len(q.read_text().strip().split("\n\n")) == 9
    assert main(["gen-qaoa", "--kind", "regular", "--n", "5"]) == 1


def test_report_writes_tables_and_figures(tmp_path):
    u = tmp_path / "u.txt"
    main(["gen-ucc", "--n", "5", "--blocks", "3", "--out", str(u)])
    out = tmp_path / "figs"
    assert main(["report", "--input", str(u), "--topology", "grid:3x3", "--out-dir", str(out)]) == 0
    for name in ("cancellation.csv", "cnot_breakdown.csv", "cancellation.png", "cnot_breakdown.png"):
        assert (out / name).stat().st_size > 0
    rows = (out / "cnot_breakdown.csv").read_text().splitlines()
    assert rows[0] == "benchmark,series,cnots"
    assert any(r.startswith("u,tetris_S,") for r in rows)
    assert (out / "cancellation.png").read_bytes()[:4] == b"\x89PNG"


def test_outputs_are_byte_identical(fig3, tmp_path):
    outs = []
    for i in range(2):
        q, r = tmp_path / f"{i}.qasm", tmp_path / f"{i}.txt"
        main(["compile", "--input", str(fig3), "--topology", "grid:3x3", "--bridge", "on", "--seed", "7",
              "--qasm-out", str(q), "--report-out", str(r)])
        outs.append((q.read_bytes(), r.read_bytes()))
    assert outs[0] == outs[1]
