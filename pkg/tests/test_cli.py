import io

import pytest

from sigdigits import DigitBlock, DomainError
from sigdigits.cli import RunConfig, main, run


def kv(text):
    return dict(line.split("=", 1) for line in text.strip().splitlines())


def test_predict_table(capsys):
    assert main(["predict", "--base", "10", "--width", "1"]) == 0
    out = capsys.readouterr().out
    rows = [l for l in out.splitlines() if l.strip()[:1].isdigit() and "0." in l]
    assert len(rows) == 9
    assert "0.3010299957" in rows[0]


def test_predict_kv_keys(capsys):
    main(["predict", "--format", "kv"])
    doc = kv(capsys.readouterr().out)
    assert doc["command"] == "predict"
    assert float(doc["p.1.probability"]) == pytest.approx(0.30103, abs=1e-5)
    assert set(k for k in doc if k.startswith("p.")) == {f"p.{d}.probability" for d in range(1, 10)}


def test_predict_second_digit(capsys):
    main(["predict", "--position", "2", "--format", "kv"])
    doc = kv(capsys.readouterr().out)
    assert float(doc["p.0.probability"]) == pytest.approx(0.119679, abs=1e-6)


def test_scan(capsys):
    assert main(["scan", "--base", "10", "--d", "1", "--l", "1", "--format", "kv"]) == 0
    doc = kv(capsys.readouterr().out)
    assert 0.029 < float(doc["max_abs"]) < 0.03


def test_error(capsys):
    assert main(["error", "--dist", "sqrt_exp", "--base", "10", "--d", "1", "--format", "kv"]) == 0
    doc = kv(capsys.readouterr().out)
    assert abs(float(doc["total_error"])) == pytest.approx(0.0005, abs=2e-4)
    assert float(doc["kernel_route"]) == pytest.approx(float(doc["total_error"]), abs=1e-4)
    assert doc["bound_certified"] == "true"


def test_oracle_block_and_table(capsys):
    main(["oracle", "--dist", "exp:rate=1", "--d", "1", "--format", "kv"])
    doc = kv(capsys.readouterr().out)
    assert float(doc["probability"]) == pytest.approx(0.3297, abs=1e-4)
    main(["oracle", "--dist", "exp:rate=1", "--format", "kv"])
    doc = kv(capsys.readouterr().out)
    assert float(doc["total"]) == pytest.approx(1.0, abs=1e-8)
    assert float(doc["p.1.oracle"]) == pytest.approx(0.3297, abs=1e-4)


def test_analyze_file(tmp_path, capsys):
    p = tmp_path / "amounts.csv"
    p.write_text("amount\n" + "\n".join(["123", "0", "-19.5", "", "x", "2.2", "1", "15"]) + "\n")
    assert main(["analyze", "--input", str(p), "--column", "amount", "--format", "kv"]) == 0
    doc = kv(capsys.readouterr().out)
    assert doc["total"] == "5"
    assert doc["dropped_zeros"] == "1"
    assert doc["negatives_folded"] == "1"
    assert doc["skipped_rows"] == "2"
    assert doc["d.1.count"] == "4"


def test_analyze_sampled_is_deterministic(capsys):
    args = ["analyze", "--dist", "uniform", "--n", "20000", "--seed", "9", "--format", "kv"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    assert capsys.readouterr().out == first
    assert kv(first)["verdict"] == "violates"


def test_analyze_transform(capsys):
    main(["analyze", "--dist", "loguniform:decades=6", "--n", "100000", "--transform", "power:2", "--format", "kv"])
    assert kv(capsys.readouterr().out)["verdict"] == "conforms"


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["error", "--dist", "bogus", "--d", "1"], "unknown distribution"),
        (["analyze", "--input", "/nonexistent/file.csv"], "No such file"),
        (["scan"], "needs --d"),
        (["scan", "--d", "0"], "lead"),
        (["oracle"], "needs --dist"),
        (["predict", "--tol", "0"], "--tol"),
        (["analyze", "--dist", "exp", "--transform", "power:0"], "power"),
    ],
)
def test_errors_exit_nonzero_with_one_line(argv, fragment, capsys):
    assert main(argv) != 0
    captured = capsys.readouterr()
    assert captured.out == ""
    lines = captured.err.strip().splitlines()
    assert len(lines) == 1 and fragment in lines[0]


def test_bad_column(tmp_path, capsys):
    p = tmp_path / "d.csv"
    p.write_text("a,b\n1,2\n")
    assert main(["analyze", "--input", str(p), "--column", "zz"]) == 2
    assert "no column named" in capsys.readouterr().err


def test_run_config_validation():
    with pytest.raises(DomainError):
        RunConfig(command="predict", base=1)
    with pytest.raises(DomainError):
        RunConfig(command="nope")


def test_run_writes_to_stream():
    buf = io.StringIO()
    status = run(RunConfig(command="scan", block=DigitBlock(10, 1, 9), output_format="kv"), buf)
    assert status == 0
    assert float(kv(buf.getvalue())["max_abs"]) < 1e-10


def test_selftest(capsys):
    assert main(["selftest", "--format", "kv"]) == 0
    doc = kv(capsys.readouterr().out)
    assert [doc[f"check.{i}"] for i in range(1, 12)] == ["pass"] * 11
