import csv
import io
import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from signbounds import cli
from signbounds.cli import (
    InstanceError,
    RunConfig,
    UsageError,
    VerifyEntry,
    main,
    parse_instance_text,
    parse_range,
    render_instance,
    verification_rows,
)
from signbounds.polyalg import SparsePolynomial


def run_csv(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, list(csv.DictReader(io.StringIO(out.out))), out


def test_bounds_single_row(capsys):
    code, rows, _ = run_csv(capsys, "--cmd", "bounds", "--s", "1", "--k", "2", "--kprime", "1", "--d", "2", "--d0", "1")
    assert code == 0
    assert rows == [
        {
            "s": "1",
            "k": "2",
            "kprime": "1",
            "d": "2",
            "d0": "1",
            "main_uniform": "82",
            "bpr8": "30",
            "tightness_lower": "3",
            "ratio": "2.733333",
        }
    ]


def test_bounds_sweep_ordering(capsys):
    code, rows, _ = run_csv(capsys, "--cmd", "bounds", "--s", "1", "--k", "2", "--kprime", "1", "--d", "2..4", "--d0", "1")
    assert code == 0
    assert [r["d"] for r in rows] == ["2", "3", "4"]


def test_bounds_positive_range_flag(capsys):
    _, rows, _ = run_csv(
        capsys, "--cmd", "bounds", "--s", "1", "--k", "2", "--kprime", "1", "--d", "2", "--d0", "1", "--bpr8-range", "positive"
    )
    assert rows[0]["bpr8"] == "24"


def test_empty_sweep_is_usage_error(capsys):
    code = main(["--cmd", "bounds", "--s", "3..1", "--k", "2", "--kprime", "1", "--d", "2", "--d0", "1"])
    assert code == 2
    assert "empty range" in capsys.readouterr().err


def test_missing_parameter_is_usage_error(capsys):
    assert main(["--cmd", "bounds", "--s", "1"]) == 2


def test_unknown_command_exits_2():
    with pytest.raises(SystemExit) as exc:
        main(["--cmd", "nope"])
    assert exc.value.code == 2


def test_csv_output_is_deterministic(tmp_path):
    args = ["--cmd", "compare", "--s", "0..3", "--k", "1..3", "--kprime", "0..2", "--d", "1..3", "--d0", "1..2"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(args + ["--output", str(a)]) == 0
    assert main(args + ["--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    rows = list(csv.DictReader(io.StringIO(a.read_text())))
    keys = [tuple(int(r[n]) for n in ("s", "k", "kprime", "d", "d0")) for r in rows]
    assert keys == sorted(keys)
    assert all(int(r["kprime"]) <= int(r["k"]) for r in rows)


def test_json_format(capsys):
    assert main(["--cmd", "compare", "--s", "2", "--k", "2", "--kprime", "1", "--d", "1", "--d0", "1", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["bpr_tight_leading"] == "8/1"
    assert rows[0]["smaller"] in {"main", "bpr8", "tie"}


def test_grassmannian_and_counterexample(capsys):
    code, rows, _ = run_csv(capsys, "--cmd", "grassmannian", "--n", "3", "--k", "1", "--d", "2")
    assert code == 0 and rows[0]["main_uniform"] == "5098"
    code, rows, _ = run_csv(capsys, "--cmd", "counterexample", "--d", "4", "--k", "3", "--m", "3")
    assert code == 0
    assert (rows[0]["oracle_count"], rows[0]["degree_product"], rows[0]["exceeds_product"]) == ("128", "48", "yes")
    assert main(["--cmd", "grassmannian", "--n", "3", "--k", "2", "--d", "2"]) == 2


def test_tightness_command(capsys):
    code, rows, _ = run_csv(capsys, "--cmd", "tightness", "--s", "2", "--d", "2", "--d0", "3")
    assert code == 0
    assert rows[0]["oracle_strict"] == rows[0]["lower_bound"] == "15"
    assert int(rows[0]["main_uniform"]) >= 15


def test_verify_builtin_corpus(capsys):
    code, rows, _ = run_csv(capsys, "--cmd", "verify")
    assert code == 0
    assert rows and all(r["status"] == "pass" for r in rows)
    tight = next(r for r in rows if r["instance"] == "tightness-s2-d2-d03")
    assert tight["oracle_total"] == "15"


def test_verify_input_file(tmp_path, capsys):
    path = tmp_path / "inst.json"
    path.write_text('{"nvars":1,"family":[{"terms":[{"exps":[1],"coef":"1/1"}]}]}')
    code, rows, _ = run_csv(capsys, "--cmd", "verify", "--input", str(path))
    assert code == 0
    assert rows[0]["oracle_total"] == "3"


def test_verify_grid_input(tmp_path, capsys):
    x, y = SparsePolynomial.variable(2, 0), SparsePolynomial.variable(2, 1)
    path = tmp_path / "grid.json"
    path.write_text(render_instance([x * y]))
    code, rows, _ = run_csv(capsys, "--cmd", "verify", "--input", str(path), "--resolution", "16")
    assert code == 0
    assert rows[0]["exact"] == "heuristic" and rows[0]["oracle_total"] == "4"


def test_verify_parse_error_reports_line(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "nvars": 1,\n  "family": [\n}')
    assert main(["--cmd", "verify", "--input", str(path)]) == 2
    assert "line 4" in capsys.readouterr().err


def test_verify_fail_path_with_corrupted_count(monkeypatch, capsys):
    rows, ok = verification_rows([VerifyEntry("ok", 3, 10, True), VerifyEntry("corrupted", 11, 10, True)])
    assert not ok
    assert [r["status"] for r in rows] == ["pass", "FAIL"]

    real = cli.verify_instance

    def corrupted(name, family, variety, resolution=64):
        entry = real(name, family, variety, resolution)
        return VerifyEntry(name, entry.bound + 1, entry.bound, entry.exact)

    monkeypatch.setattr(cli, "verify_instance", corrupted)
    code = main(["--cmd", "verify"])
    assert code == 1
    assert "FAIL" in capsys.readouterr().out


# -- instance format -----------------------------------------------------------


def test_parse_examples():
    family, variety = parse_instance_text('{"nvars":1,"family":[{"terms":[{"exps":[1],"coef":"1/1"}]}]}')
    assert family == [SparsePolynomial.variable(1, 0)] and variety is None
    family, _ = parse_instance_text('{"nvars":1,"family":[{"terms":[{"exps":[0],"coef":"2/4"}]}]}')
    assert family[0].terms == {(0,): SparsePolynomial.constant(1, "1/2").terms[(0,)]}


@pytest.mark.parametrize(
    "text",
    [
        '{"family":[]}',
        '{"nvars":1,"family":[{"terms":[{"exps":[1.5],"coef":"1"}]}]}',
        '{"nvars":2,"family":[{"terms":[{"exps":[1],"coef":"1"}]}]}',
        '{"nvars":1,"family":[{"terms":[{"exps":[1],"coef":"x"}]}]}',
        '{"nvars":1,"family":[{"terms":[{"exps":[1],"coef":"1"},{"exps":[1],"coef":"-1"}]}]}',
        '{"nvars":1,"family":[{"terms":[]}]}',
        '{"nvars":1,"family":[{"terms":[{"exps":[1],"coef":0.5}]}]}',
        "[1, 2]",
    ],
)
def test_parse_rejects(text):
    with pytest.raises(InstanceError):
        parse_instance_text(text)


def poly_strategy(nvars):
    term = st.tuples(
        st.tuples(*[st.integers(0, 4)] * nvars),
        st.fractions(min_value=-50, max_value=50, max_denominator=30),
    )
    return st.lists(term, min_size=1, max_size=6).map(lambda ts: SparsePolynomial(nvars, ts)).filter(
        lambda p: not p.is_zero()
    )


@settings(max_examples=60)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.lists(poly_strategy(n), max_size=3), st.none() | poly_strategy(n))))
def test_render_parse_round_trip(instance):
    family, variety = instance
    if not family and variety is None:
        return
    assert parse_instance_text(render_instance(family, variety)) == (family, variety)


def test_parse_range():
    assert parse_range("5") == [5]
    assert parse_range("2..4") == [2, 3, 4]
    with pytest.raises(UsageError):
        parse_range("4..2")
    with pytest.raises(UsageError):
        parse_range("a")


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("bounds", resolution=1)
    with pytest.raises(UsageError):
        RunConfig("bounds", ranges={"s": []})


def test_decimal_rounding():
    from fractions import Fraction

    assert cli._decimal(Fraction(82, 30)) == "2.733333"
    assert cli._decimal(Fraction(1, 2 * 10**6)) == "0.000001"
    assert cli._decimal(Fraction(-2, 3)) == "-0.666667"
    assert cli._decimal(Fraction(10**30, 3)).startswith("333333333333333333333333333333.33")
