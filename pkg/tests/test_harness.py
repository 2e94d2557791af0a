import json
import subprocess
from fractions import Fraction
import sys
from pathlib import Path

import pytest
from scipy.stats import norm

from coxeter_clt.cli import main
from coxeter_clt.errors import OrderExceedsCap, ParameterOutOfRange, ParseError
from coxeter_clt.harness import (
    BOUNDED_VARIANCE_WARNING,
    CSV_COLUMNS,
    ExperimentReport,
    SequenceSpec,
    emit_report,
    ks_to_normal,
    parse_spec,
    report_from_json,
    run_experiment,
)
from coxeter_clt.coxeter import make_irreducible
from coxeter_clt.distributions import exact_t_distribution, standardize
from coxeter_clt.wasserstein import d2_to_normal

SPECS = Path(__file__).parent.parent / "specs"


def spec_text(**kw):
    base = {"name": "t", "groups": ["A2"], "mode": "exact", "samples": 10, "seed": 1, "cap": 10**7}
    base.update(kw)
    return json.dumps(base)


def test_parse_spec_ok():
    spec = parse_spec(spec_text(groups=["A4xI2(5)", "E8"], mode="auto"))
    assert spec.groups == ["A4xI2(5)", "E8"] and spec.mode == "auto"


def test_parse_spec_lists_every_bad_group():
    with pytest.raises(ParameterOutOfRange) as info:
        parse_spec(spec_text(groups=["A2", "D3", "I2(2)"]))
    assert "groups[1]" in str(info.value) and "groups[2]" in str(info.value)
    with pytest.raises(ParseError) as info:
        parse_spec(spec_text(groups=["D3", "Q7"]))
    assert "groups[0]" in str(info.value) and "groups[1]" in str(info.value)


@pytest.mark.parametrize(
    "kw", [{"groups": []}, {"mode": "fast"}, {"samples": 0, "mode": "auto"}, {"seed": -1}, {"extra": 1}, {"cap": "big"}]
)
def test_parse_spec_rejects(kw):
    with pytest.raises(ParseError):
        parse_spec(spec_text(**kw))


def test_shipped_specs_parse():
    for path in SPECS.glob("*.json"):
        parse_spec(path.read_text())


def test_ks_exact_supremum():
    s = standardize(exact_t_distribution(make_irreducible("A", 1)))
    # F jumps at -1 and 1; compare both one-sided limits at each jump
    expected = max(norm.cdf(-1), 0.5 - norm.cdf(-1), norm.cdf(1) - 0.5, 1 - norm.cdf(1))
    assert ks_to_normal(s) == pytest.approx(expected, abs=1e-15)


def test_trivial_row_is_a_diagnostic():
    report = run_experiment(SequenceSpec("triv", ["1", "A1"], mode="exact"))
    row = report.rows[0]
    assert row.variance == 0 and row.d2_normal is None and "zero variance" in row.diagnostic
    assert report.rows[1].diagnostic is None


def test_dihedral_power_sequence():
    groups = ["x".join(["I2(3)"] * n) for n in range(1, 11)]
    report = run_experiment(SequenceSpec("i2", groups, mode="exact"))
    assert report.column("variance_exact") == [str(Fraction(4 * n, 3)) for n in range(1, 11)]
    d2 = report.column("d2_normal")
    assert all(b < a for a, b in zip(d2, d2[1:]))
    assert report.warnings == []


def test_exact_mode_respects_cap():
    with pytest.raises(OrderExceedsCap):
        run_experiment(SequenceSpec("big", ["A12"], mode="exact"))
    report = run_experiment(SequenceSpec("auto", ["A12", "A3"], mode="auto", samples=20_000))
    assert report.column("method") == ["montecarlo", "exact"]


def test_montecarlo_mean_on_a_family():
    report = run_experiment(SequenceSpec("mc", ["A10", "A20", "A40"], mode="montecarlo", samples=10**6, seed=5))
    for row, p in zip(report.rows, (10, 20, 40)):
        se = (row.variance / row.samples) ** 0.5
        assert abs(row.mean - p) <= 3 * se


def test_bounded_variance_warning():
    report = run_experiment(SequenceSpec("flat", ["I2(5)xA2"] * 5, mode="exact"))
    assert BOUNDED_VARIANCE_WARNING in report.warnings


def test_emit_empty_and_single(tmp_path):
    empty = ExperimentReport("e")
    assert emit_report(empty, "csv") == ",".join(CSV_COLUMNS[:-1]) + "\n"
    one = run_experiment(SequenceSpec("one", ["A2"], mode="exact"))
    lines = emit_report(one, "csv", tmp_path / "r.csv").splitlines()
    assert len(lines) == 2 and ",exact," in lines[1]
    assert (tmp_path / "r.csv").read_text().splitlines() == lines


def test_json_round_trip():
    report = run_experiment(SequenceSpec("rt", ["A3", "A12", "1"], mode="auto", samples=5000, seed=3))
    back = report_from_json(emit_report(report, "json", include_timing=True))
    assert back == report


def test_exceptional_groups_in_montecarlo(tmp_path):
    report = run_experiment(
        SequenceSpec("exc", ["H3xA3"], mode="montecarlo", samples=50_000, seed=2), cache_dir=tmp_path
    )
    assert report.rows[0].method == "montecarlo"
    assert abs(report.rows[0].mean - (3 + 3)) < 0.05


def _write_spec(tmp_path, **kw):
    path = tmp_path / "spec.json"
    path.write_text(spec_text(**kw))
    return str(path)


def test_cli_run_and_exit_codes(tmp_path, capsys):
    spec = _write_spec(tmp_path, groups=["A3", "I2(5)xB2"])
    out = tmp_path / "r.json"
    assert main(["run", "--spec", spec, "--format", "json", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["rows"]) == 2
    bad = _write_spec(tmp_path, groups=["D3"])
    assert main(["run", "--spec", bad]) == 1
    big = _write_spec(tmp_path, groups=["A12"])
    assert main(["run", "--spec", big]) == 2
    assert main(["run", "--spec", str(tmp_path / "missing.json")]) == 2


def test_cli_dist_and_d2(tmp_path, capsys):
    assert main(["dist", "I2(4)"]) == 0
    law = json.loads(capsys.readouterr().out)
    assert law["probs"] == ["1/8", "3/4", "1/8"]
    path = tmp_path / "law.json"
    path.write_text(json.dumps(law))
    assert main(["d2", str(path), "--standardize"]) == 0
    value = float(capsys.readouterr().out)
    assert value == pytest.approx(d2_to_normal(standardize(exact_t_distribution(make_irreducible("I2", 4)))), abs=1e-15)
    path.write_text(json.dumps({"support": ["0"], "probs": ["1"], "shift": None, "scale": None}))
    assert main(["d2", str(path)]) == 0
    assert float(capsys.readouterr().out) == pytest.approx(1.0, abs=1e-12)
    path.write_text("{}")
    assert main(["d2", str(path)]) == 1
    assert main(["dist", "D3"]) == 1


def test_cli_module_entry_point(tmp_path):
    spec = _write_spec(tmp_path, groups=["A2"])
    proc = subprocess.run([sys.executable, "-m", "coxeter_clt", "run", "--spec", spec], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("n,group,")
