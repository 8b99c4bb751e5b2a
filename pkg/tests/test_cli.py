import json

import pytest

from preproj.cli import RunConfig, main, run


def test_cyclic_only_builds_nothing(tmp_path, capsys):
    assert main(["verify", "--type", "E", "--rank", "8", "--suite", "cyclic", "--order", "60",
                 "--out", str(tmp_path)]) == 0
    ledger = (tmp_path / "identities.tsv").read_text().splitlines()
    assert ledger[0].split("\t")[:4] == ["identity", "quiver", "order", "verdict"]
    assert len(ledger) == 4 and all("\tpass\t" in row for row in ledger[1:])
    report = json.loads((tmp_path / "report.json").read_text())
    assert report["ok"] and "resolution" not in report["reports"]


@pytest.mark.parametrize("suite", ["resolution", "hochschild", "cyclic"])
def test_a2_suites_pass(suite):
    assert main(["verify", "--type", "A", "--rank", "2", "--suite", suite]) == 0


def test_a2_all_fails_only_on_numeric_flatness(tmp_path):
    state = run(RunConfig("A", 2, out=tmp_path))
    failing = [v.check for v in state.verdicts if v.ok is not True]
    assert failing and all(check.startswith("flat at numeric parameters") for check in failing)
    assert any(v.check.startswith("flat over") and v.ok for v in state.verdicts)


def test_random_weight_matches_rho(tmp_path):
    assert main(["verify", "--type", "A", "--rank", "2", "--weight", "random:42",
                 "--suite", "hochschild", "--out", str(tmp_path), "--format", "tsv"]) == 0
    rows = (tmp_path / "summary.tsv").read_text()
    assert "Hilbert-series verdicts match mu = rho\tA2\tpass" in rows


@pytest.mark.parametrize("argv", [
    ["verify", "--type", "E", "--rank", "8", "--suite", "resolution"],
    ["verify", "--type", "A", "--rank", "2", "--degree-cap", "1"],
    ["verify", "--type", "A", "--rank", "2", "--weight", "1,-1"],
    ["verify", "--type", "D", "--rank", "2"],
])
def test_config_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_timeout_is_reported():
    state = run(RunConfig("A", 3, suites=("resolution",), timeout=0.001))
    assert not state.ok
    assert state.verdicts[-1].check == "suite finished" and "timed out" in state.verdicts[-1].detail
