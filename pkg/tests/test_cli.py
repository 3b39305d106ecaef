"""The command-line surface: subcommands, exit codes, and JSON output."""

from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from rrfair.cli import main
from rrfair.instances import save, no_pne_instance, bluff_tightness_instance

F = Fraction


@pytest.fixture()
def thm4_path(tmp_path):
    path = tmp_path / "bluff-tightness.json"
    save(bluff_tightness_instance(), path)
    return str(path)


@pytest.fixture()
def no_pne_path(tmp_path):
    path = tmp_path / "no-pne.json"
    save(no_pne_instance(), path)
    return str(path)


def run_cli(capsys, *argv) -> tuple[int, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


# ---------------------------------------------------------------------------
# run


def test_run_bluff_profile(capsys, thm4_path):
    code, out = run_cli(capsys, "run", thm4_path, "--profile", "bluff")
    assert code == 0
    assert "pne_factor = 100/197" in out
    assert "{g1, g3, g5}" in out
    assert "{g2, g4}" in out
    assert "ef1_factor = 25/49" in out


def test_run_json_contains_exact_rationals(capsys, thm4_path):
    code, out = run_cli(capsys, "run", thm4_path, "--profile", "bluff", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["equilibrium"]["pne_factor"]["frac"] == "100/197"
    assert doc["fairness"]["ef1_factor"]["frac"] == "25/49"
    assert doc["fairness"]["pair_ratios"]["2->1"]["frac"] == "25/49"
    assert doc["allocation"] == [[0, 2, 4], [1, 3]]
    assert doc["bound"]["verdict"] == "holds"


def test_run_profile_file(capsys, tmp_path, no_pne_path):
    profile = tmp_path / "profile.txt"
    profile.write_text("0 1 2 3\n3 2 1 0\n", encoding="utf-8")
    code, out = run_cli(capsys, "run", no_pne_path, "--profile", str(profile))
    assert code == 0
    # one of the two agents is capped at ratio 3/4 on this instance
    assert "ratio 3/4" in out


def test_run_rejects_bad_inputs(capsys, tmp_path, no_pne_path):
    code, _ = run_cli(capsys, "run", str(tmp_path / "missing.json"))
    assert code == 2

    bad_profile = tmp_path / "profile.txt"
    bad_profile.write_text("0 1 2 3\n", encoding="utf-8")
    code, _ = run_cli(capsys, "run", no_pne_path, "--profile", str(bad_profile))
    assert code == 2

    not_json = tmp_path / "broken.json"
    not_json.write_text("{", encoding="utf-8")
    code, _ = run_cli(capsys, "run", str(not_json))
    assert code == 2


def test_run_single_agent_instance(capsys, tmp_path):
    from rrfair.valuations import Additive, Instance

    solo = Instance(n=1, m=3, valuations=(Additive([3, 1, 2]),))
    path = tmp_path / "solo.json"
    save(solo, path)
    code, out = run_cli(capsys, "run", str(path), "--profile", "truthful")
    assert code == 0
    assert "pne_factor = 1" in out
    assert "ef1_factor = unbounded" in out


def test_run_guard_policy_exit(capsys, tmp_path):
    from rrfair.valuations import Additive, Instance

    big = Instance(n=3, m=15, valuations=(Additive([1] * 15),) * 3)
    path = tmp_path / "big.json"
    save(big, path)
    code, out = run_cli(capsys, "run", str(path), "--profile", "truthful")
    assert code == 0
    assert "skipped" in out
    code, _ = run_cli(capsys, "run", str(path), "--profile", "truthful",
                      "--require-equilibrium")
    assert code == 3


# ---------------------------------------------------------------------------
# reproduce


def test_reproduce_all_fixtures_pass(capsys):
    for fixture in ("no-pne", "bluff-tightness", "additive-tightness", "oxs-lower-bound"):
        code, out = run_cli(capsys, "reproduce", fixture)
        assert code == 0, (fixture, out)
        assert "PASS" in out


def test_reproduce_reports_expected_numbers(capsys):
    code, out = run_cli(capsys, "reproduce", "no-pne")
    assert "max pne_factor over 576 profiles: expected 3/4 (~0.75), got 3/4 (~0.75) [ok]" in out

    code, out = run_cli(capsys, "reproduce", "additive-tightness", "--json")
    doc = json.loads(out)
    rows = {row["quantity"]: row for row in doc["rows"]}
    assert rows["pne_factor"]["expected"]["frac"] == "1/2"
    assert rows["agent 2 -> 1 ef1 ratio"]["actual"]["frac"] == "1001/3001"
    assert doc["pass"] is True


def test_reproduce_with_parameter_overrides(capsys):
    code, out = run_cli(
        capsys, "reproduce", "bluff-tightness",
        "--param", "eps1=1/1000", "--param", "eps2=2/1000", "--param", "eps3=3/1000",
    )
    assert code == 0
    assert "expected 1000/1997 (~0.500751), got 1000/1997 (~0.500751)" in out


def test_reproduce_rejects_bad_parameters(capsys):
    code, _ = run_cli(capsys, "reproduce", "bluff-tightness", "--param", "eps1=0.5")
    assert code == 2
    code, _ = run_cli(capsys, "reproduce", "bluff-tightness", "--param", "beta=1/2")
    assert code == 2
    # constraint violations surface as input errors, naming the inequality
    code, _ = run_cli(capsys, "reproduce", "additive-tightness", "--param", "beta=1/6")
    assert code == 2


# ---------------------------------------------------------------------------
# scan


def test_scan_exhaustive_summary(capsys, no_pne_path):
    code, out = run_cli(capsys, "scan", no_pne_path, "--exhaustive")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 577  # one per profile plus the summary
    assert "576 profiles" in lines[-1]
    assert "3/4" in lines[-1]
    assert "violations 0" in lines[-1]


def test_scan_sampled_deterministic(capsys, no_pne_path):
    code, first = run_cli(capsys, "scan", no_pne_path, "--samples", "25", "--seed", "7")
    assert code == 0
    _, second = run_cli(capsys, "scan", no_pne_path, "--samples", "25", "--seed", "7")
    assert first == second
    _, different = run_cli(capsys, "scan", no_pne_path, "--samples", "25", "--seed", "8")
    assert first != different


def test_scan_threads_preserve_output(capsys, no_pne_path):
    _, serial = run_cli(capsys, "scan", no_pne_path, "--samples", "30", "--seed", "3")
    _, threaded = run_cli(capsys, "scan", no_pne_path, "--samples", "30", "--seed", "3",
                          "--threads", "4")
    assert serial == threaded


def test_scan_argument_validation(capsys, no_pne_path):
    code, _ = run_cli(capsys, "scan", no_pne_path)
    assert code == 2
    code, _ = run_cli(capsys, "scan", no_pne_path, "--exhaustive", "--samples", "5")
    assert code == 2


def test_scan_exhaustive_guard(capsys, tmp_path):
    from rrfair.valuations import Additive, Instance

    big = Instance(n=2, m=8, valuations=(Additive([1] * 8),) * 2)
    path = tmp_path / "big.json"
    save(big, path)
    code, _ = run_cli(capsys, "scan", str(path), "--exhaustive")
    assert code == 3


# ---------------------------------------------------------------------------
# certify


def test_certify_no_pne_fixture(capsys, no_pne_path):
    code, out = run_cli(capsys, "certify", no_pne_path)
    assert code == 0
    assert out.count("submodular: yes") == 2
    assert out.count("cancelable: no") == 2
    assert "witness S={g1} T={g2} g=g4" in out


def test_certify_additive_fixture_passes_everything(capsys, tmp_path):
    from rrfair.instances import additive_tightness_instance

    path = tmp_path / "additive.json"
    save(additive_tightness_instance(), path)
    code, out = run_cli(capsys, "certify", str(path))
    assert code == 0
    for check in ("monotone", "additive", "submodular", "cancelable", "subadditive"):
        assert out.count(f"\n  {check}: yes") == 2


def test_certify_json_and_guard_skips(capsys, tmp_path):
    from rrfair.valuations import Additive, Instance

    wide = Instance(n=1, m=21, valuations=(Additive([1] * 21),))
    path = tmp_path / "wide.json"
    save(wide, path)
    code, out = run_cli(capsys, "certify", str(path), "--json")
    assert code == 0
    doc = json.loads(out)
    agent = doc["agents"][0]
    # every exhaustive check is guarded out at this size, reported per check
    for check in ("monotone", "additive", "submodular", "cancelable", "subadditive"):
        assert agent[check]["holds"] is None
        assert "skipped" in agent[check]


# ---------------------------------------------------------------------------
# generate


def test_generate_random_document(capsys, tmp_path):
    out_path = tmp_path / "gen.json"
    code, _ = run_cli(capsys, "generate", "--class", "oxs", "--agents", "2",
                      "--goods", "5", "--seed", "11", "-o", str(out_path))
    assert code == 0
    from rrfair.instances import load

    inst = load(out_path)
    assert (inst.n, inst.m) == (2, 5)


def test_generate_fixture_document(capsys):
    code, out = run_cli(capsys, "generate", "--fixture", "additive-tightness")
    assert code == 0
    doc = json.loads(out)
    assert doc["agents"][0]["weights"][0] == "6"


def test_generate_argument_validation(capsys):
    code, _ = run_cli(capsys, "generate")
    assert code == 2
    code, _ = run_cli(capsys, "generate", "--class", "oxs", "--fixture", "no-pne")
    assert code == 2
    code, _ = run_cli(capsys, "generate", "--class", "oxs", "--weights", "9")
    assert code == 2


# ---------------------------------------------------------------------------
# best-response


def test_best_response_command(capsys, thm4_path):
    code, out = run_cli(capsys, "best-response", thm4_path, "--agent", "2",
                        "--profile", "bluff")
    assert code == 0
    assert "best response: 197/100" in out
    assert "{g3, g4}" in out
    assert "ratio current/best: 100/197" in out


def test_best_response_json(capsys, thm4_path):
    code, out = run_cli(capsys, "best-response", thm4_path, "--agent", "2",
                        "--profile", "bluff", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["best_response"]["value"]["frac"] == "197/100"
    assert doc["best_response"]["bundle"] == [2, 3]
    assert doc["ratio"]["frac"] == "100/197"


def test_best_response_agent_validation(capsys, thm4_path):
    code, _ = run_cli(capsys, "best-response", thm4_path, "--agent", "5")
    assert code == 2


# ---------------------------------------------------------------------------
# console entry point


def test_console_script_runs():
    result = subprocess.run(
        [sys.executable, "-m", "rrfair.cli", "reproduce", "bluff-tightness"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert result.returncode == 0
    assert "PASS" in result.stdout
