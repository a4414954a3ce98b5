import json
import subprocess
import sys

import pytest

from b0kit.cli import main
from b0kit.report import RunReport, canonical_json, check_verdicts, strip_timings

HEIS = "group Heis27 prime 3\ngens a, b, c\ncomm [b, a] = c\n"
BAD = "group Bad prime 3\ngens a, b, c\npow a^3 = b\ncomm [b, a] = c\n"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json", "-")
    doc = json.loads(out)
    assert check_verdicts(doc) == []
    return code, doc


def test_list(capsys):
    code, out, _ = run(capsys, "list")
    assert code == 0
    assert "phi18" in out and "(not transcribed)" in out


def test_group_modes(capsys):
    code, out, _ = run(capsys, "group", "--family", "phi2_51", "--p", "5", "--mode", "quickcheck")
    assert code == 0 and "Vanishes" in out
    code, doc = run_json(capsys, "group", "--family", "phi18", "--p", "5", "--mode", "quickcheck")
    assert doc["results"][0]["verdict"] == "NotApplicable"
    code, doc = run_json(capsys, "group", "--family", "phi18", "--p", "5", "--mode", "b0")
    r = doc["results"][0]
    assert code == 0 and r["verdict"] == "Nontrivial" and r["b0"] == [5] and r["match"]
    code, out, _ = run(capsys, "group", "--family", "phi18", "--p", "5", "--mode", "multiplier")
    assert code == 0 and out.count("C5") == 6


def test_group_from_file(capsys, tmp_path):
    f = tmp_path / "heis.pc"
    f.write_text(HEIS)
    code, doc = run_json(capsys, "group", "--file", str(f), "--p", "3", "--mode", "b0")
    assert code == 0
    r = doc["results"][0]
    assert r["m"] == [3, 3] and r["b0"] == [] and "match" not in r


def test_inconsistent_file_lists_overlaps(capsys, tmp_path):
    f = tmp_path / "bad.pc"
    f.write_text(BAD)
    code, _, err = run(capsys, "group", "--file", str(f), "--p", "3")
    assert code == 1 and "inconsistent presentation" in err


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["table", "--p", "4"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        main(["group", "--p", "5"])
    assert e.value.code == 2
    code, _, err = run(capsys, "group", "--file", "/nonexistent.pc", "--p", "5")
    assert code == 2


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "group", "--family", "phi99", "--p", "5")
    assert code == 1 and "unknown family" in err
    code, _, err = run(capsys, "group", "--family", "phi20", "--p", "5")
    assert code == 1 and "not transcribed" in err
    code, _, err = run(capsys, "verify", "noether", "--script", "nope")
    assert code == 1


def test_verify_identities(capsys):
    code, doc = run_json(capsys, "verify", "identities", "--family", "phi18", "--p", "5",
                         "--samples", "30", "--seed", "4")
    assert code == 0
    assert [r["outcome"] for r in doc["results"]] == ["Pass"] * 5
    # an explicitly requested law that is refused is an error
    code, doc = run_json(capsys, "verify", "identities", "--family", "phi35", "--p", "5",
                         "--law", "L2.2", "--samples", "5")
    assert code == 1 and doc["results"][0]["outcome"] == "NotApplicable"


def test_verify_noether(capsys):
    code, out, _ = run(capsys, "verify", "noether", "--p", "5", "--script", "lemma36", "--script", "cor37")
    assert code == 0 and out.count("Pass") == 2
    code, out, _ = run(capsys, "verify", "noether", "--p", "5", "--script", "phi15_step2", "--literal")
    assert code == 1 and "relation a3^a2 = a3 fails" in out


def test_verify_noether_from_json_file(capsys, tmp_path):
    from b0kit.monomial import build_script
    f = tmp_path / "s.json"
    f.write_text(json.dumps(build_script("lemma38", 5)))
    code, doc = run_json(capsys, "verify", "noether", "--script", str(f))
    assert code == 0 and doc["results"][0]["outcome"] == "Pass"


def test_verify_hk(capsys):
    code, doc = run_json(capsys, "verify", "hk", "--family", "phi18", "--p", "5", "--normal", "a2,a3,g")
    assert code == 0 and doc["results"][0]["verdict"] == "Nontrivial"
    code, out, _ = run(capsys, "verify", "hk", "--family", "phi18", "--p", "5", "--normal", "a3,b,g")
    assert code == 1 and "bicyclic image condition: False" in out


def test_table_json_file(capsys, tmp_path):
    path = tmp_path / "t.json"
    code, out, _ = run(capsys, "table", "--p", "3", "--json", str(path))
    assert code == 0 and "p>3 assumption violated" in out
    doc = json.loads(path.read_text())
    assert check_verdicts(doc) == []
    rows = {r["family"]: r for r in doc["results"]}
    assert rows["phi43_222"]["verdict"] == "NotApplicable"
    assert rows["phi18"]["verdict"] == "Nontrivial"
    assert doc["summary"]["all_match"]
    assert doc["inputs"] == {"p": 3}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "b0kit", "--version"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("b0kit ")


# ----------------------------------------------------------------------------
# report helpers

def test_report_round_trip_and_timings():
    rep = RunReport("group", {"p": 5}, [{"verdict": "Trivial", "timings": {"m0_ms": 1.0}}],
                    seed=3, version="0.1.0", timings={"elapsed_s": 0.2})
    again = RunReport.from_json(rep.to_json())
    assert again == rep
    stripped = json.loads(rep.to_json(timings=False))
    assert "timings" not in stripped and "timings" not in stripped["results"][0]
    assert strip_timings({"a": [{"elapsed_s": 1, "b": 2}]}) == {"a": [{"b": 2}]}
    assert canonical_json({"b": 1, "a": 2}).index('"a"') < canonical_json({"b": 1, "a": 2}).index('"b"')


def test_check_verdicts_flags_unknown_values():
    assert check_verdicts({"results": [{"verdict": "Maybe"}]}) == ["$.results[0].verdict='Maybe'"]
