import json
import subprocess
import sys

import pytest

from cli_cases import CASES, GOLDEN, run
from transurgery.braids import link_determinant, family_braid


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    argv, want = CASES[name]
    code, out = run(argv)
    assert code == want
    assert out == (GOLDEN / f"{name}.json").read_text()


@pytest.mark.parametrize("name", sorted(CASES))
def test_deterministic(name):
    argv, _ = CASES[name]
    assert run(argv) == run(argv)


def payload(name):
    code, out = run(CASES[name][0])
    return json.loads(out)


def test_documented_values():
    assert payload("twist_d2")["payload"]["result"] == "inf"
    assert payload("twist_fixed")["payload"]["result"] == "2/3"
    assert payload("twist_count")["payload"]["result"] == "inf"
    p = payload("reduce_7_3")["payload"]
    assert p["verified"] and p["trace"][-1] == "inf" and sum(s["count"] for s in p["steps"]) == 3
    assert len(payload("reduce_2")["payload"]["steps"]) == 1
    assert payload("reduce_hypothesis")["reason"] == "hypothesis"
    assert payload("classify_descending")["payload"]["verdict"] == "NotLocallyRealizable"
    assert payload("classify_realizable")["payload"]["verdict"] == "LegendrianRealizable"
    assert payload("classify_unknown")["payload"]["verdict"] == "Unknown"
    assert payload("family_status")["payload"]["status"] == "UniversallyTight"
    assert payload("family_status_capped")["payload"]["status"] == "Overtwisted"
    assert payload("family_status_unknown")["payload"]["status"] == "Unknown"
    assert payload("family_fdtc_capped")["payload"]["fdtc"] == ["-1"]
    assert payload("braid_components_family")["payload"]["components"] == 1
    assert payload("braid_det_trefoil")["payload"]["determinant"] == 3
    assert payload("braid_components_empty")["payload"]["components"] == 4
    assert payload("openbook_lens")["payload"]["invariant_factors"] == [7]
    regime = payload("family_tight_slopes_regime")
    assert regime["reason"] == "hypothesis" and "k2 <= n" in regime["message"]


def test_homology_matches_braid_det():
    for n, name in ((1, "family_homology_1"), (3, "family_homology_3")):
        assert payload(name)["payload"]["order"] == link_determinant(family_braid(n))
    assert payload("braid_det_family_3")["payload"]["determinant"] == payload("family_homology_3")["payload"]["order"]


def test_tight_slopes_payload():
    p = payload("family_tight_slopes")["payload"]
    status = {e["slope"]: e["status"] for e in p["entries"]}
    assert status == {"-5/1": "Tight", "-1/2": "Tight", "0/1": "Overtwisted",
                      "1/4": "Tight", "2/9": "Tight", "1/5": "Unknown"}
    assert p["contains_nonclosed_set"] and p["disconnected"]


def test_surface_file_option(tmp_path):
    from transurgery.open_books import builtin_surfaces

    path = tmp_path / "ann.json"
    path.write_text(json.dumps(builtin_surfaces()["annulus"].to_dict()))
    code, out = run(["openbook", "homology", "--surface", str(path), "--word", "gamma^4"])
    assert code == 0 and json.loads(out)["payload"]["order"] == 4
    code, _ = run(["openbook", "homology", "--surface", str(path), "--word", "nope"])
    assert code == 2


def test_text_mode_and_console_entry():
    res = subprocess.run(
        [sys.executable, "-m", "transurgery.cli", "twist", "--on", "1/4", "--along", "1/2", "--sign", "+1"],
        capture_output=True, text=True,
    )
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "inf"
    res = subprocess.run(
        [sys.executable, "-m", "transurgery.cli", "reduce", "--slope", "-1/2", "--n", "-1", "--a", "-1/4"],
        capture_output=True, text=True,
    )
    assert res.returncode == 3 and "hypothesis" in res.stderr
