"""Documented CLI invocations with golden JSON output under tests/golden/.

Regenerate with ``python tests/cli_cases.py`` after an intended output change.
"""
from __future__ import annotations

import contextlib
import io
import sys
from pathlib import Path

from transurgery.cli import main

GOLDEN = Path(__file__).parent / "golden"

# name -> (argv, expected exit code)
CASES = {
    "twist_d2": (["twist", "--on", "1/4", "--along", "1/2", "--sign", "+1"], 0),
    "twist_fixed": (["twist", "--on", "2/3", "--along", "2/3", "--sign", "-1"], 0),
    "twist_count": (["twist", "--on", "-7/3", "--along", "-2/1", "--sign", "+1", "--count", "3"], 0),
    "twist_bad_slope": (["twist", "--on", "1/x", "--along", "1/2", "--sign", "1"], 2),
    "reduce_7_3": (["reduce", "--slope", "-7/3", "--n", "-1", "--a", "-1/4"], 0),
    "reduce_2": (["reduce", "--slope", "-2", "--n", "-1", "--a", "-1/4"], 0),
    "reduce_hypothesis": (["reduce", "--slope", "-1/2", "--n", "-1", "--a", "-1/4"], 3),
    "classify_descending": (["classify", "--slope", "-2/3", "--n", "-1", "--a", "-1/4"], 0),
    "classify_realizable": (["classify", "--slope", "-3/2", "--n", "-1", "--a", "-1/4"], 0),
    "classify_unknown": (["classify", "--slope", "-5/11", "--n", "-1", "--a", "-1/4"], 0),
    "classify_inadmissible": (["classify", "--slope", "0", "--n", "-1", "--a", "-1/4"], 3),
    "family_status": (["family", "status", "--n", "3", "--k1", "2", "--k2", "2"], 0),
    "family_status_capped": (["family", "status", "--n", "3", "--k1", "2", "--k2", "2", "--capped"], 0),
    "family_status_unknown": (["family", "status", "--n", "3", "--k1", "1", "--k2", "2"], 0),
    "family_fdtc_capped": (["family", "fdtc", "--n", "3", "--k1", "2", "--k2", "2", "--capped"], 0),
    "family_homology_1": (["family", "homology", "--n", "1", "--k1", "0", "--k2", "0"], 0),
    "family_homology_3": (["family", "homology", "--n", "3", "--k1", "0", "--k2", "0"], 0),
    "family_homology_fill": (["family", "homology", "--n", "3", "--k1", "2", "--k2", "2", "--fill", "B1=0"], 0),
    "family_tight_slopes": (["family", "tight-slopes", "--n", "3", "--k1", "2", "--k2", "2", "--a", "1/3"], 0),
    "family_tight_slopes_regime": (["family", "tight-slopes", "--n", "1", "--k1", "2", "--k2", "2"], 3),
    "braid_components_family": (["braid", "components", "--word", "( s1 s2^-1 s3 ( s1 s2 )^-6 )^1"], 0),
    "braid_det_family_3": (["braid", "det", "--word", "( s1 s2^-1 s3 ( s1 s2 )^-6 )^3"], 0),
    "braid_det_trefoil": (["braid", "det", "--word", "s1^3"], 0),
    "braid_components_empty": (["braid", "components", "--word", ""], 0),
    "braid_parse_error": (["braid", "det", "--word", "s1 (s2"], 2),
    "openbook_lens": (["openbook", "homology", "--builtin", "annulus", "--word", "gamma^7"], 0),
}


def run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
        code = main(["--json", *argv])
    return code, buf.getvalue()


if __name__ == "__main__":
    GOLDEN.mkdir(exist_ok=True)
    for name, (argv, want) in CASES.items():
        code, out = run(argv)
        if code != want:
            sys.exit(f"{name}: exit {code}, expected {want}")
        (GOLDEN / f"{name}.json").write_text(out)
    print(f"wrote {len(CASES)} golden files")
