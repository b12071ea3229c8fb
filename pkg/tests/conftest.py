import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.CRITERIA):
        if num in mod.RESULTS:
            ok, line = mod.RESULTS[num]
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {line}")
        else:
            terminalreporter.write_line(f"[FAIL] {num:2d}. {mod.CRITERIA[num][0]}: did not complete")
