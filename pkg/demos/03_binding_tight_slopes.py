"""Which admissible surgeries on the binding component C1 stay tight?

Run: python demos/03_binding_tight_slopes.py
"""
from transurgery import FamilyParams, Rational, binding_tight_slope_report

rep = binding_tight_slope_report(FamilyParams(3, 2, 2), Rational(1, 3))
samples = ["-5", "-1/2", "-1/100", "0", "1/5", "2/9", "1/4", "1/3"]
for s in samples:
    e = rep.classify(Rational.parse(s))
    local = "" if e.witness_local is None else ("  local witness" if e.witness_local else "  witness needs thickening")
    print(f"{s:>7}: {e.status.value:13s}{local}")

# tight below 0, overtwisted at 0, tight again on a sequence above it
print(f"\nnon-closed: {rep.contains_nonclosed_set}, disconnected: {rep.disconnected}")
