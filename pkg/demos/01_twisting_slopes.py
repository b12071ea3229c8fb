"""Contact +-1 surgery on leaves of a thickened torus, as arithmetic on slopes.

Run: python demos/01_twisting_slopes.py
"""
from transurgery import Rational, classify_surgery_slope, reduce_to_meridian, twist_once
from transurgery.twists import realizable_sequence

R = Rational

# A +1 surgery along the leaf of slope 1/k sends (k-1)/k^2 to the meridian.
for k in range(2, 6):
    s, leaf = realizable_sequence(0, k)
    print(f"k={k}: twist {s} along {leaf} -> {twist_once(s, leaf, +1)}")

# Any s < n is pushed to the meridian by +1 surgeries on leaves in (s, a).
# Read backwards with the signs flipped this is a Legendrian surgery link.
print()
for s in ("-2", "-7/3", "-13/5", "-31/11"):
    prog = reduce_to_meridian(R.parse(s), -1, R(-1, 4))
    trace = " -> ".join(str(x) for x in prog.replay_trace)
    print(f"s={s:>6}: {prog.total_twists} twists, {trace}")

# Between n and a only a few slopes have a verdict.
print()
n, a = -1, R(-1, 4)
for s in ("-3/2", "-7/9", "-3/4", "-2/3", "-1/3", "-5/11"):
    v = classify_surgery_slope(R.parse(s), n, a)
    flag = " (exception)" if v.exception else ""
    print(f"{s:>6}: {v.verdict.value}{flag}  [{v.reason}]")
