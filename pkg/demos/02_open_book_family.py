"""The family psi_{n,k1,k2} on the twice-punctured torus.

H_1 of the closed manifold is computed from the open book, then again from
the 4-braid whose double branched cover it is.  Capping off B1 is compared
with 0-filling the binding.

Run: python demos/02_open_book_family.py
"""
from transurgery import (
    FamilyParams,
    Rational,
    cap_off_family,
    closure_components,
    family_open_book,
    family_status,
    link_determinant,
    open_book_homology,
    family_braid,
)

print(" n  H1(M_{n,0,0})          |H1|   braid det  components")
for n in range(1, 8):
    rep = open_book_homology(*family_open_book(FamilyParams(n, 0, 0)))
    w = family_braid(n)
    print(f"{n:2d}  {str(rep):20s} {rep.order:7d}  {link_determinant(w):9d}  {closure_components(w):5d}")

# only n and k1 + k2 matter
print()
for k1, k2 in [(0, 4), (1, 3), (2, 2), (5, -1)]:
    rep = open_book_homology(*family_open_book(FamilyParams(3, k1, k2)))
    print(f"n=3 k1={k1:2d} k2={k2:2d}: {rep}")

print()
p = FamilyParams(3, 2, 2)
S, w = family_open_book(p)
capped = open_book_homology(*cap_off_family(p))
filled = open_book_homology(S, w, {"B1": Rational(0)})
print(f"capped: {capped}   0-filled: {filled}")
print(f"status: {family_status(p).status.value}, after capping: {family_status(p, capped=True).status.value}")
