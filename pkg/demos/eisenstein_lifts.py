"""
Lifts from elliptic curves
==========================

A weight-two form with eigenvalue a_p lifts to eigenvalues p*a_p + 1 and
a_p + p^2 of E_p.  Check this for the curves of conductor 35 and 49, then
look at how often the lifts repeat at level 245 = 5 * 7^2.
"""

from gl3atlas.arith import IntPolynomial
from gl3atlas.counting import ec_ap, load_curves
from gl3atlas.fixtures import shipped_curves_path
from gl3atlas.hecke import charpoly, eigenvalue_check
from gl3atlas.hecke.operators import cached_hecke_matrix

X = IntPolynomial.x()
curves = {c.label: c for c in load_curves(shipped_curves_path())}

for label, level in (("35a", 35), ("49a", 49)):
    c = curves[label]
    print(f"\n{label} at level {level}")
    for p in (2, 3, 11, 13):
        if level % p == 0:
            continue
        a = ec_ap(c, p)
        cp = charpoly(cached_hecke_matrix(level, p, "E"))
        m1 = eigenvalue_check(cp, X - (p * a + 1))
        m2 = eigenvalue_check(cp, X - (a + p * p))
        print(f"  p={p:2d} a_p={a:3d}  p*a+1={p * a + 1:4d} (x{m1})  a+p^2={a + p * p:4d} (x{m2})")

# level 245 takes a minute or so for the basis
print("\nlevel 245, E_2")
cp = charpoly(cached_hecke_matrix(245, 2, "E"))
print("  1 + 2 + 4 = 7 occurs", eigenvalue_check(cp, X - 7), "times")
a = ec_ap(curves["35a"], 2)
print("  35a lifts:", eigenvalue_check(cp, X - (2 * a + 1)), eigenvalue_check(cp, X - (a + 4)))
