"""
Two sides of one table
======================

For the surface t^2 = x y (x^2-1)(y^2-1)(x^2-y^2+2xy) we count points fixed by
phi^k o Frob for the order-4 map phi, recover a Gaussian integer a_p from the
counts, and compare it with the Hecke eigenvalue at level 128.
"""

from gl3atlas.counting import SurfaceParams, count_table, frobenius_fit
from gl3atlas.fixtures import shipped_fixtures
from gl3atlas.hecke import eigenvalue_check
from gl3atlas.hecke.operators import cached_hecke_matrix

s = SurfaceParams(2)
table = shipped_fixtures(128)

p = 7
counts = count_table(s, p, 3)
print(f"twisted counts at p = {p}")
for r in (1, 2, 3):
    print("  r =", r, [counts[(k, r)] for k in range(4)])

fit = frobenius_fit(s, p, "extract", counts=counts)
print("\ncandidates from the counts:", fit.candidates, " unique up to conjugation:", fit.unique)
for c in fit.candidates:
    for d in fit.diagnostics[c]:
        print("   ", c, "unit", d["unit"], "direction", d["direction"])

print("\ntable value:", table.value(p))
E = cached_hecke_matrix(128, p, "E")
print("its minimal polynomial divides charpoly(E_7) with multiplicity",
      eigenvalue_check(E, table.minpoly(p)))

#for p in table.good_primes(13):
#    if p > 2:
#        print(p, frobenius_fit(s, p, "extract").candidates)
