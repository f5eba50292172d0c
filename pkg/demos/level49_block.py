"""
The level 49 block
==================

Level 49 is small (2793 points of P^2(Z/49)) but already shows eigenvalues
in Q(sqrt(-3)).  Runs in well under a minute.
"""

from gl3atlas.arith import IntPolynomial
from gl3atlas.hecke import charpoly, dp_relation, eigenvalue_check, spectrum_fields
from gl3atlas.hecke.operators import cached_hecke_matrix
from gl3atlas.homology import homology_basis
from gl3atlas.projspace import count_points

X = IntPolynomial.x()

B = homology_basis(49)
print("points:", count_points(49), " orbits:", len(B.quotient), " dim H:", len(B))

E2 = cached_hecke_matrix(49, 2, "E")
print("\ncharpoly(E_2) =", charpoly(E2))
for f, e in spectrum_fields(E2).factors:
    print("   ", f, "^", e)

# a_3 = -5 - 3 sqrt(-3) has minimal polynomial X^2 + 10X + 52
m = X**2 + 10 * X + 52
E3 = cached_hecke_matrix(49, 3, "E")
print("\nX^2 + 10X + 52 divides charpoly(E_3) with multiplicity", eigenvalue_check(E3, m))

# on that plane compare D_3 with E_3: "conjugate" would mean b = conj(a)
print("D_3 against E_3 on the plane:", dp_relation(49, 3, m))
