"""
First-order deformations of a (2, 2, 2) Hodge structure
=======================================================

A deformation direction is a 2x2 matrix A, acting as the nilpotent N(A).
Two directions commute exactly when E(A, B) = 0 for the symplectic form E on
2x2 matrices, so a commuting family spans at most an isotropic plane.
"""

import random

from gl3atlas import hodge

rng = random.Random(7)

A, B = hodge.random_matrix(rng), hodge.random_matrix(rng)
print("random A, B:  E(A, B) =", hodge.symplectic_E(A, B),
      " commute:", hodge.griffiths_commute(A, B), " tAB symmetric:", hodge.tAB_symmetric(A, B))

A, B = hodge.random_isotropic_pair(rng)
print("isotropic A, B:  E(A, B) =", hodge.symplectic_E(A, B),
      " commute:", hodge.griffiths_commute(A, B))
print("N(A) preserves the polarization:", hodge.polarization_preserved(hodge.make_N(A)))

C = hodge.combine([2, hodge.gauss(1j)], [A, B])
print("adding C = 2A + iB: span dimension", hodge.span_dimension([A, B, C]),
      " maximal isotropic:", hodge.is_maximal_isotropic([A, B]))

#Q, J = hodge.FRAME.q(), hodge.FRAME.j()
#print(hodge.matmul(hodge.matmul(hodge.transpose(J), Q), J) == Q)
