"""Exact classification of automorphisms of finite-dimensional Lie algebras.

The package computes, over the reals or the complexes:

* structure constants from a vector-field basis, commutator tables, and
  structure-constant validation (antisymmetry + Jacobi);
* the quadratic determining system for automorphism matrices and its
  exact solution branches via greedy elimination with case splitting;
* the one-parameter inner automorphisms exp(t * ad_j) as exact symbolic
  matrix exponentials;
* sparsest representatives of automorphism classes modulo products of
  inner automorphisms, by brute force over orderings or by a seeded
  evolutionary search over permutation genomes.
"""

__version__ = "0.1.0"
