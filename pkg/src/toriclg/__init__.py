"""Exact computational toolkit for toric Landau-Ginzburg models.

Modules:
    laurent        sparse exact Laurent-polynomial arithmetic and parsing
    polytope       lattice polytopes, faces, Minkowski sums, equivalence
    period         constant-term period sequences with a brute-force oracle
    mutation       cluster-type and toric changes of variables
    constructions  Hori-Vafa models, Markov triples, weighted-plane chains
    degeneration   cone-slicing polytope mutations and factored pivots
    minkowski      Minkowski-presentation checks for Laurent polynomials
    cli            command-line interface over all of the above
"""

__version__ = "0.1.0"
