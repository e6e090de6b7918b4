"""coverhom: exact combinatorics of cover ideals.

Simplicial complexes and simple hypergraphs, monomial ideals with symbolic
powers and polarization, layered block hypergraphs with their
contraction/deletion recursion, and homological verdicts (vertex
decomposability, shellability, linear quotients, Hochster Betti tables,
regularity, componentwise linearity) over Q and small prime fields.
"""

__version__ = "0.1.0"

from .complexes import (  # noqa: F401
    Hypergraph,
    SimplicialComplex,
    complex_from_labels,
    hypergraph_from_labels,
    hypergraph_of,
)
from .ideals import MonomialIdeal, ideal_from_dicts  # noqa: F401
