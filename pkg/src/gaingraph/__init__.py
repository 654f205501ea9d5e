"""Spectral theory of complex unit gain graphs.

Hermitian gain adjacency matrices and their spectra, characteristic and
permanental polynomial coefficients from elementary subgraphs, eigenvalue
bounds, and the spectral characterizations of balance and bipartiteness.
"""

from .core import (
    GainGraph,
    SpanningForest,
    SwitchingFunction,
    UnitGain,
    build_graph,
    cycle_gain,
    gain_of,
    is_antibalanced,
    is_balanced,
    is_bipartite,
    is_connected,
    negate,
    spanning_forest,
    switch,
    switching_equivalent,
)
from .errors import CapExceededError, ConvergenceError, GainGraphError, GraphFileError, NotHermitianError
from .linalg import (
    RealPolynomial,
    Spectrum,
    adjacency_matrix,
    char_poly_numeric,
    eigenvalues,
    perm_poly_numeric,
    permanent,
    spectra_equal,
    spectrum,
    spectrum_symmetric,
    walk_gain_matrix,
)
from .combinatorics import (
    ElementarySubgraph,
    char_coeffs_combinatorial,
    enumerate_elementary_subgraphs,
    matching_count,
    perm_coeffs_combinatorial,
    sum_re_cycles,
    unicyclic_char_poly,
    unicyclic_perm_poly,
)
from .families import star_of_triangles
from .io import load_graph, save_graph

__version__ = "0.1.0"

__all__ = [
    "adjacency_matrix",
    "build_graph",
    "CapExceededError",
    "char_coeffs_combinatorial",
    "char_poly_numeric",
    "ConvergenceError",
    "cycle_gain",
    "eigenvalues",
    "ElementarySubgraph",
    "enumerate_elementary_subgraphs",
    "gain_of",
    "GainGraph",
    "GainGraphError",
    "GraphFileError",
    "is_antibalanced",
    "is_balanced",
    "is_bipartite",
    "is_connected",
    "load_graph",
    "matching_count",
    "negate",
    "NotHermitianError",
    "perm_coeffs_combinatorial",
    "perm_poly_numeric",
    "permanent",
    "RealPolynomial",
    "save_graph",
    "spanning_forest",
    "SpanningForest",
    "spectra_equal",
    "Spectrum",
    "spectrum",
    "spectrum_symmetric",
    "star_of_triangles",
    "sum_re_cycles",
    "switch",
    "switching_equivalent",
    "SwitchingFunction",
    "unicyclic_char_poly",
    "unicyclic_perm_poly",
    "UnitGain",
    "walk_gain_matrix",
]
