"""Multivariate avalanche polynomials of the abelian sandpile model."""

from .engine import (StabilizationResult, enumerate_recurrents, is_recurrent, max_sandpile,
                     stabilize, stable_add)
from .errors import AvalancheError
from .families import (RootedTree, complete_poly, cycle_monomial_max, cycle_poly, fib, lucas,
                       tree_poly, wheel_poly)
from .graph import (Graph, complete_graph, cycle_graph, fan_graph, graph_from_edges, grid_graph,
                    invariant_factors, laplacian, make_family, path_graph, reduced_laplacian,
                    spanning_tree_count, tree_graph, wheel_graph)
from .parking import PhiImage, is_parking, phi, phi_inverse
from .poly import MultiPoly, UniPoly, cyclic_poly, elementary_symmetric, univariate
from .principal import (avalanche_monomial, avalanche_polynomial, burst_distribution,
                        grid_experiment, size_distribution)
from .reconstruct import reconstruct_tree, validate_tree_poly

__version__ = "0.1.0"
