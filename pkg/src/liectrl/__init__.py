"""Exact controllability analysis for bilinear systems on matrix Lie groups.

Three independent tests are provided for systems on SO(n) built from the
standard basis: the Lie-algebra rank condition, connectivity of the
associated graph, and existence of an n-cycle among products of the
corresponding transpositions. Extensions cover a split basis of so(4),
sl(3, C) and a formation-control algebra.
"""

from .lie_core import (ExactMatrix, GeneratorSet, bracket, lie_closure, lie_rank,
                       larc_controllable, omega, so_dim)
from .permgroup import Permutation, TranspositionSequence, cycle_controllable, iota
from .liegraph import SimpleGraph, graph_controllable, tau, triangular_closure

__version__ = "0.1.0"
