"""Combinatorial toolkit for pseudo-Anosov flows built from fatgraphs, their
Smale decompositions, lozenge-chain algebra and an exact affine model."""

from .assembly import derive_piece, transit_digraph, validate_gluing
from .fatgraph import boundary_components, build_fatgraph, check_admissibility, surface_invariants
from .smale import (
    chain_recurrence,
    closure_prongs,
    compare,
    nonwandering_vs_chainrecurrent,
    smale_classes,
    smale_order,
)

__version__ = "0.1.0"
