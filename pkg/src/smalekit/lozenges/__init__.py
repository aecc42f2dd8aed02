"""Lozenge complexes, chains of lozenges and the operations on them."""

from .chains import (
    Chain,
    ChainError,
    ExtensionError,
    MergeError,
    chain_tree,
    extend_to_smale_chain,
    finite_chain,
    is_chain,
    is_line,
    is_minimal,
    is_minimal_by_removal,
    is_minimal_no_triple,
    is_pivot_only,
    is_smale_chain,
    line_break,
    merge,
)
from .complex import Automorphism, ComplexError, LozengeComplex, make_complex, word_element
from .symmetry import (
    ScallopedRegion,
    Symmetry,
    complete_to_scalloped,
    find_translation_symmetry,
    invariant_chain,
)

classify_corner = LozengeComplex.classify_corner
