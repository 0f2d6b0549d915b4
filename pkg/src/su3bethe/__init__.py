"""Exact and numerical tools for scalar products and form factors of SU(3)-invariant Bethe vectors."""

__version__ = "0.1.0"

from .errors import (CardinalityError, CollisionError, ConflictError, DegeneracyWarning, DegenerateError,
                     NoConvergence, PoleError, SingularError, SizeError, Su3BetheError)
from .field import F, G, H, T, KernelKind, exact, f, g, h, mpq, t, to_float
from .dwpf import dwpf
from .identities import highest_coeff, lemma1_pair, lemma2_pair, lemma3_pair
from .scalar_product import (BetheData, build_block_matrix, make_onshell_data, norm_det, norm_limit,
                             scalar_product_det, scalar_product_oracle)
from .chain import BetheRoots, ChainModel, form_factor_E22, solve_bethe, solve_states, transfer_eigenvalue
