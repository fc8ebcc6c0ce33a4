"""Homological Goeritz equivalence of curves on the genus-2 Heegaard surface of the 3-sphere."""

from .equivalence import (
    Outcome,
    Verdict,
    candidate_block,
    decide_extended,
    decide_homological,
    extended_equivalent,
    homotopy_obstruction,
    transporter_system,
    zero_slope_screen,
)
from .errors import (
    ArithmeticDomainError,
    DegenerateBlockError,
    DeterminantError,
    GoeritzError,
    HypothesisError,
    ParseError,
    PreconditionError,
)
from .factorization import factor_block, transporter_gl2
from .homology import (
    Block2Matrix,
    GoeritzMatrix,
    HomologyVector,
    TwistCurve,
    dehn_twist,
    epsilon_star,
    goeritz_form_from_block,
    split_product,
    symplectic_pairing,
)
from .ttk import family_pair, family_zero_slope, strand_sequences, switch_words, verify_case
from .words import GoeritzWord, evaluate, parse_word, verify_relators

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
