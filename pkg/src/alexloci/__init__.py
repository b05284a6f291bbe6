"""Alexander invariants, cohomology jump loci and their tangent cones for finitely presented groups."""

from .alexinv import alexander_polynomial, elementary_ideal_gcd
from .errors import AlexlociError, CapExceeded, InputError
from .exactla import RationalSubspace, SubspaceArrangement, smith_normal_form
from .jumploci import Character, cover_betti_depth, cover_h1_snf, depth
from .laurent import LaurentPoly, laurent_gcd, parse_laurent
from .presentations import GroupPresentation, Word, fox_derivative
from .tcone import bns_upper_bound, tau1_of_polynomial

__version__ = "0.1.0"

__all__ = [
    "AlexlociError", "CapExceeded", "Character", "GroupPresentation", "InputError", "LaurentPoly",
    "RationalSubspace", "SubspaceArrangement", "Word", "alexander_polynomial", "bns_upper_bound",
    "cover_betti_depth", "cover_h1_snf", "depth", "elementary_ideal_gcd", "fox_derivative",
    "laurent_gcd", "parse_laurent", "smith_normal_form", "tau1_of_polynomial",
]
