"""Admissible transverse surgery on thickened tori and open books, in exact arithmetic."""
from .exact import INF, IntMatrix, LaurentPoly, Rational, smith_normal_form
from .slopes import SlopeInterval, SlopeMatrix, parse_slope
from .twists import (
    HypothesisError,
    TwistProgram,
    TwistStep,
    Verdict,
    berge_gabai_screen,
    classify_surgery_slope,
    reduce_to_meridian,
    twist_once,
)
from .open_books import (
    FamilyParams,
    MarkedSurface,
    MonodromyWord,
    binding_tight_slope_report,
    builtin_surfaces,
    cap_off_family,
    family_open_book,
    family_status,
    open_book_homology,
)
from .braids import BraidWord, closure_components, link_determinant, family_braid

__version__ = "0.1.0"
