"""Burau representation of 3-braids, Alexander roots, and random-walk spectra."""

from braidspectra.braid import BraidWord, CanonicalForm, left_greedy_normal_form
from braidspectra.laurent import IntPoly, LaurentPoly

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "CanonicalForm",
    "IntPoly",
    "LaurentPoly",
    "__version__",
    "left_greedy_normal_form",
]
