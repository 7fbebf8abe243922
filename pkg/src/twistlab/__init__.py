"""Exact homology-level checks of involution generators for twist subgroups
of mapping class groups of non-orientable surfaces."""

from .homlat import GenusContext, InvalidInputError, InvariantError, LatticeMatrix, NotUnimodularError
from .mcggen import CrosscapInvolution, CurveRecord, SlideSpec, make_record, transform_record, twist_matrix
from .presets import PresetSet, SearchFailedError, UnsupportedGenusError, eight_involutions, six_involutions
from .verify import VerificationReport, full_report
from .wordalg import Word, evaluate, parse_word

__version__ = "0.1.0"

__all__ = [
    "GenusContext",
    "InvalidInputError",
    "InvariantError",
    "LatticeMatrix",
    "NotUnimodularError",
    "CrosscapInvolution",
    "CurveRecord",
    "SlideSpec",
    "make_record",
    "transform_record",
    "twist_matrix",
    "PresetSet",
    "SearchFailedError",
    "UnsupportedGenusError",
    "six_involutions",
    "eight_involutions",
    "VerificationReport",
    "full_report",
    "Word",
    "evaluate",
    "parse_word",
]
