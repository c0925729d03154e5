"""Exact computations with solvable Lie algebras and left-invariant metrics.

All functions exchange JSON strings in the same document formats as the
``solvlie`` CLI; this wrapper decodes them into plain Python objects.
Rationals are ``"p/q"`` strings in lowest terms.
"""

import json as _json

from ._core import (
    ParseError,
    SolvlieMathError,
    canonicalize,
    fixture,
)
from . import _core


def _wrap(name):
    raw = getattr(_core, name)

    def call(*args, **kwargs):
        return _json.loads(raw(*args, **kwargs))

    call.__name__ = name
    call.__doc__ = raw.__doc__
    return call


validate = _wrap("validate")
profile = _wrap("profile")
nilradical_basis = _wrap("nilradical_basis")
derivations = _wrap("derivations")
sigma = _wrap("sigma")
standard_modification = _wrap("standard_modification")
standard_position = _wrap("standard_position")
equivalence = _wrap("equivalence")
ricci = _wrap("ricci")
soliton = _wrap("soliton")
pre_einstein = _wrap("pre_einstein")
einstein_check = _wrap("einstein_check")
extend_einstein = _wrap("extend_einstein")

__all__ = [
    "ParseError",
    "SolvlieMathError",
    "canonicalize",
    "fixture",
    "validate",
    "profile",
    "nilradical_basis",
    "derivations",
    "sigma",
    "standard_modification",
    "standard_position",
    "equivalence",
    "ricci",
    "soliton",
    "pre_einstein",
    "einstein_check",
    "extend_einstein",
]
