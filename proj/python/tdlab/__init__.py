"""Exact tridiagonal systems of q-Racah type.

Rationals cross the boundary as "p/q" strings; the helpers here turn them
into fractions.Fraction.
"""

import json
from fractions import Fraction

from ._core import (
    ConsistencyError,
    DimensionError,
    Error,
    IoError,
    ParameterError,
    ParseError,
    ValidationError,
    canonical,
    generate,
    search_phi,
)
from ._core import decompose as _decompose
from ._core import export as _export
from ._core import verify as _verify

__all__ = [
    "ConsistencyError",
    "DimensionError",
    "Error",
    "IoError",
    "ParameterError",
    "ParseError",
    "ValidationError",
    "canonical",
    "decompose",
    "export",
    "generate",
    "search_phi",
    "verify",
]


def _fractions(value):
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, list):
        return [_fractions(v) for v in value]
    if isinstance(value, dict):
        return {k: _fractions(v) for k, v in value.items()}
    return value


def verify(instance, suite="all"):
    """List of check records (dicts with check_id, anchor, pass, ...)."""
    return [json.loads(line) for line in _verify(instance, suite).splitlines()]


def decompose(instance):
    return json.loads(_decompose(instance))


def export(instance, what="operators"):
    """Dict of name -> matrix, entries as Fraction."""
    return _fractions(json.loads(_export(instance, what)))
