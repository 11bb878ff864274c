"""Shared helpers for the test suite."""

from dataclasses import dataclass
from typing import Mapping


@dataclass(frozen=True)
class PlainRow:
    """Minimal row for exercising the LP solver with arbitrary coefficients.

    The formulation's own row type deliberately restricts coefficients to
    0/±1, so solver tests use this unrestricted stand-in.
    """

    coefficients: Mapping
    relation: str
    rhs: object
    tag: str = ""
