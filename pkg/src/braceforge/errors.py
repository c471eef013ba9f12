"""Exception hierarchy.

Every error that stems from a concrete counterexample carries it in
``witness`` so callers (and the CLI) can print it.
"""

from __future__ import annotations

from typing import Any


class BraceForgeError(Exception):
    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness


class InvalidOrderError(BraceForgeError):
    pass


class CapacityError(BraceForgeError):
    pass


class ShapeError(BraceForgeError):
    pass


class DomainError(BraceForgeError):
    pass


class CertificationError(DomainError):
    """A homomorphism or compatibility law failed on ``witness``."""


class BraceAxiomError(DomainError):
    """The brace relation failed; ``witness`` is the triple (a, b, c)."""


class ParameterError(BraceForgeError):
    pass


class NoSolutionError(BraceForgeError):
    pass
