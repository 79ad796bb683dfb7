"""Representations of primes by the quadratic forms a^2+qb^2, qb^2-a^2 and a^2-qb^2."""

from .arith import is_prime, jacobi, legendre, sqrt_mod
from .forms import (
    Family,
    FormInstance,
    Witness,
    in_set,
    represent_definite,
    represent_indefinite,
)

__all__ = [
    "Family",
    "FormInstance",
    "Witness",
    "in_set",
    "is_prime",
    "jacobi",
    "legendre",
    "represent_definite",
    "represent_indefinite",
    "sqrt_mod",
]
__version__ = "0.1.0"
