"""Quantum-torus coordinatized B(0,N)-graded Lie superalgebras and their Fock modules."""
from .scalar_field import QMode, Scalar

__all__ = ["QMode", "Scalar"]
