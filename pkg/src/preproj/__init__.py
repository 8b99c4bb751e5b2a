"""Exact computations with centrally extended preprojective algebras of ADE quivers."""

from .algebra import GradedAlgebra, build_algebra
from .quiver import Quiver, build_quiver

__all__ = ["GradedAlgebra", "Quiver", "build_algebra", "build_quiver"]
__version__ = "0.1.0"
