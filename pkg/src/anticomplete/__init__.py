"""Certificate-checked procedures for treewidth obstructions and anticomplete pairs."""

from .graph import Graph, are_anticomplete
from .treewidth import exact_treewidth

__all__ = ["Graph", "are_anticomplete", "exact_treewidth"]
__version__ = "0.1.0"
