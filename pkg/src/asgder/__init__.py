"""Exact computations for AsGDer triples: the operad Agd, its Koszul dual,
homotopy structures, cohomology and formal deformations."""
from .triples import AsGDerTriple, GDerModule, validate_module, validate_triple

__version__ = "0.1.0"

__all__ = ["AsGDerTriple", "GDerModule", "validate_module", "validate_triple", "__version__"]
