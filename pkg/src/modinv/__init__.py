"""Exact modular invariants and fiber bookkeeping for families of genus-2 curves."""

from .catalog import Catalog, CatalogEntry, load_catalog
from .fibergraph import FiberDeltas, FiberGraph, delta_components, load_fiber, parse_fiber
from .invariants import ChernNumbers, ModularInvariants, genus2_modular

__version__ = "0.1.0"

__all__ = [
    "Catalog", "CatalogEntry", "ChernNumbers", "FiberDeltas", "FiberGraph",
    "ModularInvariants", "delta_components", "genus2_modular", "load_catalog",
    "load_fiber", "parse_fiber",
]
