"""Ore extension workbench components"""

from .catalog import get_entry, load_catalog, run_entry
from .maps import QuasiDerivation, build_quasi_derivation, make_derivation, make_endo
from .orchestrator import CatalogOrchestrator
from .properties import PropertyScanner, replay_witness
from .rings import Ring, build_ring
from .skew_poly import OreExtension, SkewPoly

__all__ = [
    "get_entry",
    "load_catalog",
    "run_entry",
    "QuasiDerivation",
    "build_quasi_derivation",
    "make_derivation",
    "make_endo",
    "CatalogOrchestrator",
    "PropertyScanner",
    "replay_witness",
    "Ring",
    "build_ring",
    "OreExtension",
    "SkewPoly",
]
