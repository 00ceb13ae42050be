"""Darboux partners of the PT-invariant Scarf II potential, with a finite-difference oracle."""
from .scarf2 import QBranch, Regime, ScarfParams
from .darboux import SeedCase, SeedSpec, make_seed
from .numerix import Grid

__all__ = ["QBranch", "Regime", "ScarfParams", "SeedCase", "SeedSpec", "make_seed", "Grid"]
__version__ = "0.1.0"
