"""Random square-tiled surfaces from permutation pairs.

Modules: ``permcore`` (permutations), ``partitions``, ``characters``
(Murnaghan–Nakayama), ``surface`` (per-surface report), ``exactdist`` (exact
commutator distributions and bounds), ``montecarlo`` (seeded experiments),
``cli``.
"""
from .permcore import Permutation, RngStream, commutator, parse_cycles
from .surface import analyze

__version__ = "0.1.0"

__all__ = ["Permutation", "RngStream", "analyze", "commutator", "parse_cycles"]
