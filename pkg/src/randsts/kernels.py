"""Backend selection for the per-pair hot loop.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``RANDSTS_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the pure-Python implementation is used. Both return identical
results for identical inputs.
"""
import os

from . import _kernels_py

python_analyze_pair = _kernels_py.analyze_pair

try:
    from ._kernels import analyze_pair as compiled_analyze_pair
except ImportError:  # extension not built
    compiled_analyze_pair = None

if compiled_analyze_pair is not None and os.environ.get("RANDSTS_PURE_PYTHON", "0") in ("", "0"):
    analyze_pair = compiled_analyze_pair
    BACKEND = "cython"
else:
    analyze_pair = python_analyze_pair
    BACKEND = "python"

__all__ = ["analyze_pair", "BACKEND", "compiled_analyze_pair", "python_analyze_pair"]
