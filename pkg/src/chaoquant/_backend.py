"""Kernel selection.

The compiled extension is used when it was built; otherwise, or when
``CHAOQUANT_PURE_PYTHON`` is set to a non-empty value other than ``0``, the
pure-Python kernels are loaded.
"""
import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and os.environ.get("CHAOQUANT_PURE_PYTHON", "0") in ("", "0"):
    kernels = compiled_kernels
else:
    kernels = python_kernels

BACKEND = kernels.BACKEND
