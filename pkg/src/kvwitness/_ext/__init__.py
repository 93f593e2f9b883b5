"""Enumeration kernels for the finite-field plane scans.

``common_zeros`` is the compiled version when the Cython extension was built
and importable, otherwise the pure-Python one.  Set ``KVWITNESS_PURE_PYTHON=1``
to force the fallback.  Both take identical arguments and return identical
results; see :mod:`kvwitness._ext._zeros_py` for the contract.
"""

from __future__ import annotations

import os

from ._zeros_py import common_zeros as common_zeros_python

try:
    from ._zeros import common_zeros as common_zeros_compiled
except ImportError:  # extension not built
    common_zeros_compiled = None

if common_zeros_compiled is not None and not os.environ.get("KVWITNESS_PURE_PYTHON"):
    common_zeros = common_zeros_compiled
    BACKEND = "cython"
else:
    common_zeros = common_zeros_python
    BACKEND = "python"

__all__ = ["BACKEND", "common_zeros", "common_zeros_compiled", "common_zeros_python"]
