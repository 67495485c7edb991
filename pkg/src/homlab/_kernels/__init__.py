"""Kernel backend selection.

The compiled extension is used when it imports; ``HOMLAB_PURE=1`` forces the
pure-Python kernels. ``python_kernel`` is always importable so tests and the
benchmark can compare both.
"""

import os

from . import _pykernel as python_kernel

compiled_kernel = None
if os.environ.get("HOMLAB_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernel as compiled_kernel
    except ImportError:
        compiled_kernel = None

kernel = compiled_kernel if compiled_kernel is not None else python_kernel
BACKEND = kernel.BACKEND

__all__ = ["kernel", "python_kernel", "compiled_kernel", "BACKEND"]
