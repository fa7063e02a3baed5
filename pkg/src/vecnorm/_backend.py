"""Selects the term-kernel implementation at import time.

`import vecnorm._kernel` resolves to the Cython-compiled extension when
the build produced one (the .so shadows the .py) and to the interpreted
module otherwise.  Setting VECNORM_PURE_PYTHON=1 forces the interpreted
copy; the benchmark uses load_pure() to time both sides.
"""

from __future__ import annotations

import importlib.machinery
import importlib.util
import os

_EXT_SUFFIXES = tuple(importlib.machinery.EXTENSION_SUFFIXES)


def load_pure():
    """Load the interpreted kernel from source, bypassing any extension."""
    path = os.path.join(os.path.dirname(__file__), "_kernel.py")
    spec = importlib.util.spec_from_file_location("vecnorm._kernel_pure", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def is_compiled(mod) -> bool:
    f = getattr(mod, "__file__", "") or ""
    return f.endswith(_EXT_SUFFIXES)


def load_kernel():
    if os.environ.get("VECNORM_PURE_PYTHON") == "1":
        return load_pure()
    from vecnorm import _kernel

    return _kernel


kernel = load_kernel()
KERNEL_IMPL = "compiled" if is_compiled(kernel) else "python"
