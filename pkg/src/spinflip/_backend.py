"""Select the kernel implementation at import time.

The compiled extension is preferred; set ``SPINFLIP_PURE_PYTHON=1`` to force
the numpy fallback.
"""

import os

from . import _fallback

if os.environ.get("SPINFLIP_PURE_PYTHON", "").strip() not in ("", "0"):
    kernels = _fallback
    NAME = "python"
else:
    try:
        from . import _kernels as kernels
        NAME = "cython"
    except ImportError:
        kernels = _fallback
        NAME = "python"


def available():
    """Mapping of backend name to kernel module, for benchmarks and tests."""
    out = {"python": _fallback}
    try:
        from . import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out
