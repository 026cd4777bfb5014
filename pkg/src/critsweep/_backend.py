"""Kernel backend selection.

The compiled extension `critsweep._kernels` is preferred when importable;
otherwise the pure-Python twin `critsweep._kernels_py` is used.  The
environment variable CRITSWEEP_BACKEND forces the choice:

    CRITSWEEP_BACKEND=compiled   require the extension (ImportError if absent)
    CRITSWEEP_BACKEND=python     force the pure-Python kernels
    CRITSWEEP_BACKEND=auto       default behavior
"""

import os

_requested = os.environ.get("CRITSWEEP_BACKEND", "auto").strip().lower()

if _requested in ("", "auto"):
    try:
        from . import _kernels as kernels
        BACKEND = "compiled"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"
elif _requested == "compiled":
    from . import _kernels as kernels
    BACKEND = "compiled"
elif _requested == "python":
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    raise ImportError(
        f"unknown CRITSWEEP_BACKEND={_requested!r}; "
        "expected 'auto', 'compiled', or 'python'")
