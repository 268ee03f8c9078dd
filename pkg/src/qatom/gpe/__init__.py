"""Gross-Pitaevskii solver package.

The stepping kernels exist twice: a compiled extension (_kernels_cy) and a
numpy fallback (_kernels_py) with identical signatures.  Selection happens
here at import time; set QATOM_GPE_BACKEND=python or =cython to force one.
`BACKEND` records which one is active.
"""

import os as _os

from . import _kernels_py

_requested = _os.environ.get("QATOM_GPE_BACKEND", "").strip().lower()

if _requested in ("", "cython"):
    try:
        from . import _kernels_cy as kernels

        BACKEND = "cython"
    except ImportError:
        if _requested == "cython":
            raise ImportError(
                "QATOM_GPE_BACKEND=cython requested but the compiled kernels "
                "are not built; reinstall the package or use =python"
            )
        kernels = _kernels_py
        BACKEND = "python"
elif _requested == "python":
    kernels = _kernels_py
    BACKEND = "python"
else:
    raise ValueError(f"unknown QATOM_GPE_BACKEND value {_requested!r}")

from .core import *  # noqa: E402,F401,F403
