"""Kernel backend selection.

The compiled extension is preferred when present; ``DNLIFT_KERNELS=py``
forces the pure Python fallback (useful for benchmarking and debugging).
Both backends are behaviourally identical; ``tests/test_kernels.py``
checks them against each other.
"""

import os

_choice = os.environ.get("DNLIFT_KERNELS", "auto")

if _choice == "py":
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as kernels

convolve_1d = kernels.convolve_1d
convolve_2d = kernels.convolve_2d
convolve_packed = kernels.convolve_packed
BACKEND = kernels.BACKEND
