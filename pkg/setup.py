"""Build script: compiles the optional accelerator extension.

The package is fully functional without the extension (a pure Python
fallback is selected at import time), so any build failure here is
downgraded to a warning.
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/dnlift/_kernels.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"warning: accelerator extension skipped ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
