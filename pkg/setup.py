"""Build script.

The Monte Carlo per-realization reduction has an optional compiled
implementation (Cython).  If Cython or a C toolchain is unavailable the
package installs anyway and falls back to the NumPy kernel at import time.
"""

import sys

from setuptools import setup
from setuptools.errors import CCompilerError, ExecError, PlatformError

BUILD_ERRORS = (CCompilerError, ExecError, PlatformError, SystemExit, Exception)


def extension_modules():
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "fran_tradeoff.mc._kernel",
        ["src/fran_tradeoff/mc/_kernel.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


def run_setup(with_extension):
    setup(ext_modules=extension_modules() if with_extension else [])


try:
    run_setup(True)
except BUILD_ERRORS:
    print("compiled kernel build failed; installing pure-Python package",
          file=sys.stderr)
    run_setup(False)
