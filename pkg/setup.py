"""Build script for the optional compiled GF(2) core.

The Toeplitz extractor's packed matrix-vector kernel is compiled from
Cython when a compiler is available. The extension is marked optional:
if the build fails, the package installs anyway and transparently uses
the pure NumPy fallback (lpnqrng._gf2_fallback) at import time.

To (re)build in place for development:

    python3 setup.py build_ext --inplace
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "lpnqrng._gf2",
                ["src/lpnqrng/_gf2.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules)
