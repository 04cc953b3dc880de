"""Build script: compiles the optional native kernel extension.

The extension is a speed twin of infogen/kernels/_pure.py; the package
works without it (kernel backend is chosen at import time).
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "infogen.kernels._native",
                ["src/infogen/kernels/_native.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython: install pure-Python only.
    pass

setup(ext_modules=ext_modules)
