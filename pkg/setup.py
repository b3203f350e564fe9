"""Builds the compiled kernel extension. Everything else lives in pyproject.toml.

The package works without the extension (a numpy fallback is selected at
import time), so wheel consumers on exotic platforms can skip compilation.
"""

from Cython.Build import cythonize
from setuptools import Extension, setup

setup(
    ext_modules=cythonize(
        [Extension("armbalance._core", ["src/armbalance/_core.pyx"])],
        language_level=3,
    )
)
