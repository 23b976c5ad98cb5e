"""Build script for the optional compiled propagation kernel.

The package works without the extension (a pure numpy engine is selected at
import time); building it just makes large scans faster.  Set FWSIM_NO_EXT=1
to skip compilation entirely.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FWSIM_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/fwsim/engine/_fastcore.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
