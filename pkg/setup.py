"""Build script: compiles the optional minor-scan kernel extension.

The package is fully functional without the extension (a pure-Python twin
is selected at import time); any build failure here downgrades to the
pure build instead of aborting the install.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TPGL_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext = Extension(
            "tpgl._minors_cy",
            ["src/tpgl/_minors_cy.pyx"],
            extra_compile_args=["-O2"],
        )
        ext.optional = True
        ext_modules = cythonize(
            [ext], compiler_directives={"language_level": "3"}
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
