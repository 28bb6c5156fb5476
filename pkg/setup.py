"""Build the optional compiled root-tracking kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing compiler only costs speed.
"""

import os

from setuptools import Extension, setup

extensions = []
if not os.environ.get("FUSSCAT_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "fusscat._roots_c",
                    sources=["src/fusscat/_roots_c.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions)
