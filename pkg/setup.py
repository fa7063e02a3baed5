"""Build script: compiles the hot-path kernel with Cython when available.

The package is fully functional without the extension; vecnorm._backend
falls back to the interpreted copy of the same source file.  Set
VECNORM_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("VECNORM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("vecnorm._kernel", sources=["src/vecnorm/_kernel.py"])],
            language_level="3",
            compiler_directives={"annotation_typing": False},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
