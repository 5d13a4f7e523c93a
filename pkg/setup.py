import os

import numpy as np
from setuptools import Extension, setup

# COMPACTSEARCH_NO_EXT=1 skips the compiled kernel; the package then runs on
# the pure-Python fallback.
ext_modules = []
if not os.environ.get("COMPACTSEARCH_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "compactsearch._squeeze",
                    ["src/compactsearch/_squeeze.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
