import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "qatom.gpe._kernels_cy",
                ["src/qatom/gpe/_kernels_cy.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # no cython available: install pure-python only, the gpe package
    # falls back to the numpy kernels at import time
    extensions = []

setup(ext_modules=extensions)
