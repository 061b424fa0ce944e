import numpy as np
from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [
            Extension(
                "lcongr._ckernels",
                sources=["src/lcongr/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # pure-Python fallback in lcongr.kernels takes over at import time
    ext_modules = []

setup(ext_modules=ext_modules)
