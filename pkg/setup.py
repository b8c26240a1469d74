"""Builds the optional Cython kernels; the package works without them."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("toric_cox._kernels", ["src/toric_cox/_kernels.pyx"])],
        language_level=3,
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
