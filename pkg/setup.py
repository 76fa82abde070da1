"""Builds the optional compiled census kernel.

If Cython or a C compiler is missing the package still installs and runs on
the numpy kernel.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cubicorders._ckernel", ["src/cubicorders/_ckernel.pyx"],
                   extra_compile_args=["-O3"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
