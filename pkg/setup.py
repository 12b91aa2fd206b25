"""Build script for the optional compiled kernels.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the gate loops and the pairwise cosine
sum faster.  Build in place with

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

try:
    import numpy
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "phaseneuron.kernels._compiled",
                ["src/phaseneuron/kernels/_compiled.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython/numpy at build time: ship pure python, the fallback kernels
    # keep the full interface working.
    extensions = []

for ext in extensions:
    ext.optional = True

setup(ext_modules=extensions)
