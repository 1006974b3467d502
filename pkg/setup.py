"""Builds the optional compiled kernel.

The package works without it (a pure-Python twin is selected at import time);
set PURSUITRING_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("PURSUITRING_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "pursuitring.kernels._fast",
                    ["src/pursuitring/kernels/_fast.pyx"],
                    # Bit-identical arithmetic with the pure-Python twin:
                    # no fused multiply-adds, and no sin/cos -> sincos
                    # contraction (glibc sincos is 1 ulp off sin/cos for
                    # some arguments).
                    extra_compile_args=[
                        "-O3",
                        "-ffp-contract=off",
                        "-fno-builtin-sin",
                        "-fno-builtin-cos",
                        "-fno-builtin-sincos",
                    ],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
