"""Builds the optional compiled kernels; the package works without them."""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            print(f"warning: compiled kernels not built ({exc}); using the pure-Python fallback", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: failed to build {ext.name} ({exc}); using the pure-Python fallback", file=sys.stderr)


def extensions():
    if os.environ.get("KUMMER_SANDWICH_PURE", "") not in ("", "0"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    openmp = [] if sys.platform == "darwin" else ["-fopenmp"]
    ext = Extension(
        "kummer_sandwich._kernels",
        ["src/kummer_sandwich/_kernels.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3", *openmp],
        extra_link_args=openmp,
    )
    return cythonize([ext], language_level=3, quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
