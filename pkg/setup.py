"""Builds the optional compiled link-budget kernel.

The package works without the extension (a vectorized numpy fallback is
selected at import time), so a failed compile only costs speed.
"""

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext
from setuptools.errors import CCompilerError, ExecError, PlatformError
from setuptools.extension import Extension


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except (CCompilerError, ExecError, PlatformError) as exc:
            print(f"warning: skipping compiled kernel ({exc}); "
                  "the pure-Python backend will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except (CCompilerError, ExecError, PlatformError) as exc:
            print(f"warning: could not compile {ext.name} ({exc})",
                  file=sys.stderr)


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mbnsim._kernels._core", ["src/mbnsim/_kernels/_core.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": OptionalBuildExt})
