"""Build glue for the optional compiled kernel extension.

The package is fully functional without the extension (pure-Python kernels
are selected at import time), so a missing compiler or Cython must never
fail the install; the extension is simply skipped with a warning.
"""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # toolchain missing; pure fallback at import
            warnings.warn(f"skipping compiled kernels: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name}: {exc}")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython unavailable; building without compiled kernels")
        return []
    return cythonize(
        [Extension("turantree._fastcore", ["src/turantree/_fastcore.pyx"],
                   extra_compile_args=["-O2"])],
        compiler_directives={"language_level": "3"},
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
