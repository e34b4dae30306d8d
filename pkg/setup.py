"""Build script: compiles the optional scan kernel, falls back to pure Python.

The package is fully functional without the extension; `heisencoh._scan`
selects the pure-Python twin at import time when the compiled module is
missing.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Skip the extension instead of failing the whole install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled scan kernel ({exc})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "the pure-Python kernel will be used")


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("heisencoh._divisor_scan", ["src/heisencoh/_divisor_scan.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    print("warning: Cython not available; building without the compiled kernel")

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
