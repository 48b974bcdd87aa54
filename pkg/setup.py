"""Build script.

The compiled row-reduction kernel is optional: if Cython (or a C compiler)
is unavailable the package installs pure-Python and selects the fallback
kernel at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/dercon/exactlin/_rowreduce.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"building without compiled kernel: {exc}")

setup(ext_modules=ext_modules)
