"""Build script: compiles the optional Cython strategy-search kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a failed extension build only costs speed.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("syncgames._solver_core", ["src/syncgames/_solver_core.pyx"])],
        language_level=3,
    )
except Exception:  # pragma: no cover - missing Cython just disables the fast path
    ext_modules = []

setup(ext_modules=ext_modules)
