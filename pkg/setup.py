import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("TRAPTILE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("traptile.field._speedups", ["src/traptile/field/_speedups.pyx"])],
            language_level=3,
        )

setup(ext_modules=ext_modules)
