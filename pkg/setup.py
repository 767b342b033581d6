from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source checkouts without Cython still install; exactq falls back to
    # the pure-Python row-reduction core at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("mmmkit._rowred", ["src/mmmkit/_rowred.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
