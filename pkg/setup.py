import os

from setuptools import Extension, setup

# The compiled kernels are an optional speedup: blocklab._kernels falls back
# to the pure-Python implementation when the extension is absent.
ext_modules = []
if os.environ.get("BLOCKLAB_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("blocklab._ckernels", ["src/blocklab/_ckernels.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
