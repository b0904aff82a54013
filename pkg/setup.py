import os

from setuptools import setup

ext_modules = []
if not os.environ.get("FIMTOOL_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(["src/fimtool/kernels/_ckernel.pyx"], language_level=3, quiet=True)

setup(ext_modules=ext_modules)
