import os

from setuptools import Extension, setup

# The compiled kernel is optional: without Cython (or a C compiler) the
# package falls back to the pure-Python implementation at import time.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    extensions = [
        Extension(
            "chaoquant._ckernels",
            [os.path.join("src", "chaoquant", "_ckernels.pyx")],
            # fp contraction would change the keystream bits
            extra_compile_args=["-O2", "-ffp-contract=off"],
            optional=True,
        )
    ]
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
