from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure-Python
# twin at import time if the extension is absent, so a failed build of the
# extension (no Cython, no compiler) should not make the package uninstallable.
try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "permcount._kernels",
                sources=["src/permcount/_kernels.pyx"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
