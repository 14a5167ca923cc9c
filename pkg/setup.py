"""Build hook for the optional compiled kernel.

The extension is marked optional: when Cython or a C compiler is missing the
package still installs and falls back to the numpy implementation.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover - build without Cython
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "qglue._kernels._bloch_ext",
                ["src/qglue/_kernels/_bloch_ext.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
