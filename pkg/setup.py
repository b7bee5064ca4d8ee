"""Build script for the compiled update kernel.

The extension is optional: if no C toolchain (or Cython) is available the
install still succeeds and the package falls back to the pure-Python kernel.
-ffp-contract=off keeps the compiled floating-point arithmetic identical to
the Python fallback (no fused multiply-add), which the equivalence tests
rely on.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "spinmarket._ckernel",
                ["src/spinmarket/_ckernel.pyx"],
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )

for ext in ext_modules:
    ext.optional = True

setup(ext_modules=ext_modules)
