"""Build script: compiles the optional Cython decoding kernel.

The compiled extension (latkit._cykernel) accelerates the OSD inner loop and
codebook enumeration.  If Cython or a C compiler is unavailable the build
falls through and the package installs with the pure-numpy kernel only; the
two backends are interchangeable (see latkit.kernels).
"""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "latkit._cykernel",
                ["src/latkit/_cykernel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001 - extension is strictly optional
    sys.stderr.write(f"latkit: skipping compiled kernel ({exc!r}); "
                     "falling back to the pure-Python backend\n")

setup(ext_modules=ext_modules)
