# Builds the optional compiled kernel. The package works without it (a pure
# Python fallback is selected at import), so any failure here only costs speed.
import sys

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "shrinklab._kernels",
                ["src/shrinklab/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"shrinklab: skipping compiled kernels ({exc!r}); "
                     "falling back to the pure Python implementation\n")

setup(ext_modules=ext_modules)
