"""Builds the optional compiled collision kernel.

The extension mirrors crashsim._kernels.pure operation for operation; if the
build fails (no compiler, no Cython) the package still works on the pure
backend.  -ffp-contract=off keeps the C arithmetic bit-identical to the
Python fallback (no fused multiply-adds).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = []
if cythonize is not None:
    ext = Extension(
        "crashsim._kernels._ext",
        ["src/crashsim/_kernels/_ext.pyx"],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    ext.optional = True
    extensions = cythonize(ext, compiler_directives={"language_level": "3"})

setup(ext_modules=extensions)
