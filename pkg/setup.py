"""Build script: compiles the optional Cython kernel core.

If Cython or a C compiler is unavailable the package installs in
pure-Python mode; bqline._kernels falls back to the numpy backend.
"""

from setuptools import setup


def extension_modules():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "bqline._kernels._core",
        sources=["src/bqline/_kernels/_core.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extension_modules())
