import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("VQPU_PURE_PYTHON"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "vqpu._kernels._statevec",
        sources=["src/vqpu/_kernels/_statevec.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        optional=True,  # missing compiler degrades to the numpy kernels
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
