"""Build script: compiles the optional Cython kernel when the toolchain allows.

The package is fully functional without the extension; ``vkwave._kernels``
falls back to a pure-numpy implementation at import time.  Set
``VKWAVE_NO_EXT=1`` to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("VKWAVE_NO_EXT") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "vkwave._kernels._traveling_cy",
        ["src/vkwave/_kernels/_traveling_cy.pyx"],
        include_dirs=[numpy.get_include()],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=_extensions())
