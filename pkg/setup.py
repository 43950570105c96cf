import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QDESIGNS_NO_EXT", "") in ("", "0"):
    try:
        from Cython.Build import cythonize
    except ImportError:  # pure-Python install
        pass
    else:
        ext_modules = cythonize(
            [Extension("qdesigns._ckernels", ["src/qdesigns/_ckernels.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
