"""Build hook for the optional compiled enumeration kernel.

If Cython or a C compiler is missing the package still installs and the
pure-Python kernel is used at runtime.
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
                "kvwitness._ext._zeros",
                ["src/kvwitness/_ext/_zeros.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)
