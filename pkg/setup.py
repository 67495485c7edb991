from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; homlab falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "homlab._kernels._ckernel",
                ["src/homlab/_kernels/_ckernel.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
