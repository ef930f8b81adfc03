from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize
except ImportError:
    # the pure-Python kernels are used when the extension is absent
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cyclic_modal._ckernels",
                ["src/cyclic_modal/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
