from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "zladder._zladder",
    [
        "src/quadrature.cpp",
        "src/special_functions.cpp",
        "src/moment.cpp",
        "src/ladder.cpp",
        "src/euler_kernel.cpp",
        "src/transform.cpp",
        "src/experiments.cpp",
        "src/report.cpp",
        "python/bindings.cpp",
    ],
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
