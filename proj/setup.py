"""Build the _core extension from the C++ sources.

The CMake build remains the development entry point (CLI, unit and
acceptance suites); this path compiles the same sources into the wheel.
"""

import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

sources = sorted(glob.glob("src/*.cpp")) + ["bindings/module.cpp"]

ext = Pybind11Extension(
    "extremelab._core",
    sources,
    include_dirs=["include", "vendor"],
    cxx_std=20,
)

setup(
    ext_modules=[ext],
    cmdclass={"build_ext": build_ext},
)
