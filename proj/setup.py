import os
from glob import glob

from pybind11.setup_helpers import ParallelCompile, Pybind11Extension, build_ext
from setuptools import setup


def eigen_include():
    for candidate in (
        os.environ.get("EIGEN3_INCLUDE_DIR"),
        "/usr/include/eigen3",
        "/usr/local/include/eigen3",
        "/opt/homebrew/include/eigen3",
    ):
        if candidate and os.path.isdir(candidate):
            return candidate
    raise RuntimeError(
        "Eigen headers not found; set EIGEN3_INCLUDE_DIR to the eigen3 directory"
    )


ParallelCompile("NPY_NUM_BUILD_JOBS").install()

ext = Pybind11Extension(
    "lrsim._core",
    sorted(glob("src/*.cpp")) + ["python/src/module.cpp"],
    include_dirs=["include", "vendor", eigen_include()],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
