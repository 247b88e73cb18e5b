import glob
import shutil
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    """Builds the _core extension with the project's own CMake tree."""

    def build_extension(self, ext):
        source_dir = Path(__file__).resolve().parent
        build_temp = Path(self.build_temp).resolve()
        build_temp.mkdir(parents=True, exist_ok=True)
        subprocess.run(
            ["cmake", str(source_dir), "-DCMAKE_BUILD_TYPE=Release",
             f"-DPYTHON_EXECUTABLE={sys.executable}"],
            cwd=build_temp, check=True)
        subprocess.run(["cmake", "--build", str(build_temp), "--target", "_core"], check=True)

        produced = glob.glob(str(build_temp / "python" / "webgeom" / "_core*"))
        if not produced:
            raise RuntimeError("cmake did not produce the _core extension")
        target = Path(self.get_ext_fullpath(ext.name))
        target.parent.mkdir(parents=True, exist_ok=True)
        shutil.copy(produced[0], target)


setup(
    ext_modules=[CMakeExtension("webgeom._core")],
    cmdclass={"build_ext": CMakeBuild},
)
