"""Build script: compiles the optional Wick-pairing kernel.

The compiled extension is a pure speed-up; every public interface works
identically on the pure-Python fallback (see matmodel.wick).  Any failure to
build the extension therefore degrades gracefully to a pure wheel.
"""

from __future__ import annotations

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but never fail the install over them."""

    def run(self) -> None:
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - depends on toolchain
            self._warn(exc)

    def build_extension(self, ext: Extension) -> None:
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - depends on toolchain
            self._warn(exc)

    @staticmethod
    def _warn(exc: Exception) -> None:
        print(
            f"warning: compiled kernel skipped ({exc}); "
            "falling back to the pure-Python implementation",
            file=sys.stderr,
        )


def _extensions() -> list[Extension]:
    if os.environ.get("MATMODEL_PURE"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - Cython is a build requirement
        return []
    return cythonize(
        [
            Extension(
                "matmodel.wick._corecy",
                ["src/matmodel/wick/_corecy.pyx"],
            )
        ],
        language_level=3,
    )


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
