# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Runtime settings read from the environment"""

from __future__ import annotations

import logging
import os
from typing import Literal

from pydantic import field_validator

from mhslib.base import MHSBaseModel

__all__ = ["Settings", "configure_logging"]

log = logging.getLogger(__name__)

_LEVELS = {"quiet": logging.WARNING, "info": logging.INFO, "debug": logging.DEBUG}


class Settings(MHSBaseModel):
    """Output settings for the command line front end"""

    verbosity: Literal["quiet", "info", "debug"] = "info"
    report_format: Literal["text", "machine"] = "text"
    include_timing: bool = True

    @field_validator("verbosity", "report_format", mode="before")
    @staticmethod
    def _lower(value):
        return value.strip().lower() if isinstance(value, str) else value

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> Settings:
        """Settings from MHSLIB_VERBOSITY, MHSLIB_FORMAT and MHSLIB_TIMING

        Returns
        -------
        :
            The settings, defaults where unset
        """
        environ = os.environ if environ is None else environ
        values = {}
        if "MHSLIB_VERBOSITY" in environ:
            values["verbosity"] = environ["MHSLIB_VERBOSITY"]
        if "MHSLIB_FORMAT" in environ:
            values["report_format"] = environ["MHSLIB_FORMAT"]
        if "MHSLIB_TIMING" in environ:
            values["include_timing"] = environ["MHSLIB_TIMING"].strip().lower() not in {
                "0",
                "false",
                "no",
                "",
            }
        return cls(**values)

    @property
    def level(self) -> int:
        """Logging level for the verbosity"""  # noqa: DOC201
        return _LEVELS[self.verbosity]


def configure_logging(settings: Settings):
    """Attach a stderr handler to the package logger at the configured level"""
    root = logging.getLogger("mhslib")
    root.setLevel(settings.level)
    if not any(getattr(h, "_mhslib", False) for h in root.handlers):
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(levelname)s: %(name)s: %(message)s"))
        handler._mhslib = True  # noqa: SLF001
        root.addHandler(handler)
    log.debug(f"logging configured at {settings.verbosity}")
