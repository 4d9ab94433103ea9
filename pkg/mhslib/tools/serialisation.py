# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Canonical JSON codecs and digests"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Any

from pydantic import BaseModel
from pydantic_core import to_jsonable_python

from mhslib.base import ProblemFileError

__all__ = [
    "canonical_json",
    "read_json_object",
    "sha256_canonical_json",
    "to_jsonable",
    "write_text",
]


def to_jsonable(obj: Any) -> Any:
    """Plain JSON data for models, tuples and dicts of them

    Returns
    -------
    :
        The JSON-compatible value, tuple keys joined with commas
    """
    if isinstance(obj, BaseModel):
        return to_jsonable(obj.model_dump(mode="json"))
    if isinstance(obj, dict):
        return {
            ",".join(map(str, k)) if isinstance(k, tuple) else str(k): to_jsonable(v)
            for k, v in obj.items()
        }
    if isinstance(obj, list | tuple):
        return [to_jsonable(v) for v in obj]
    return to_jsonable_python(obj)


def canonical_json(obj: Any, *, indent: int | None = None) -> str:
    """Sorted-key JSON, compact unless an indent is given"""  # noqa: DOC201
    separators = (",", ":") if indent is None else (",", ": ")
    return json.dumps(
        to_jsonable(obj),
        sort_keys=True,
        indent=indent,
        separators=separators,
        ensure_ascii=False,
    )


def sha256_canonical_json(obj: Any) -> str:
    """Hex sha256 of the compact canonical JSON"""  # noqa: DOC201
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()


def read_json_object(path: Path | str, *, description: str = "problem file") -> dict:
    """Read a JSON object from a file

    Returns
    -------
    :
        The decoded object

    Raises
    ------
    ProblemFileError
        The file cannot be read, is not JSON or is not an object
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ProblemFileError(f"{description} {path} is not readable: {exc}") from exc
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ProblemFileError(
            f"{description} {path} is invalid JSON at line {exc.lineno} "
            f"column {exc.colno}: {exc.msg}"
        ) from exc
    if not isinstance(payload, dict):
        raise ProblemFileError(f"{description} {path} must be a JSON object")
    return payload


def write_text(path: Path | str, text: str):
    """Write text, creating parent directories"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
