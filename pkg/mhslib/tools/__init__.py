# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later

"""mhslib tools"""

from mhslib.tools.serialisation import (
    canonical_json,
    read_json_object,
    sha256_canonical_json,
    to_jsonable,
    write_text,
)

__all__ = [
    "canonical_json",
    "read_json_object",
    "sha256_canonical_json",
    "to_jsonable",
    "write_text",
]
