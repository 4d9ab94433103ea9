# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
import pytest

from mhslib.base import ProblemFileError
from mhslib.tools.serialisation import (
    canonical_json,
    read_json_object,
    sha256_canonical_json,
    to_jsonable,
    write_text,
)
from tests import mat


def test_tuple_keys_are_joined():
    assert to_jsonable({(1, -1): 2, 3: (4, 5)}) == {"1,-1": 2, "3": [4, 5]}


def test_models_are_dumped():
    assert to_jsonable({"d": mat([1, "1/2"])}) == {
        "d": {"rows": 1, "cols": 2, "field": "Q", "entries": [["1", "1/2"]]}
    }


def test_canonical_json_sorts_keys():
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert canonical_json({"b": 1, "a": 2}, indent=2) == '{\n  "a": 2,\n  "b": 1\n}'


def test_digest_ignores_key_order():
    first = sha256_canonical_json({"kind": "vfilt", "payload": {"A": [[0]]}})
    second = sha256_canonical_json({"payload": {"A": [[0]]}, "kind": "vfilt"})
    assert first == second
    assert first != sha256_canonical_json({"kind": "vfilt", "payload": {"A": [[1]]}})


def test_read_and_write(tmp_path):
    path = tmp_path / "nested" / "problem.json"
    write_text(path, '{"kind": "quiver"}')
    assert read_json_object(path) == {"kind": "quiver"}


@pytest.mark.parametrize(
    ("text", "message"),
    [("{", "invalid JSON at line 1"), ("3", "must be a JSON object")],
)
def test_read_errors(tmp_path, text, message):
    path = tmp_path / "bad.json"
    path.write_text(text)
    with pytest.raises(ProblemFileError, match=message):
        read_json_object(path, description="report")
