# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
from fractions import Fraction

import pytest
from sympy.polys.domains import QQ, QQ_I

from mhslib.linalg.scalars import (
    ScalarField,
    common_field,
    conj,
    format_scalar,
    i_power,
    parse_scalar,
)

Q = ScalarField.RATIONAL
G = ScalarField.GAUSSIAN


class TestParse:
    @pytest.mark.parametrize(
        ("value", "expected"),
        [
            (3, QQ(3)),
            ("1/2", QQ(1, 2)),
            (" -4/6 ", QQ(-2, 3)),
            (Fraction(5, 7), QQ(5, 7)),
        ],
    )
    def test_rational(self, value, expected):
        assert parse_scalar(value, Q) == expected

    @pytest.mark.parametrize("value", [0.5, True])
    def test_inexact_values_rejected(self, value):
        with pytest.raises(ValueError, match="Inexact"):
            parse_scalar(value, Q)

    def test_garbage_rejected(self):
        with pytest.raises(ValueError, match="Cannot parse"):
            parse_scalar("one half", Q)

    def test_gaussian_from_parts(self):
        assert parse_scalar({"re": "1/2", "im": -1}, G) == QQ_I(QQ(1, 2), -1)
        assert parse_scalar(2, G) == QQ_I(2, 0)

    def test_imaginary_part_in_rational_field(self):
        assert parse_scalar({"re": 2, "im": 0}, Q) == QQ(2)
        with pytest.raises(ValueError, match="not rational"):
            parse_scalar({"re": 2, "im": 1}, Q)


class TestFormat:
    def test_rational(self):
        assert format_scalar(QQ(4, 2), Q) == "2"
        assert format_scalar(QQ(-1, 3), Q) == "-1/3"

    def test_gaussian(self):
        assert format_scalar(QQ_I(QQ(1, 2), 3), G) == {"re": "1/2", "im": "3"}


def test_common_field():
    assert common_field(Q, Q) is Q
    assert common_field(Q, G) is G
    assert common_field() is Q


def test_conjugation_and_powers_of_i():
    assert conj(QQ_I(1, 2), G) == QQ_I(1, -2)
    assert conj(QQ(3), Q) == QQ(3)
    assert [i_power(k) for k in range(4)] == [
        QQ_I(1, 0),
        QQ_I(0, 1),
        QQ_I(-1, 0),
        QQ_I(0, -1),
    ]
    assert i_power(-1) == QQ_I(0, -1)
