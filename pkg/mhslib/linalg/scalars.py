# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Exact scalars: the rationals Q and the Gaussian rationals Q(i)"""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from typing import Any

from sympy.polys.domains import QQ, QQ_I

__all__ = [
    "ScalarField",
    "common_field",
    "conj",
    "format_scalar",
    "i_power",
    "is_real",
    "parse_scalar",
    "real_part",
]


class ScalarField(str, Enum):
    """Ground field tag"""

    RATIONAL = "Q"
    GAUSSIAN = "Q(i)"

    @property
    def domain(self):
        """The sympy domain implementing this field"""  # noqa: DOC201
        return QQ if self is ScalarField.RATIONAL else QQ_I

    @property
    def zero(self):
        """Additive identity"""  # noqa: DOC201
        return self.domain.zero

    @property
    def one(self):
        """Multiplicative identity"""  # noqa: DOC201
        return self.domain.one


def common_field(*fields: ScalarField) -> ScalarField:
    """Smallest field containing all of the given fields"""  # noqa: DOC201
    if ScalarField.GAUSSIAN in fields:
        return ScalarField.GAUSSIAN
    return ScalarField.RATIONAL


def _parse_rational(value: Any):
    if isinstance(value, QQ.dtype):
        return value
    if isinstance(value, (bool, float)):
        raise ValueError(f"Inexact scalar {value!r}, use an integer or a 'p/q' string")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            frac = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"Cannot parse {value!r} as a rational") from None
        return QQ(frac.numerator, frac.denominator)
    raise ValueError(f"Cannot parse {value!r} as a rational")


def parse_scalar(value: Any, field: ScalarField):
    """Parse a serialised scalar into an element of the field

    Returns
    -------
    :
        The domain element

    Raises
    ------
    ValueError
        Imaginary part given for a rational field
    """
    if field is ScalarField.RATIONAL:
        if isinstance(value, QQ_I.dtype):
            if value.y != QQ.zero:
                raise ValueError(f"{value} is not rational")
            return value.x
        if isinstance(value, dict):
            if _parse_rational(value.get("im", 0)) != QQ.zero:
                raise ValueError(f"{value} is not rational")
            return _parse_rational(value.get("re", 0))
        return _parse_rational(value)
    if isinstance(value, QQ_I.dtype):
        return value
    if isinstance(value, dict):
        return QQ_I(
            _parse_rational(value.get("re", 0)), _parse_rational(value.get("im", 0))
        )
    return QQ_I(_parse_rational(value), QQ.zero)


def _format_rational(value) -> str:
    num, den = int(value.numerator), int(value.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def format_scalar(value, field: ScalarField) -> str | dict[str, str]:
    """Serialise a scalar, rationals as 'p/q' and Gaussian rationals as re/im"""  # noqa: DOC201
    if field is ScalarField.RATIONAL:
        return _format_rational(value)
    return {"re": _format_rational(value.x), "im": _format_rational(value.y)}


def conj(value, field: ScalarField):
    """Complex conjugate"""  # noqa: DOC201
    if field is ScalarField.RATIONAL:
        return value
    return QQ_I(value.x, -value.y)


def is_real(value, field: ScalarField) -> bool:
    """Whether the imaginary part vanishes"""  # noqa: DOC201
    return field is ScalarField.RATIONAL or value.y == QQ.zero


def real_part(value, field: ScalarField):
    """Real part as a rational"""  # noqa: DOC201
    return value if field is ScalarField.RATIONAL else value.x


def i_power(k: int):
    """The Gaussian rational i**k"""  # noqa: DOC201
    return [QQ_I(1, 0), QQ_I(0, 1), QQ_I(-1, 0), QQ_I(0, -1)][k % 4]
