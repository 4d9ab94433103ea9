# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Exact matrices over Q and Q(i)"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from typing import Any

from pydantic import model_serializer, model_validator
from sympy.polys.matrices import DomainMatrix

from mhslib.base import DimensionMismatch, MHSBaseModel, NotInvertible, parses_raw
from mhslib.linalg.scalars import (
    ScalarField,
    common_field,
    conj,
    format_scalar,
    parse_scalar,
)

__all__ = ["LinearMap", "block_diagonal", "hstack", "vstack"]

log = logging.getLogger(__name__)


def _infer_field(entries) -> ScalarField:
    for row in entries:
        for x in row:
            if isinstance(x, (dict, ScalarField.GAUSSIAN.domain.dtype)):
                return ScalarField.GAUSSIAN
    return ScalarField.RATIONAL


class LinearMap(MHSBaseModel):
    """A rows x cols matrix acting on column vectors

    Serialised as ``{"rows", "cols", "field", "entries"}`` with row-major entries;
    a bare nested list is also accepted on input.
    """

    rows: int
    cols: int
    field: ScalarField = ScalarField.RATIONAL
    entries: tuple[tuple[Any, ...], ...]

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse_entries(cls, data):
        if isinstance(data, list | tuple):
            data = {"entries": data}
        if not isinstance(data, dict):
            return data
        data = dict(data)
        raw = [list(r) for r in data.get("entries", ())]
        field = ScalarField(data.get("field") or _infer_field(raw))
        data["field"] = field
        data.setdefault("rows", len(raw))
        data.setdefault("cols", len(raw[0]) if raw else 0)
        data["entries"] = tuple(tuple(parse_scalar(x, field) for x in r) for r in raw)
        return data

    @model_validator(mode="after")
    def _check_shape(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionMismatch("negative matrix dimension")
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise DimensionMismatch(
                f"entries do not form a {self.rows}x{self.cols} matrix"
            )
        return self

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "field": self.field.value,
            "entries": [[format_scalar(x, self.field) for x in r] for r in self.entries],
        }

    def __str__(self) -> str:  # noqa: D105
        body = "; ".join(
            " ".join(str(format_scalar(x, self.field)) for x in r) for r in self.entries
        )
        return f"[{body}]"

    # construction

    @classmethod
    def build(
        cls, entries: Iterable[Iterable[Any]], rows: int, cols: int, field: ScalarField
    ) -> LinearMap:
        """Construct from domain elements without re-parsing"""  # noqa: DOC201
        return cls.model_construct(
            rows=rows,
            cols=cols,
            field=field,
            entries=tuple(tuple(r) for r in entries),
        )

    @classmethod
    def from_rows(
        cls, rows: Sequence[Sequence[Any]], field: ScalarField = ScalarField.RATIONAL
    ) -> LinearMap:
        """Parse a nested list of serialised scalars"""  # noqa: DOC201
        return cls(
            entries=rows,
            field=field,
            rows=len(rows),
            cols=len(rows[0]) if rows else 0,
        )

    @classmethod
    def zeros(
        cls, rows: int, cols: int, field: ScalarField = ScalarField.RATIONAL
    ) -> LinearMap:
        """Zero matrix"""  # noqa: DOC201
        return cls.build(((field.zero,) * cols for _ in range(rows)), rows, cols, field)

    @classmethod
    def identity(cls, n: int, field: ScalarField = ScalarField.RATIONAL) -> LinearMap:
        """Identity matrix"""  # noqa: DOC201
        return cls.build(
            (
                tuple(field.one if i == j else field.zero for j in range(n))
                for i in range(n)
            ),
            n,
            n,
            field,
        )

    @classmethod
    def from_columns(
        cls, columns: Sequence[Sequence[Any]], rows: int, field: ScalarField
    ) -> LinearMap:
        """Matrix whose columns are the given domain-element vectors"""  # noqa: DOC201
        return cls.build(
            (tuple(col[i] for col in columns) for i in range(rows)),
            rows,
            len(columns),
            field,
        )

    @classmethod
    def from_domain_matrix(cls, dm: DomainMatrix, field: ScalarField) -> LinearMap:
        """Wrap a sympy DomainMatrix"""  # noqa: DOC201
        rows, cols = dm.shape
        if rows == 0 or cols == 0:
            return cls.zeros(rows, cols, field)
        return cls.build(dm.to_list(), rows, cols, field)

    def to_domain_matrix(self) -> DomainMatrix:
        """Equivalent sympy DomainMatrix"""  # noqa: DOC201
        return DomainMatrix(
            [list(r) for r in self.entries], (self.rows, self.cols), self.field.domain
        )

    # properties

    @property
    def shape(self) -> tuple[int, int]:
        """(rows, cols)"""  # noqa: DOC201
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        """Whether rows == cols"""  # noqa: DOC201
        return self.rows == self.cols

    def is_zero(self) -> bool:
        """Whether every entry vanishes"""  # noqa: DOC201
        zero = self.field.zero
        return all(x == zero for r in self.entries for x in r)

    def column(self, j: int) -> tuple[Any, ...]:
        """The j-th column"""  # noqa: DOC201
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Any, ...]]:
        """All columns"""  # noqa: DOC201
        return [self.column(j) for j in range(self.cols)]

    # conversions

    def to_field(self, field: ScalarField) -> LinearMap:
        """Change the scalar field, Q -> Q(i) always and Q(i) -> Q if real

        Returns
        -------
        :
            The converted matrix

        Raises
        ------
        DimensionMismatch
            Entries are not real
        """
        if field is self.field:
            return self
        if field is ScalarField.GAUSSIAN:
            dom = field.domain
            return self.build(
                (tuple(dom(x, 0) for x in r) for r in self.entries),
                self.rows,
                self.cols,
                field,
            )
        if any(x.y != 0 for r in self.entries for x in r):
            raise DimensionMismatch("matrix has non-real entries")
        return self.build(
            (tuple(x.x for x in r) for r in self.entries), self.rows, self.cols, field
        )

    def promoted(self, *others: LinearMap) -> list[LinearMap]:
        """This and the other maps over their common field"""  # noqa: DOC201
        field = common_field(self.field, *(o.field for o in others))
        return [m.to_field(field) for m in (self, *others)]

    # arithmetic

    def __matmul__(self, other: LinearMap) -> LinearMap:
        """Composition self o other

        Returns
        -------
        :
            The product matrix

        Raises
        ------
        DimensionMismatch
            Inner dimensions differ
        """
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot compose {self.rows}x{self.cols} with {other.rows}x{other.cols}"
            )
        a, b = self.promoted(other)
        if 0 in {a.rows, a.cols, b.cols}:
            return LinearMap.zeros(a.rows, b.cols, a.field)
        return LinearMap.from_domain_matrix(
            a.to_domain_matrix() * b.to_domain_matrix(), a.field
        )

    def _elementwise(self, other: LinearMap, op) -> LinearMap:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")
        a, b = self.promoted(other)
        return LinearMap.build(
            (
                tuple(op(x, y) for x, y in zip(ra, rb, strict=True))
                for ra, rb in zip(a.entries, b.entries, strict=True)
            ),
            a.rows,
            a.cols,
            a.field,
        )

    def __add__(self, other: LinearMap) -> LinearMap:  # noqa: D105
        return self._elementwise(other, lambda x, y: x + y)

    def __sub__(self, other: LinearMap) -> LinearMap:  # noqa: D105
        return self._elementwise(other, lambda x, y: x - y)

    def __neg__(self) -> LinearMap:  # noqa: D105
        return self.scale(-self.field.one)

    def scale(self, value: Any) -> LinearMap:
        """Multiply every entry by a scalar (serialised or domain element)"""  # noqa: DOC201
        field = self.field
        if isinstance(value, (dict, ScalarField.GAUSSIAN.domain.dtype)):
            field = ScalarField.GAUSSIAN
        c = parse_scalar(value, field)
        m = self.to_field(field)
        return LinearMap.build(
            (tuple(c * x for x in r) for r in m.entries), m.rows, m.cols, field
        )

    def transpose(self) -> LinearMap:
        """Transpose"""  # noqa: DOC201
        return LinearMap.build(self.columns(), self.cols, self.rows, self.field)

    @property
    def T(self) -> LinearMap:  # noqa: N802
        """Transpose"""  # noqa: DOC201
        return self.transpose()

    def conjugate(self) -> LinearMap:
        """Entrywise complex conjugate"""  # noqa: DOC201
        return LinearMap.build(
            (tuple(conj(x, self.field) for x in r) for r in self.entries),
            self.rows,
            self.cols,
            self.field,
        )

    def adjoint(self) -> LinearMap:
        """Conjugate transpose"""  # noqa: DOC201
        return self.conjugate().transpose()

    def power(self, k: int) -> LinearMap:
        """k-th power of a square matrix, k >= 0

        Returns
        -------
        :
            The power

        Raises
        ------
        DimensionMismatch
            Matrix is not square
        """
        if not self.is_square:
            raise DimensionMismatch("power of a non-square matrix")
        result = LinearMap.identity(self.rows, self.field)
        base = self
        while k > 0:
            if k & 1:
                result @= base
            base @= base
            k >>= 1
        return result

    def apply(self, vector: Sequence[Any]) -> tuple[Any, ...]:
        """Image of a column vector given as domain elements"""  # noqa: DOC201
        if len(vector) != self.cols:
            raise DimensionMismatch(
                f"vector of length {len(vector)} for {self.cols} columns"
            )
        zero = self.field.zero
        return tuple(
            sum((x * v for x, v in zip(r, vector, strict=True)), zero)
            for r in self.entries
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> LinearMap:
        """Entries at the given row and column indices"""  # noqa: DOC201
        return LinearMap.build(
            (tuple(self.entries[i][j] for j in cols) for i in rows),
            len(rows),
            len(cols),
            self.field,
        )

    # elimination

    def rref(self) -> tuple[LinearMap, tuple[int, ...]]:
        """Reduced row echelon form and pivot columns"""  # noqa: DOC201
        if self.rows == 0 or self.cols == 0:
            return self, ()
        reduced, pivots = self.to_domain_matrix().rref()
        return LinearMap.from_domain_matrix(reduced, self.field), tuple(pivots)

    def rank(self) -> int:
        """Rank"""  # noqa: DOC201
        return len(self.rref()[1])

    def det(self):
        """Determinant of a square matrix

        Returns
        -------
        :
            The determinant as a domain element

        Raises
        ------
        DimensionMismatch
            Matrix is not square
        """
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        if self.rows == 0:
            return self.field.one
        return self.to_domain_matrix().det()

    def is_invertible(self) -> bool:
        """Whether the matrix is square and non-singular"""  # noqa: DOC201
        return self.is_square and self.det() != self.field.zero

    def inverse(self) -> LinearMap:
        """Inverse of a square matrix

        Returns
        -------
        :
            The inverse

        Raises
        ------
        NotInvertible
            Matrix is singular
        """
        if not self.is_invertible():
            raise NotInvertible(f"{self.rows}x{self.cols} matrix is not invertible")
        if self.rows == 0:
            return self
        return LinearMap.from_domain_matrix(self.to_domain_matrix().inv(), self.field)


def hstack(*maps: LinearMap, rows: int | None = None) -> LinearMap:
    """Concatenate matrices side by side"""  # noqa: DOC201
    if not maps:
        return LinearMap.zeros(rows or 0, 0)
    maps = maps[0].promoted(*maps[1:])
    if len({m.rows for m in maps}) != 1:
        raise DimensionMismatch("hstack of matrices with different row counts")
    n = maps[0].rows
    return LinearMap.build(
        (sum((m.entries[i] for m in maps), ()) for i in range(n)),
        n,
        sum(m.cols for m in maps),
        maps[0].field,
    )


def vstack(*maps: LinearMap, cols: int | None = None) -> LinearMap:
    """Stack matrices on top of each other"""  # noqa: DOC201
    if not maps:
        return LinearMap.zeros(0, cols or 0)
    maps = maps[0].promoted(*maps[1:])
    if len({m.cols for m in maps}) != 1:
        raise DimensionMismatch("vstack of matrices with different column counts")
    return LinearMap.build(
        (r for m in maps for r in m.entries),
        sum(m.rows for m in maps),
        maps[0].cols,
        maps[0].field,
    )


def block_diagonal(*maps: LinearMap) -> LinearMap:
    """Block diagonal matrix"""  # noqa: DOC201
    if not maps:
        return LinearMap.zeros(0, 0)
    maps = maps[0].promoted(*maps[1:])
    field = maps[0].field
    total = sum(m.cols for m in maps)
    rows = []
    offset = 0
    for m in maps:
        for r in m.entries:
            rows.append(
                (field.zero,) * offset + r + (field.zero,) * (total - offset - m.cols)
            )
        offset += m.cols
    return LinearMap.build(rows, sum(m.rows for m in maps), total, field)
