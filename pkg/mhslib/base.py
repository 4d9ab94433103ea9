# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Base of mhslib"""

from __future__ import annotations

import functools
import logging
from abc import ABC
from numbers import Integral
from typing import TYPE_CHECKING, Any

from pydantic import BaseModel, ConfigDict, Field

if TYPE_CHECKING:
    from collections.abc import Callable, Generator, Iterable

__all__ = [
    "CheckReport",
    "Clause",
    "DimensionMismatch",
    "FiltrationNotPreserved",
    "MHSBaseModel",
    "MalformedInput",
    "NonSplitSpectrum",
    "NotExists",
    "NotHermitian",
    "NotICSum",
    "NotInvertible",
    "NotNilpotent",
    "NotOrbit",
    "NotUnipotent",
    "ParityViolation",
    "ProblemFileError",
    "UnsupportedKind",
    "WellDefinednessViolation",
    "as_int",
    "parses_raw",
    "required",
]

log = logging.getLogger(__name__)


class DimensionMismatch(ValueError):
    """Dimensions or scalar fields of the operands do not agree"""


class WellDefinednessViolation(ValueError):
    """A map does not descend to the requested subquotients"""


class NonSplitSpectrum(ValueError):
    """Eigenvalues do not lie in the scalar field"""


class NotHermitian(ValueError):
    """Matrix is not equal to its conjugate transpose"""


class NotNilpotent(ValueError):
    """Endomorphism is not nilpotent"""


class FiltrationNotPreserved(ValueError):
    """Endomorphism does not preserve a filtration"""


class ParityViolation(ValueError):
    """Bilinear form has the wrong symmetry for the weight"""


class NotInvertible(ValueError):
    """Matrix is singular"""


class NotICSum(ValueError):
    """Quiver is not a sum of intermediate extensions"""


class NotUnipotent(ValueError):
    """Endomorphism is not unipotent"""


class NotOrbit(ValueError):
    """Data does not satisfy the nilpotent orbit axioms"""


class UnsupportedKind(ValueError):
    """Unknown problem kind"""


class ProblemFileError(ValueError):
    """Problem file could not be parsed"""


class MalformedInput(ValueError):
    """Serialised input is missing a field or has one of the wrong type"""


def required(data: dict, key: str, owner: str) -> Any:
    """Look up a field of serialised input

    Returns
    -------
    :
        The value

    Raises
    ------
    MalformedInput
        The field is absent
    """
    try:
        return data[key]
    except KeyError:
        raise MalformedInput(f"{owner} is missing '{key}'") from None


def as_int(value: Any, name: str) -> int:
    """An integer field of serialised input, bools rejected

    Returns
    -------
    :
        The integer

    Raises
    ------
    MalformedInput
        The value is not an integer
    """
    if isinstance(value, bool) or not isinstance(value, Integral):
        raise MalformedInput(f"{name} must be an integer, not {value!r}")
    return int(value)


def parses_raw(func: Callable) -> Callable:
    """Report lookup and type errors of a before-validator as MalformedInput

    Only ValueError and AssertionError become a pydantic ValidationError.

    Returns
    -------
    :
        The wrapped validator
    """

    @functools.wraps(func)
    def wrapper(cls, data):
        try:
            return func(cls, data)
        except (AttributeError, KeyError, IndexError, TypeError) as exc:
            raise MalformedInput(
                f"malformed {cls.__name__}: {type(exc).__name__} {exc}"
            ) from exc

    return wrapper


class MHSBaseModel(BaseModel, ABC):
    """Base model for all mhslib data, immutable after construction"""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    def __dir__(self) -> set[str]:
        """List methods only if they dont exist in pydantic basemodel

        Returns
        -------
        :
            subset of attributes
        """
        return set(super().__dir__()).difference(dir(BaseModel))


class NotExists(MHSBaseModel):
    """Result of a construction whose output provably does not exist"""

    reason: str

    def __bool__(self) -> bool:  # noqa: D105
        return False


class Clause(MHSBaseModel):
    """A single named verdict with a JSON-serialisable witness"""

    name: str
    passed: bool
    witness: Any = None


class CheckReport(MHSBaseModel):
    """Conjunction of named clauses"""

    clauses: tuple[Clause, ...] = Field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        """Whether every clause passed"""  # noqa: DOC201
        return all(c.passed for c in self.clauses)

    def __bool__(self) -> bool:  # noqa: D105
        return self.passed

    def __iter__(self) -> Generator[Clause, None, None]:  # noqa: D105
        yield from self.clauses

    def __getitem__(self, name: str) -> Clause:
        """
        Returns
        -------
        :
            The first clause with the given name

        Raises
        ------
        KeyError
            No such clause
        """
        for clause in self.clauses:
            if clause.name == name:
                return clause
        raise KeyError(name)

    def failed(self) -> list[str]:
        """Names of the failing clauses"""  # noqa: DOC201
        return [c.name for c in self.clauses if not c.passed]

    @classmethod
    def of(cls, clauses: Iterable[Clause]) -> CheckReport:
        """Build a report from clauses"""  # noqa: DOC201
        return cls(clauses=tuple(clauses))

    def merge(self, other: CheckReport, prefix: str = "") -> CheckReport:
        """Concatenate another report, optionally prefixing its clause names"""  # noqa: DOC201
        return CheckReport(
            clauses=self.clauses
            + tuple(
                Clause(name=f"{prefix}{c.name}", passed=c.passed, witness=c.witness)
                for c in other.clauses
            )
        )
