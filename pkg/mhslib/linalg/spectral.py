# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Eigenspaces, Jordan-Chevalley decomposition, definiteness and nilpotent series"""

from __future__ import annotations

import logging
from math import factorial
from typing import TYPE_CHECKING, Any

import sympy
from sympy.polys.domains import QQ

from mhslib.base import NonSplitSpectrum, NotHermitian, NotNilpotent, NotUnipotent
from mhslib.linalg.maps import LinearMap, hstack
from mhslib.linalg.scalars import ScalarField, common_field, parse_scalar
from mhslib.linalg.subspaces import Subspace, kernel

if TYPE_CHECKING:
    from collections.abc import Callable

__all__ = [
    "eigenvalues",
    "exp_nilpotent",
    "generalized_eigenspace",
    "hermitian_is_positive_definite",
    "is_nilpotent",
    "jordan_chevalley",
    "log_unipotent",
    "nilpotency_index",
    "nilpotent_series",
]

log = logging.getLogger(__name__)

_X = sympy.Symbol("x")


def is_nilpotent(a: LinearMap) -> bool:
    """Whether a square matrix is nilpotent"""  # noqa: DOC201
    return a.is_square and a.power(a.rows).is_zero()


def nilpotency_index(a: LinearMap) -> int:
    """Smallest k with a^k = 0

    Returns
    -------
    :
        The nilpotency index, 0 on the zero space

    Raises
    ------
    NotNilpotent
        The matrix is not nilpotent
    """
    if not is_nilpotent(a):
        raise NotNilpotent(f"{a.rows}x{a.cols} matrix is not nilpotent")
    k, power = 0, LinearMap.identity(a.rows, a.field)
    while not power.is_zero():
        power @= a
        k += 1
    return k


def generalized_eigenspace(a: LinearMap, lam: Any) -> Subspace:
    """kernel((a - lam I)^n) for the ambient dimension n"""  # noqa: DOC201
    field = a.field
    if isinstance(lam, (dict, ScalarField.GAUSSIAN.domain.dtype)):
        field = common_field(field, ScalarField.GAUSSIAN)
    a = a.to_field(field)
    shifted = a - LinearMap.identity(a.rows, field).scale(parse_scalar(lam, field))
    return kernel(shifted.power(a.rows))


def eigenvalues(a: LinearMap) -> list[tuple[Any, int]]:
    """Eigenvalues with algebraic multiplicities

    Returns
    -------
    :
        (eigenvalue, multiplicity) pairs ordered by the sympy sort key of the value

    Raises
    ------
    NonSplitSpectrum
        The characteristic polynomial has an irreducible factor of degree > 1
    """
    if a.rows == 0:
        return []
    domain = a.field.domain
    coefficients = a.to_domain_matrix().charpoly()
    degree = len(coefficients) - 1
    poly = sum(
        domain.to_sympy(c) * _X ** (degree - i) for i, c in enumerate(coefficients)
    )
    _, factors = sympy.factor_list(poly, _X, gaussian=a.field is ScalarField.GAUSSIAN)
    roots = []
    for factor, multiplicity in factors:
        p = sympy.Poly(factor, _X)
        if p.degree() != 1:
            raise NonSplitSpectrum(f"irreducible factor {factor} over {a.field.value}")
        lead, const = p.all_coeffs()
        roots.append((sympy.expand(-const / lead), multiplicity))
    roots.sort(key=lambda r: sympy.default_sort_key(r[0]))
    return [(domain.from_sympy(r), m) for r, m in roots]


def jordan_chevalley(a: LinearMap) -> tuple[LinearMap, LinearMap]:
    """Additive Jordan-Chevalley decomposition a = s + n

    s is diagonalisable, n nilpotent and sn = ns.

    Returns
    -------
    :
        (s, n)

    Raises
    ------
    NonSplitSpectrum
        Eigenvalues outside the scalar field
    """
    n = a.rows
    if n == 0:
        return a, a
    field = a.field
    blocks, diagonal = [], []
    for lam, _ in eigenvalues(a):
        space = generalized_eigenspace(a, lam)
        blocks.append(space.inclusion())
        diagonal.extend([lam] * space.dim)
    change = hstack(*blocks)
    d = LinearMap.build(
        (
            tuple(diagonal[i] if i == j else field.zero for j in range(n))
            for i in range(n)
        ),
        n,
        n,
        field,
    )
    s = change @ d @ change.inverse()
    log.debug(f"Jordan-Chevalley split with {len(blocks)} eigenvalues")
    return s, a - s


def hermitian_is_positive_definite(g: LinearMap) -> bool:
    """Sylvester's criterion on a Hermitian Gaussian-rational matrix

    Returns
    -------
    :
        Whether every leading principal minor is a positive rational

    Raises
    ------
    NotHermitian
        g differs from its conjugate transpose
    """
    g = g.to_field(ScalarField.GAUSSIAN)
    if not g.is_square or g != g.adjoint():
        raise NotHermitian(f"{g.rows}x{g.cols} matrix is not Hermitian")
    for k in range(1, g.rows + 1):
        minor = g.submatrix(range(k), range(k)).det()
        if minor.y != QQ.zero or minor.x <= QQ.zero:
            return False
    return True


def nilpotent_series(x: LinearMap, coefficient: Callable[[int], Any]) -> LinearMap:
    """Sum of coefficient(k) x^k over k >= 0, x nilpotent

    Returns
    -------
    :
        The finite sum

    Raises
    ------
    NotNilpotent
        The series does not terminate
    """
    if not is_nilpotent(x):
        raise NotNilpotent("series argument is not nilpotent")
    total = LinearMap.zeros(x.rows, x.cols, x.field)
    power = LinearMap.identity(x.rows, x.field)
    k = 0
    while not power.is_zero():
        total += power.scale(coefficient(k))
        power @= x
        k += 1
    return total


def exp_nilpotent(n: LinearMap) -> LinearMap:
    """exp(n) for nilpotent n"""  # noqa: DOC201
    return nilpotent_series(n, lambda k: QQ(1, factorial(k)))


def log_unipotent(t: LinearMap) -> LinearMap:
    """log(t) for unipotent t

    Returns
    -------
    :
        The nilpotent logarithm

    Raises
    ------
    NotUnipotent
        t - I is not nilpotent
    """
    x = t - LinearMap.identity(t.rows, t.field)
    if not is_nilpotent(x):
        raise NotUnipotent("matrix is not unipotent")
    return nilpotent_series(x, lambda k: QQ(0) if k == 0 else QQ((-1) ** (k + 1), k))
