# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Graded model of the V-filtration of the connection d/dt + A dt/t.

The module is spanned by the e_i t^k. Since t d/dt (e_i t^k) = k e_i t^k + t^k A e_i,
the sector Gr^V_alpha has the basis e_i t^{k_i} over the i with alpha + a_ii an
integer, k_i = -alpha - a_ii. On it t d/dt acts as -alpha + (A - diag A), d/dt
maps Gr_alpha to Gr_{alpha+1} by the same matrix and t maps Gr_{alpha+1} back
to Gr_alpha by the identity. psi collects the sectors alpha in [0, 1) and phi
those in (0, 1].
"""

from __future__ import annotations

import logging
from math import factorial
from typing import Any

from pydantic import field_serializer, field_validator, model_validator
from sympy.polys.domains import QQ

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    MHSBaseModel,
    NotUnipotent,
)
from mhslib.filtrations import Filtration
from mhslib.linalg.maps import LinearMap, block_diagonal
from mhslib.linalg.scalars import (
    ScalarField,
    common_field,
    format_scalar,
    parse_scalar,
)
from mhslib.linalg.spectral import is_nilpotent, jordan_chevalley, nilpotent_series
from mhslib.linalg.subspaces import Subspace, image_of
from mhslib.quivers.perverse import PerverseQuiver1D, Sector

__all__ = [
    "VModel",
    "VSector",
    "can_map",
    "check_hodge_sectors",
    "gr_v",
    "jump_set",
    "to_quiver",
    "var_adjust",
    "var_from_Var",
    "var_map",
]

log = logging.getLogger(__name__)


def _floor(x) -> int:
    return int(x.numerator) // int(x.denominator)


def _is_integer(x) -> bool:
    return int(x.denominator) == 1


def _residue(x):
    """x mod 1 in [0, 1)"""
    return x - QQ(_floor(x))


class VModel(MHSBaseModel):
    """Rational Jordan matrix A of the connection d/dt + A dt/t

    Serialised as ``{"A": matrix, "period_window": int}``; the jump set extends
    ``period_window`` past the largest |a_ii| on either side.
    """

    A: LinearMap  # noqa: N815
    period_window: int = 1

    @field_validator("A", mode="after")
    @classmethod
    def _rational(cls, value: LinearMap) -> LinearMap:
        return value.to_field(ScalarField.RATIONAL)

    @model_validator(mode="after")
    def _jordan(self):
        a = self.A
        if not a.is_square:
            raise DimensionMismatch(f"A has shape {a.shape}")
        if self.period_window < 0:
            raise ValueError("period_window must be nonnegative")
        for i in range(a.rows):
            for j in range(a.cols):
                x = a.entries[i][j]
                if j == i + 1 and x not in (QQ(0), QQ(1)):
                    raise ValueError(f"superdiagonal entry {x} is neither 0 nor 1")
                if j == i + 1 and x == QQ(1) and a.entries[i][i] != a.entries[j][j]:
                    raise ValueError(f"Jordan block broken at row {i}")
                if j not in {i, i + 1} and x != QQ(0):
                    raise ValueError(f"A is not in Jordan form at ({i}, {j})")
        return self

    @field_serializer("A")
    def _entries(self, a: LinearMap):
        return a.model_dump()["entries"]

    @property
    def dim(self) -> int:
        """Rank of the connection"""  # noqa: DOC201
        return self.A.rows

    @property
    def diagonal(self) -> tuple[Any, ...]:
        """The a_ii"""  # noqa: DOC201
        return tuple(self.A.entries[i][i] for i in range(self.dim))

    def sector_indices(self, alpha) -> list[int]:
        """The i with alpha + a_ii an integer"""  # noqa: DOC201
        alpha = parse_scalar(alpha, ScalarField.RATIONAL)
        return [i for i, a in enumerate(self.diagonal) if _is_integer(alpha + a)]

    def residues(self) -> list[Any]:
        """The distinct alpha in [0, 1) with a nonzero sector, ascending"""  # noqa: DOC201
        return sorted({_residue(-a) for a in self.diagonal})


class VSector(MHSBaseModel):
    """Gr^V_alpha with t d/dt and its nilpotent part N = t d/dt + alpha"""

    alpha: Any
    space: Subspace
    exponents: tuple[int, ...]
    tdt: LinearMap
    N: LinearMap  # noqa: N815

    @field_serializer("alpha")
    def _alpha(self, alpha) -> str:
        return format_scalar(alpha, ScalarField.RATIONAL)

    @property
    def dim(self) -> int:
        """Dimension"""  # noqa: DOC201
        return self.space.dim


def jump_set(m: VModel) -> list[tuple[Any, int]]:
    """The alpha where V_alpha jumps, with dim Gr^V_alpha as multiplicity

    Returns
    -------
    :
        (alpha, multiplicity) pairs, ascending, for |alpha| at most the largest
        |a_ii| plus the period window
    """
    if m.dim == 0:
        return []
    bound = max(abs(a) for a in m.diagonal) + QQ(m.period_window)
    jumps = []
    for r in m.residues():
        low, high = _floor(-bound - r), _floor(bound - r) + 1
        for j in range(low, high + 1):
            alpha = r + QQ(j)
            if -bound <= alpha <= bound:
                jumps.append((alpha, len(m.sector_indices(alpha))))
    jumps.sort(key=lambda pair: pair[0])
    return jumps


def gr_v(m: VModel, alpha) -> VSector:
    """The sector Gr^V_alpha

    Returns
    -------
    :
        The sector on the basis e_i t^{k_i}, zero if alpha is not a jump
    """
    alpha = parse_scalar(alpha, ScalarField.RATIONAL)
    indices = m.sector_indices(alpha)
    size = len(indices)
    exponents = tuple(_floor(-alpha - m.diagonal[i]) for i in indices)
    restricted = m.A.submatrix(indices, indices)
    # e_i t^k with k = -alpha - a_ii, so t d/dt acts as A + k on the sector
    tdt = LinearMap.build(
        (
            tuple(
                restricted.entries[i][j] + (QQ(exponents[i]) if i == j else QQ(0))
                for j in range(size)
            )
            for i in range(size)
        ),
        size,
        size,
        ScalarField.RATIONAL,
    )
    _, nilpotent = jordan_chevalley(tdt + LinearMap.identity(size).scale(alpha))
    return VSector(
        alpha=alpha,
        space=Subspace.standard(indices, m.dim),
        exponents=exponents,
        tdt=tdt,
        N=nilpotent,
    )


def can_map(m: VModel, alpha) -> LinearMap:
    """d/dt: Gr_alpha -> Gr_{alpha+1}"""  # noqa: DOC201
    return gr_v(m, alpha).tdt


def var_map(m: VModel, alpha) -> LinearMap:
    """t: Gr_{alpha+1} -> Gr_alpha"""  # noqa: DOC201
    return LinearMap.identity(gr_v(m, alpha).dim)


def var_adjust(c: LinearMap, v: LinearMap) -> LinearMap:
    """Var = v g(c v) with g(x) = log(1 + x) / x

    Returns
    -------
    :
        The rescaled variation, with c Var = log(I + c v)

    Raises
    ------
    NotUnipotent
        I + c v is not unipotent
    """
    x = c @ v
    if not is_nilpotent(x):
        raise NotUnipotent("I + c v is not unipotent")
    return v @ nilpotent_series(x, lambda k: QQ((-1) ** k, k + 1))


def var_from_Var(c: LinearMap, var: LinearMap) -> LinearMap:  # noqa: N802
    """v = Var h(c Var) with h(x) = (e^x - 1) / x, inverting ``var_adjust``

    Returns
    -------
    :
        The variation v

    Raises
    ------
    NotUnipotent
        c Var is not nilpotent
    """
    x = c @ var
    if not is_nilpotent(x):
        raise NotUnipotent("c Var is not nilpotent")
    return var @ nilpotent_series(x, lambda k: QQ(1, factorial(k + 1)))


def to_quiver(m: VModel) -> PerverseQuiver1D:
    """The sector graded quiver of the model

    On the unipotent sector c = d/dt: Gr_0 -> Gr_1 and v = var_from_Var(c, t),
    so that I + v c = exp(N). On a sector beta in (0, 1) psi and phi are both
    Gr_beta, c = t d/dt + 1 and v = 1, so that I + v c has the eigenvalue
    2 - beta, which stands in for the monodromy eigenvalue exp(-2 pi i beta).

    Returns
    -------
    :
        The quiver with one sector per residue
    """
    cs, vs, dims, alphas = [], [], [], []
    for r in m.residues():
        sector = gr_v(m, r)
        identity = LinearMap.identity(sector.dim)
        if r == QQ(0):
            c = can_map(m, r)
            v = var_from_Var(c, var_map(m, r))
        else:
            c = sector.tdt + identity
            v = identity
        cs.append(c)
        vs.append(v)
        dims.append(sector.dim)
        alphas.append(r)
    total = sum(dims)
    sectors, offset = [], 0
    for alpha, dim in zip(alphas, dims, strict=True):
        space = Subspace.standard(range(offset, offset + dim), total)
        sectors.append(Sector(alpha=alpha, psi=space, phi=space))
        offset += dim
    log.debug(f"quiver of a rank {m.dim} connection with sectors {alphas}")
    return PerverseQuiver1D(
        psi=total,
        phi=total,
        c=block_diagonal(*cs) if cs else LinearMap.zeros(0, 0),
        v=block_diagonal(*vs) if vs else LinearMap.zeros(0, 0),
        sectors=tuple(sectors),
    )


def _same(first: Subspace, second: Subspace) -> bool:
    field = common_field(first.field, second.field)
    return first.to_field(field) == second.to_field(field)


def check_hodge_sectors(m: VModel, hodge: dict[Any, Filtration]) -> CheckReport:
    """Compatibility of Hodge filtrations F_p on sectors with t and d/dt

    Filtrations are keyed by alpha and live on the sector coordinates. Wherever
    both sectors are given, t(F_p Gr_alpha) = F_p Gr_{alpha-1} for alpha < 1 and
    d/dt(F_p Gr_alpha) = F_{p+1} Gr_{alpha+1} for alpha >= 0.

    Returns
    -------
    :
        Clauses ``t`` and ``dt`` listing the failing (alpha, p)

    Raises
    ------
    DimensionMismatch
        A filtration does not live on its sector
    """
    hodge = {parse_scalar(a, ScalarField.RATIONAL): f for a, f in hodge.items()}
    for alpha, f in hodge.items():
        if f.ambient_dim != gr_v(m, alpha).dim:
            raise DimensionMismatch(
                f"filtration on {f.ambient_dim} for a sector of dimension "
                f"{gr_v(m, alpha).dim}"
            )
    t_fail, dt_fail = [], []
    for alpha, f in sorted(hodge.items(), key=lambda pair: pair[0]):
        lower = hodge.get(alpha - 1)
        upper = hodge.get(alpha + 1)
        window = f.window(1)
        if lower is not None and alpha < 1:
            t = var_map(m, alpha - 1)
            for p in window:
                if not _same(image_of(t, f.at(p)), lower.at(p)):
                    t_fail.append([format_scalar(alpha, ScalarField.RATIONAL), p])
        if upper is not None and alpha >= 0:
            dt = can_map(m, alpha)
            for p in window:
                if not _same(image_of(dt, f.at(p)), upper.at(p + 1)):
                    dt_fail.append([format_scalar(alpha, ScalarField.RATIONAL), p])
    return CheckReport.of(
        [
            Clause(name="t", passed=not t_fail, witness=t_fail),
            Clause(name="dt", passed=not dt_fail, witness=dt_fail),
        ]
    )
