# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Polarizations of pure Hodge structures"""

from __future__ import annotations

import logging

from pydantic import model_validator

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    MHSBaseModel,
    NotHermitian,
    ParityViolation,
)
from mhslib.hodge.structures import MixedHodgeData, check_pure, hodge_decomposition
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.scalars import ScalarField, i_power
from mhslib.linalg.spectral import hermitian_is_positive_definite

__all__ = ["PolarizedCandidate", "check_polarization", "has_parity"]

log = logging.getLogger(__name__)


def has_parity(form: LinearMap, m: int) -> bool:
    """Whether Q(u, v) = (-1)^m Q(v, u)"""  # noqa: DOC201
    expected = form if m % 2 == 0 else -form
    return form.transpose() == expected


class PolarizedCandidate(MHSBaseModel):
    """A pure Hodge structure of weight m with a rational bilinear form Q

    Q(u, v) = u^T Q v.
    """

    hodge: MixedHodgeData
    Qform: LinearMap  # noqa: N815
    m: int

    @model_validator(mode="after")
    def _form(self):
        if self.Qform.shape != (self.hodge.dim, self.hodge.dim):
            raise DimensionMismatch(
                f"form of shape {self.Qform.shape} on dimension {self.hodge.dim}"
            )
        if not has_parity(self.Qform, self.m):
            raise ParityViolation(
                f"form is not {'symmetric' if self.m % 2 == 0 else 'alternating'}"
                f" as weight {self.m} requires"
            )
        return self


def check_polarization(c: PolarizedCandidate) -> CheckReport:
    """The Hodge-Riemann bilinear relations

    Pieces H^{pq}, H^{p'q'} must be Q-orthogonal unless p = q' and q = p', and
    u -> i^{p-q} Q(u, conj u) must be positive definite on every H^{pq}.

    Returns
    -------
    :
        Clauses ``pure``, ``orthogonality`` and ``positivity``
    """
    pure = check_pure(c.hodge, c.m)
    pure_clause = Clause(name="pure", passed=pure.passed, witness=pure.failed())
    if not pure:
        return CheckReport.of(
            [
                pure_clause,
                Clause(name="orthogonality", passed=False, witness="not pure"),
                Clause(name="positivity", passed=False, witness="not pure"),
            ]
        )
    form = c.Qform.to_field(ScalarField.GAUSSIAN)
    pieces = hodge_decomposition(c.hodge, c.m)
    non_orthogonal = []
    for (p, q), first in pieces.items():
        for (r, s), second in pieces.items():
            if (r, s) == (q, p):
                continue
            pairing = first.basis_matrix() @ form @ second.basis_matrix().transpose()
            if not pairing.is_zero():
                non_orthogonal.append([f"{p},{q}", f"{r},{s}"])
    values = {}
    indefinite = []
    for (p, q), piece in pieces.items():
        basis = piece.basis_matrix()
        gram = (basis @ form @ basis.adjoint()).scale(i_power(p - q))
        try:
            positive = hermitian_is_positive_definite(gram)
        except NotHermitian:
            positive = False
        if gram.rows == 1:
            values[f"{p},{q}"] = gram.model_dump()["entries"][0][0]
        if not positive:
            indefinite.append(f"{p},{q}")
    log.debug(f"polarization check on {len(pieces)} Hodge pieces")
    return CheckReport.of(
        [
            pure_clause,
            Clause(
                name="orthogonality",
                passed=not non_orthogonal,
                witness=non_orthogonal,
            ),
            Clause(
                name="positivity",
                passed=not indefinite,
                witness={"failing": indefinite, "values": values},
            ),
        ]
    )
