# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""Exact linear algebra over Q and Q(i)"""

from mhslib.linalg.maps import LinearMap, block_diagonal, hstack, vstack
from mhslib.linalg.scalars import ScalarField
from mhslib.linalg.spectral import (
    eigenvalues,
    exp_nilpotent,
    generalized_eigenspace,
    hermitian_is_positive_definite,
    is_nilpotent,
    jordan_chevalley,
    log_unipotent,
    nilpotency_index,
)
from mhslib.linalg.subspaces import (
    Subquotient,
    Subspace,
    image,
    image_of,
    induced_map,
    induced_on,
    intersect,
    kernel,
    preimage,
    solve,
    subspace_sum,
)

__all__ = [
    "LinearMap",
    "ScalarField",
    "Subquotient",
    "Subspace",
    "block_diagonal",
    "eigenvalues",
    "exp_nilpotent",
    "generalized_eigenspace",
    "hermitian_is_positive_definite",
    "hstack",
    "image",
    "image_of",
    "induced_map",
    "induced_on",
    "intersect",
    "is_nilpotent",
    "jordan_chevalley",
    "kernel",
    "log_unipotent",
    "nilpotency_index",
    "preimage",
    "solve",
    "subspace_sum",
    "vstack",
]
