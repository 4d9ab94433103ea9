# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
from pathlib import Path

import numpy as np

from mhslib.filtrations import Filtration
from mhslib.linalg import LinearMap, ScalarField, Subspace, block_diagonal

DATA = Path(__file__).parent / "data"

I = {"re": 0, "im": 1}  # noqa: E741


def gaussian(re, im):
    return {"re": re, "im": im}


def mat(*rows) -> LinearMap:
    return LinearMap.model_validate([list(r) for r in rows])


def eye(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def span(n: int, *vectors, field=ScalarField.RATIONAL) -> Subspace:
    return Subspace(ambient_dim=n, field=field, basis=[list(v) for v in vectors])


def increasing(n: int, steps: dict) -> Filtration:
    return Filtration.model_validate({
        "ambient_dim": n,
        "steps": [{"index": k, "basis": b} for k, b in steps.items()],
    })


def decreasing(n: int, steps: dict) -> Filtration:
    return Filtration.model_validate({
        "ambient_dim": n,
        "field": "Q(i)",
        "direction": "decreasing",
        "steps": [{"index": k, "basis": b} for k, b in steps.items()],
    })


def jordan_type(rng: np.random.Generator, n: int, eigenvalues) -> list[tuple]:
    """Random (eigenvalue, size) blocks of total size n"""
    blocks = []
    while n > 0:
        size = int(rng.integers(1, n + 1))
        blocks.append((eigenvalues[int(rng.integers(len(eigenvalues)))], size))
        n -= size
    return blocks


def jordan_matrix(blocks: list[tuple]) -> LinearMap:
    return block_diagonal(*(
        mat(*(
            [lam if i == j else int(j == i + 1) for j in range(size)]
            for i in range(size)
        ))
        for lam, size in blocks
    ))


def conjugated(rng: np.random.Generator, a: LinearMap) -> LinearMap:
    """P a P^-1 with P a product of random unitriangular integer matrices"""
    n = a.rows
    upper = np.triu(rng.integers(-2, 3, size=(n, n)), 1) + np.eye(n, dtype=int)
    lower = np.tril(rng.integers(-2, 3, size=(n, n)), -1) + np.eye(n, dtype=int)
    p = mat(*(upper @ lower).tolist())
    return p @ a @ p.inverse()
