# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Seeded pseudo-random problem instances.

Every generator draws small integers from ``numpy.random.default_rng(seed)``
and builds its instance from split data (direct sums of elementary pieces)
moved by a random change of basis that respects the structure, so that the
preconditions of the kind hold by construction.
"""

from __future__ import annotations

import logging
from collections.abc import Callable
from dataclasses import dataclass
from typing import Any

import numpy as np
from sympy.polys.domains import QQ, QQ_I

from mhslib.base import UnsupportedKind
from mhslib.filtrations import Direction, Filtration, direct_sum
from mhslib.hodge import (
    MixedHodgeData,
    MixedNilpotentOrbitData,
    NilpotentOrbitData,
    PolarizedCandidate,
    is_mixed_nilpotent_orbit,
)
from mhslib.linalg.maps import LinearMap, block_diagonal
from mhslib.linalg.scalars import ScalarField
from mhslib.linalg.subspaces import Subspace
from mhslib.problems import ProblemFile, ProblemKind
from mhslib.quivers import PerverseQuiver2D, from_local_system
from mhslib.specseq import FilteredComplex

__all__ = ["GENERATORS", "generate"]

log = logging.getLogger(__name__)

GAUSSIAN = ScalarField.GAUSSIAN
DECREASING = Direction.DECREASING
MAX_ATTEMPTS = 50


# integer matrix helpers


def _to_map(a: np.ndarray) -> LinearMap:
    rows, cols = a.shape
    return LinearMap.build(
        (tuple(QQ(int(x)) for x in row) for row in a), rows, cols, ScalarField.RATIONAL
    )


def _composition(rng: np.random.Generator, n: int, parts: int) -> list[int]:
    """n as an ordered sum of ``parts`` positive integers"""  # noqa: DOC201
    cuts = sorted(int(c) for c in rng.choice(np.arange(1, n), parts - 1, replace=False))
    bounds = [0, *cuts, n]
    return [b - a for a, b in zip(bounds, bounds[1:], strict=False)]


def _partition(rng: np.random.Generator, n: int) -> list[int]:
    """Random Jordan type of size n"""  # noqa: DOC201
    return _composition(rng, n, int(rng.integers(1, n + 1))) if n else []


def _block_unitriangular(rng: np.random.Generator, sizes: list[int]) -> LinearMap:
    """Identity diagonal blocks with small random integers above them"""  # noqa: DOC201
    n = sum(sizes)
    labels = np.repeat(np.arange(len(sizes)), sizes)
    upper = labels[:, None] < labels[None, :]
    a = np.where(upper, rng.integers(-2, 3, size=(n, n)), 0) + np.eye(n, dtype=int)
    return _to_map(a)


def _invertible(rng: np.random.Generator, n: int) -> LinearMap:
    """U L^T with U and L unitriangular, so of determinant one"""  # noqa: DOC201
    upper = _block_unitriangular(rng, [1] * n)
    lower = _block_unitriangular(rng, [1] * n).transpose()
    return upper @ lower


def _jordan(sizes: list[int], eigenvalue=None) -> LinearMap:
    blocks = []
    for size in sizes:
        a = np.eye(size, k=1, dtype=int)
        block = _to_map(a)
        if eigenvalue is not None:
            block += LinearMap.identity(size).scale(eigenvalue)
        blocks.append(block)
    return block_diagonal(*blocks)


def _conjugate(p: LinearMap, a: LinearMap) -> LinearMap:
    return p @ a @ p.inverse()


def _congruent(p: LinearMap, q: LinearMap) -> LinearMap:
    """The form moved along with p: P^{-T} Q P^{-1}"""  # noqa: DOC201
    inverse = p.inverse()
    return inverse.transpose() @ q @ inverse


# elementary Hodge pieces


@dataclass(frozen=True)
class _Piece:
    """A pure Hodge structure with its form and nilpotent on a few coordinates"""

    weight: int
    hodge: Filtration
    form: LinearMap
    N: LinearMap  # noqa: N815

    @property
    def dim(self) -> int:
        return self.hodge.ambient_dim

    @classmethod
    def tate(cls, p: int, scale: int = 1) -> _Piece:
        """Q(-p): one dimension of type (p, p)"""  # noqa: DOC201
        hodge = Filtration.trivial(1, p, GAUSSIAN, DECREASING)
        return cls(2 * p, hodge, _to_map(np.array([[scale]])), LinearMap.zeros(1, 1))

    @classmethod
    def curve(cls, p: int) -> _Piece:
        """Types (p+1, p) and (p, p+1) with F^{p+1} spanned by e1 + i e2"""  # noqa: DOC201
        top = Subspace.span([(QQ_I(1, 0), QQ_I(0, 1))], 2, GAUSSIAN)
        hodge = Filtration.from_subspaces(
            {p: Subspace.full(2, GAUSSIAN), p + 1: top}, 2, GAUSSIAN, DECREASING
        )
        form = _to_map(np.array([[0, 1], [-1, 0]]))
        return cls(2 * p + 1, hodge, form, LinearMap.zeros(2, 2))

    @classmethod
    def degenerate(cls, p: int) -> _Piece:
        """N e2 = e1 with F^{p+1} spanned by e2, the limit of a curve"""  # noqa: DOC201
        top = Subspace.standard([1], 2, GAUSSIAN)
        hodge = Filtration.from_subspaces(
            {p: Subspace.full(2, GAUSSIAN), p + 1: top}, 2, GAUSSIAN, DECREASING
        )
        form = _to_map(np.array([[0, -1], [1, 0]]))
        return cls(2 * p + 1, hodge, form, _to_map(np.array([[0, 1], [0, 0]])))


def _odd_pieces(rng: np.random.Generator, p: int, size: int) -> list[_Piece]:
    pieces = []
    for _ in range(max(1, size // 2)):
        if rng.random() < 0.5:  # noqa: PLR2004
            pieces.append(_Piece.degenerate(p))
        else:
            pieces.append(_Piece.curve(p))
    return pieces


def _weight(pieces: list[_Piece]) -> Filtration:
    return direct_sum(*(Filtration.trivial(x.dim, x.weight) for x in pieces))


def _hodge(pieces: list[_Piece]) -> Filtration:
    return direct_sum(*(x.hodge for x in pieces))


# generators


def _monodromy_filtration(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    n = int(rng.integers(1, dim + 1))
    nilpotent = _conjugate(_invertible(rng, n), _jordan(_partition(rng, n)))
    return {"N": nilpotent.model_dump(), "m": int(rng.integers(-2, 3))}


def _relative_monodromy(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    n = int(rng.integers(1, dim + 1))
    groups = int(rng.integers(1, min(3, n) + 1))
    sizes = _composition(rng, n, groups)
    weights = sorted(int(w) for w in rng.choice(np.arange(-2, 5), groups, replace=False))
    nilpotent = block_diagonal(*(_jordan(_partition(rng, s)) for s in sizes))
    weight = direct_sum(
        *(Filtration.trivial(s, w) for s, w in zip(sizes, weights, strict=True))
    )
    moved = _conjugate(_block_unitriangular(rng, sizes), nilpotent)
    return {"W": weight.model_dump(), "N": moved.model_dump()}


def _mhs_check(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    pieces, left = [], int(rng.integers(1, dim + 1))
    while left > 0:
        p = int(rng.integers(-1, 2))
        if left >= 2 and rng.random() < 0.5:  # noqa: PLR2004
            pieces.append(_Piece.curve(p))
        else:
            pieces.append(_Piece.tate(p))
        left -= pieces[-1].dim
    pieces.sort(key=lambda x: x.weight)
    move = _block_unitriangular(rng, [x.dim for x in pieces])
    n = sum(x.dim for x in pieces)
    hodge = MixedHodgeData(
        dim=n, W=_weight(pieces), F=_hodge(pieces).transported(move)
    )
    return {"hodge": hodge.model_dump(mode="json")}


def _polarization(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    m = int(rng.integers(-1, 3))
    if m % 2:
        pieces = [_Piece.curve((m - 1) // 2) for _ in range(max(1, dim // 2))]
    else:
        pieces = [
            _Piece.tate(m // 2, int(rng.integers(1, 4)))
            for _ in range(int(rng.integers(1, dim + 1)))
        ]
    n = sum(x.dim for x in pieces)
    move = _invertible(rng, n)
    candidate = PolarizedCandidate(
        hodge=MixedHodgeData.pure(m, _hodge(pieces).transported(move)),
        Qform=_congruent(move, block_diagonal(*(x.form for x in pieces))),
        m=m,
    )
    return candidate.model_dump(mode="json")


def _scaled_nilpotents(
    rng: np.random.Generator, pieces: list[_Piece], variables: int
) -> tuple[LinearMap, ...]:
    """N_i on each piece as a_i N with (a_1, a_2) in {(1, 0), (0, 1), (1, 1)}"""  # noqa: DOC201
    if variables == 1:
        return (block_diagonal(*(x.N for x in pieces)),)
    patterns = ((1, 0), (0, 1), (1, 1))
    chosen = [patterns[int(rng.integers(0, 3))] for _ in pieces]
    return tuple(
        block_diagonal(
            *(x.N.scale(QQ(c[i])) for x, c in zip(pieces, chosen, strict=True))
        )
        for i in range(variables)
    )


def _nilpotent_orbit(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    p = int(rng.integers(-1, 2))
    pieces = _odd_pieces(rng, p, dim)
    pieces[0] = _Piece.degenerate(p)
    n = sum(x.dim for x in pieces)
    move = _invertible(rng, n)
    ns = _scaled_nilpotents(rng, pieces, int(rng.integers(1, 3)))
    orbit = NilpotentOrbitData(
        H=MixedHodgeData.pure(2 * p + 1, _hodge(pieces).transported(move)),
        m=2 * p + 1,
        Ns=tuple(_conjugate(move, a) for a in ns),
        Qform=_congruent(move, block_diagonal(*(x.form for x in pieces))),
    )
    return orbit.model_dump(mode="json")


def _mixed_candidate(
    rng: np.random.Generator, dim: int, variables: int
) -> MixedNilpotentOrbitData:
    groups: list[list[_Piece]] = []
    left = dim
    count = int(rng.integers(1, 4))
    for weight in sorted(
        int(w) for w in rng.choice(np.arange(-1, 4), count, replace=False)
    ):
        if left <= 0:
            break
        if weight % 2:
            group = _odd_pieces(rng, (weight - 1) // 2, min(left, 4))
        else:
            group = [_Piece.tate(weight // 2) for _ in range(int(rng.integers(1, 3)))]
        groups.append(group)
        left -= sum(x.dim for x in group)
    pieces = [x for group in groups for x in group]
    sizes = [sum(x.dim for x in group) for group in groups]
    move = _block_unitriangular(rng, sizes)
    forms = {
        group[0].weight: block_diagonal(*(x.form for x in group)) for group in groups
    }
    return MixedNilpotentOrbitData(
        H=MixedHodgeData(
            dim=sum(sizes), W=_weight(pieces), F=_hodge(pieces).transported(move)
        ),
        Ns=tuple(
            _conjugate(move, a) for a in _scaled_nilpotents(rng, pieces, variables)
        ),
        graded_forms=forms,
    )


def mixed_orbit_instance(
    rng: np.random.Generator, dim: int, variables: int | None = None
) -> MixedNilpotentOrbitData:
    """A mixed nilpotent orbit, rejection-sampled on its checker

    Returns
    -------
    :
        The first candidate passing ``is_mixed_nilpotent_orbit``

    Raises
    ------
    ValueError
        No candidate passed
    """
    for attempt in range(MAX_ATTEMPTS):
        count = int(rng.integers(1, 3)) if variables is None else variables
        candidate = _mixed_candidate(rng, dim, count)
        if is_mixed_nilpotent_orbit(candidate):
            log.debug(f"mixed orbit accepted after {attempt + 1} draws")
            return candidate
    raise ValueError(f"no mixed nilpotent orbit in {MAX_ATTEMPTS} draws")


def _mixed_orbit(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    return mixed_orbit_instance(rng, dim).model_dump(mode="json")


def _commuting_unipotent_parts(
    rng: np.random.Generator, n: int
) -> tuple[LinearMap, LinearMap]:
    """A = X and B = X^2 + bX with I + A and I + B invertible"""  # noqa: DOC201
    identity = LinearMap.identity(n)
    for _ in range(MAX_ATTEMPTS):
        x = _to_map(rng.integers(-1, 2, size=(n, n)))
        a = x
        b = x @ x + x.scale(QQ(int(rng.integers(-1, 2))))
        if (identity + a).is_invertible() and (identity + b).is_invertible():
            return a, b
    return LinearMap.zeros(n, n), LinearMap.zeros(n, n)


def _quiver(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    n = int(rng.integers(1, dim + 1))
    a, b = _commuting_unipotent_parts(rng, n)
    if rng.random() < 0.5:  # noqa: PLR2004
        variant = "full_direct_image" if rng.random() < 0.5 else "middle_extension"  # noqa: PLR2004
        quiver = from_local_system(LinearMap.identity(n) + a, variant)
    else:
        identity = LinearMap.identity(n)
        quiver = PerverseQuiver2D(
            v11=n,
            v12=n,
            v21=n,
            v22=n,
            c1_top=a,
            v1_top=identity,
            c1_bot=a,
            v1_bot=identity,
            c2_left=b,
            v2_left=identity,
            c2_right=b,
            v2_right=identity,
        )
    return {"quiver": quiver.model_dump(mode="json")}


def _tilde_w(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    return mixed_orbit_instance(rng, dim).model_dump(mode="json")


def _vfilt(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    n = int(rng.integers(1, dim + 1))
    blocks = []
    for size in _partition(rng, n):
        denominator = int(rng.choice([1, 2, 3, 4]))
        numerator = int(rng.integers(-2 * denominator, 2 * denominator + 1))
        blocks.append(_jordan([size], QQ(numerator, denominator)))
    return {"A": block_diagonal(*blocks).model_dump()["entries"], "period_window": 1}


def _specseq(rng: np.random.Generator, dim: int) -> dict[str, Any]:
    top = int(rng.integers(1, 3))
    steps = int(rng.integers(1, 5))
    levels: list[list[int]] = [[] for _ in range(top + 1)]
    arrows = []
    for n in range(top):
        for _ in range(int(rng.integers(0, 3))):
            if len(levels[n]) >= dim or len(levels[n + 1]) >= dim:
                break
            p = int(rng.integers(0, steps))
            q = int(rng.integers(p, steps))
            arrows.append((n, len(levels[n]), len(levels[n + 1])))
            levels[n].append(p)
            levels[n + 1].append(q)
    for n in range(top + 1):
        if len(levels[n]) < dim and rng.random() < 0.5:  # noqa: PLR2004
            levels[n].append(int(rng.integers(0, steps)))
    # order each degree by descending level so that F^p is a coordinate flag
    orders = [sorted(range(len(lv)), key=lambda i, lv=lv: -lv[i]) for lv in levels]
    position = [{old: new for new, old in enumerate(order)} for order in orders]
    dims = [len(lv) for lv in levels]
    differentials = []
    for n in range(top):
        a = np.zeros((dims[n + 1], dims[n]), dtype=int)
        for degree, src, dst in arrows:
            if degree == n:
                a[position[n + 1][dst], position[n][src]] = 1
        differentials.append(_to_map(a))
    filtrations = []
    for n in range(top + 1):
        ordered = sorted(levels[n], reverse=True)
        filtrations.append(
            Filtration.from_subspaces(
                {
                    p: Subspace.standard(range(sum(v >= p for v in ordered)), dims[n])
                    for p in range(steps)
                },
                dims[n],
                direction=DECREASING,
            )
        )
    moves = [_block_unitriangular(rng, [1] * d) for d in dims]
    moved = [
        moves[n + 1] @ differentials[n] @ moves[n].inverse() for n in range(top)
    ]
    complex_ = FilteredComplex(
        degrees=(0, top), dims=tuple(dims), d=tuple(moved), F=tuple(filtrations)
    )
    return {"complex": complex_.model_dump(mode="json")}


GENERATORS: dict[ProblemKind, Callable[[np.random.Generator, int], dict[str, Any]]] = {
    ProblemKind.MHS_CHECK: _mhs_check,
    ProblemKind.POLARIZATION: _polarization,
    ProblemKind.MONODROMY_FILTRATION: _monodromy_filtration,
    ProblemKind.RELATIVE_MONODROMY: _relative_monodromy,
    ProblemKind.NILPOTENT_ORBIT: _nilpotent_orbit,
    ProblemKind.MIXED_ORBIT: _mixed_orbit,
    ProblemKind.QUIVER: _quiver,
    ProblemKind.TILDE_W: _tilde_w,
    ProblemKind.VFILT: _vfilt,
    ProblemKind.SPECSEQ: _specseq,
}


def generate(kind: ProblemKind | str, seed: int, dim: int = 4) -> ProblemFile:
    """A deterministic instance of the given kind

    Returns
    -------
    :
        The problem; the same kind, seed and dim give the same problem

    Raises
    ------
    UnsupportedKind
        Unknown kind
    ValueError
        dim is not positive
    """
    try:
        kind = ProblemKind(kind)
    except ValueError:
        raise UnsupportedKind(f"unsupported problem kind '{kind}'") from None
    if dim < 1:
        raise ValueError(f"dimension bound {dim} must be positive")
    rng = np.random.default_rng(seed)
    payload = GENERATORS[kind](rng, dim)
    log.debug(f"generated {kind.value} instance with seed {seed}")
    return ProblemFile(kind=kind, payload=payload)
