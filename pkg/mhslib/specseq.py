# SPDX-FileCopyrightText: 2025-present The Bluemira Developers <https://github.com/Fusion-Power-Plant-Framework/bluemira>
#
# SPDX-License-Identifier: LGPL-2.1-or-later
"""
Spectral sequences of bounded filtered cochain complexes.

Filtrations F on complexes are decreasing. The page E_r^{p,q} is the
subquotient Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1}) of A^{p+q} with
Z_r^p = F^p cap d^{-1} F^{p+r}. Decalage uses
Dec(F)^p A^n = F^{p+n} A^n cap d^{-1} F^{p+n+1} A^{n+1}, and
E_1^{p,q}(Dec F) corresponds to E_2^{2p+q,-p}(F).
"""

from __future__ import annotations

import logging
from functools import cached_property
from typing import Any

from pydantic import model_serializer, model_validator
from sympy.polys.domains import QQ

from mhslib.base import (
    CheckReport,
    Clause,
    DimensionMismatch,
    FiltrationNotPreserved,
    MHSBaseModel,
    WellDefinednessViolation,
    parses_raw,
    required,
)
from mhslib.filtrations import Direction, Filtration
from mhslib.linalg.maps import LinearMap
from mhslib.linalg.subspaces import (
    Subquotient,
    Subspace,
    image,
    image_of,
    induced_on,
    intersect,
    kernel,
    preimage,
    subspace_sum,
)

__all__ = [
    "CochainComplex",
    "DoubleComplex",
    "FilteredComplex",
    "SpectralPage",
    "abutment_filtration",
    "chain_map_on_dec",
    "check_spectral_sequence",
    "decalage",
    "decalage_comparison",
    "e_infinity",
    "euler_characteristic",
    "is_filtered_quasi_isomorphism",
    "page",
    "strictness_check",
    "truncation_filtration",
]

log = logging.getLogger(__name__)

DECREASING = Direction.DECREASING


def _parse_differentials(data: dict) -> dict:
    dims = required(data, "dims", "complex")
    data["d"] = [
        {"rows": dims[i + 1], "cols": dims[i], "entries": m}
        if isinstance(m, list | tuple)
        else m
        for i, m in enumerate(data.get("d", ()))
    ]
    return data


class CochainComplex(MHSBaseModel):
    """A^{n_min} -> ... -> A^{n_max} over Q

    Serialised as ``{"degrees": [n_min, n_max], "dims", "d"}`` with d^n for
    n_min <= n < n_max.
    """

    degrees: tuple[int, int]
    dims: tuple[int, ...]
    d: tuple[LinearMap, ...] = ()

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse(cls, data):
        if isinstance(data, dict) and "dims" in data:
            data = _parse_differentials(dict(data))
        return data

    @model_validator(mode="after")
    def _complex(self):
        low, high = self.degrees
        if len(self.dims) != high - low + 1 or len(self.d) != max(high - low, 0):
            raise DimensionMismatch(
                f"degrees {self.degrees} with {len(self.dims)} spaces "
                f"and {len(self.d)} differentials"
            )
        for n in range(low, high):
            shape = (self.dim(n + 1), self.dim(n))
            if self.differential(n).shape != shape:
                raise DimensionMismatch(f"d^{n} has shape {self.differential(n).shape}")
        for n in range(low, high - 1):
            if not (self.differential(n + 1) @ self.differential(n)).is_zero():
                raise WellDefinednessViolation(f"d^{n + 1} d^{n} is not zero")
        return self

    @property
    def range(self) -> range:
        """The degrees"""  # noqa: DOC201
        return range(self.degrees[0], self.degrees[1] + 1)

    def dim(self, n: int) -> int:
        """dim A^n, zero outside the degrees"""  # noqa: DOC201
        return self.dims[n - self.degrees[0]] if n in self.range else 0

    def differential(self, n: int) -> LinearMap:
        """d^n: A^n -> A^{n+1}, zero outside the degrees"""  # noqa: DOC201
        if self.degrees[0] <= n < self.degrees[1]:
            return self.d[n - self.degrees[0]]
        return LinearMap.zeros(self.dim(n + 1), self.dim(n))

    def cohomology(self, n: int) -> Subquotient:
        """H^n = ker d^n / im d^{n-1}"""  # noqa: DOC201
        return Subquotient.of(
            kernel(self.differential(n)), image(self.differential(n - 1))
        )

    def underlying(self) -> CochainComplex:
        """The complex without any filtration"""  # noqa: DOC201
        return CochainComplex(degrees=self.degrees, dims=self.dims, d=self.d)


def _fill(data: dict, key: str, direction: Direction):
    dims = required(data, "dims", "complex")
    data[key] = [
        {"ambient_dim": dims[i], "direction": direction.value, **f}
        if isinstance(f, dict)
        else f
        for i, f in enumerate(required(data, key, "filtered complex"))
    ]


class FilteredComplex(CochainComplex):
    """Cochain complex with a decreasing filtration F and optional increasing W

    Serialised as ``{"degrees", "dims", "d", "F", "W"}`` with one filtration per
    degree.
    """

    F: tuple[Filtration, ...]  # noqa: N815
    W: tuple[Filtration, ...] | None = None  # noqa: N815

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse_filtrations(cls, data):
        if isinstance(data, dict) and "dims" in data:
            data = dict(data)
            _fill(data, "F", DECREASING)
            if data.get("W") is not None:
                _fill(data, "W", Direction.INCREASING)
        return data

    @model_validator(mode="after")
    def _filtered(self):
        for name, filtrations, increasing in (("F", self.F, False), ("W", self.W, True)):
            if filtrations is None:
                continue
            if len(filtrations) != len(self.dims):
                raise DimensionMismatch(f"{len(filtrations)} steps of {name}")
            for n, f in zip(self.range, filtrations, strict=True):
                if f.ambient_dim != self.dim(n) or f.increasing is not increasing:
                    raise DimensionMismatch(f"{name} in degree {n} is malformed")
            for n in range(self.degrees[0], self.degrees[1]):
                step = filtrations[n - self.degrees[0]]
                after = self.filtration(filtrations, n + 1)
                for k in step.window():
                    if not image_of(self.differential(n), step.at(k)) <= after.at(k):
                        raise FiltrationNotPreserved(
                            f"d^{n} does not preserve {name} at index {k}"
                        )
        return self

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        out = {
            "degrees": list(self.degrees),
            "dims": list(self.dims),
            "d": [m.model_dump() for m in self.d],
            "F": [f.model_dump() for f in self.F],
        }
        if self.W is not None:
            out["W"] = [w.model_dump() for w in self.W]
        return out

    def filtration(self, filtrations: tuple[Filtration, ...], n: int) -> Filtration:
        """The filtration in degree n, trivial on the zero space outside"""  # noqa: DOC201
        if n in self.range:
            return filtrations[n - self.degrees[0]]
        return Filtration.from_subspaces({}, 0, direction=filtrations[0].direction)

    def at(self, n: int, p: int) -> Subspace:
        """F^p A^n"""  # noqa: DOC201
        if n not in self.range:
            return Subspace.zero(0)
        return self.F[n - self.degrees[0]].at(p)

    @cached_property
    def p_range(self) -> tuple[int, int]:
        """Lowest and highest jump of F over all degrees"""  # noqa: DOC201
        jumps = [p for f in self.F for p in f.jumps()]
        return (min(jumps), max(jumps)) if jumps else (0, 0)

    @property
    def length(self) -> int:
        """Number of indices between the extreme jumps"""  # noqa: DOC201
        low, high = self.p_range
        return high - low + 1

    def with_filtration(self, filtrations: tuple[Filtration, ...]) -> FilteredComplex:
        """Same complex and W with another F"""  # noqa: DOC201
        return FilteredComplex(
            degrees=self.degrees, dims=self.dims, d=self.d, F=filtrations, W=self.W
        )


class SpectralPage(MHSBaseModel):
    """E_r with its differential d_r: E_r^{p,q} -> E_r^{p+r,q-r+1}

    Serialised as ``{"r", "terms": [{"p", "q", "dim"}]}``.
    """

    r: int
    terms: dict[tuple[int, int], Subquotient]
    differentials: dict[tuple[int, int], LinearMap]

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "r": self.r,
            "terms": [
                {"p": p, "q": q, "dim": dim}
                for (p, q), dim in sorted(self.dims().items())
            ],
        }

    def dims(self) -> dict[tuple[int, int], int]:
        """Nonzero dimensions keyed by (p, q)"""  # noqa: DOC201
        return {key: sq.dim for key, sq in self.terms.items() if sq.dim}

    def dim(self, p: int, q: int) -> int:
        """dim E_r^{p,q}"""  # noqa: DOC201
        term = self.terms.get((p, q))
        return term.dim if term is not None else 0

    def is_complex(self) -> bool:
        """Whether d_r d_r = 0"""  # noqa: DOC201
        for (p, q), first in self.differentials.items():
            second = self.differentials.get((p + self.r, q - self.r + 1))
            if second is not None and not (second @ first).is_zero():
                return False
        return True


def _z(c: FilteredComplex, n: int, p: int, r: int) -> Subspace:
    return intersect(c.at(n, p), preimage(c.differential(n), c.at(n + 1, p + r)))


def _term(c: FilteredComplex, n: int, p: int, r: int) -> Subquotient:
    boundaries = intersect(
        c.at(n, p), image_of(c.differential(n - 1), c.at(n - 1, p - r + 1))
    )
    quot = subspace_sum(_z(c, n, p + 1, r - 1), boundaries)
    return Subquotient.of(_z(c, n, p, r), quot)


def page(c: FilteredComplex, r: int) -> SpectralPage:
    """The page E_r

    Returns
    -------
    :
        Terms as subquotients of A^{p+q} with the induced differentials

    Raises
    ------
    ValueError
        r is negative
    """
    if r < 0:
        raise ValueError(f"page index {r} is negative")
    low, high = c.p_range
    terms = {
        (p, n - p): _term(c, n, p, r) for n in c.range for p in range(low, high + 1)
    }
    differentials = {}
    for (p, q), source in terms.items():
        n = p + q
        target = terms.get((p + r, q - r + 1))
        if target is None:
            target = _term(c, n + 1, p + r, r)
        differentials[p, q] = induced_on(c.differential(n), source, target)
    log.debug(f"E_{r}: {sum(t.dim for t in terms.values())} dimensions")
    return SpectralPage(r=r, terms=terms, differentials=differentials)


def e_infinity(c: FilteredComplex) -> SpectralPage:
    """The page past which all differentials vanish"""  # noqa: DOC201
    return page(c, c.length)


def euler_characteristic(e: SpectralPage) -> int:
    """Sum of (-1)^{p+q} dim E^{p,q}"""  # noqa: DOC201
    return sum((-1) ** (p + q) * d for (p, q), d in e.dims().items())


def abutment_filtration(c: FilteredComplex) -> dict[int, Filtration]:
    """F^p H^n = image of F^p A^n cap ker d^n, in the coordinates of H^n"""  # noqa: DOC201
    low, high = c.p_range
    out = {}
    for n in c.range:
        h = c.cohomology(n)
        out[n] = Filtration.from_subspaces(
            {p: h.project(c.at(n, p)) for p in range(low, high + 1)},
            h.dim,
            direction=DECREASING,
        )
    return out


def decalage(c: FilteredComplex) -> FilteredComplex:
    """The complex with Dec(F)^p A^n = F^{p+n} A^n cap d^{-1} F^{p+n+1} A^{n+1}"""  # noqa: DOC201
    low, high = c.p_range
    filtrations = []
    for n in c.range:
        steps = {p: _z(c, n, p + n, 1) for p in range(low - n - 1, high - n + 1)}
        filtrations.append(
            Filtration.from_subspaces(steps, c.dim(n), direction=DECREASING)
        )
    return c.with_filtration(tuple(filtrations))


def decalage_comparison(c: FilteredComplex) -> CheckReport:
    """Compare dim E_1^{p,q}(Dec F) with dim E_2^{2p+q,-p}(F)

    Returns
    -------
    :
        Clause ``decalage`` with the mismatched (p, q)
    """
    dec = page(decalage(c), 1).dims()
    e2 = page(c, 2).dims()
    reindexed = {(2 * p + q, -p): dim for (p, q), dim in dec.items()}
    keys = sorted(set(reindexed) | set(e2))
    mismatched = [list(k) for k in keys if reindexed.get(k, 0) != e2.get(k, 0)]
    return CheckReport.of(
        [Clause(name="decalage", passed=not mismatched, witness=mismatched)]
    )


def truncation_filtration(c: CochainComplex) -> FilteredComplex:
    """F^p = tau_{<= -p}: full below degree -p, cocycles in it, zero above"""  # noqa: DOC201
    filtrations = tuple(
        Filtration.from_subspaces(
            {-n - 1: Subspace.full(c.dim(n)), -n: kernel(c.differential(n))},
            c.dim(n),
            direction=DECREASING,
        )
        for n in c.range
    )
    return FilteredComplex(degrees=c.degrees, dims=c.dims, d=c.d, F=filtrations)


def _graded_complex(c: FilteredComplex, k: int):
    indices = range(c.degrees[0] - 1, c.degrees[1] + 2)
    pieces = {n: c.filtration(c.W, n).graded(k) for n in indices}
    differentials = {
        n: induced_on(c.differential(n), pieces[n], pieces[n + 1])
        for n in range(c.degrees[0] - 1, c.degrees[1] + 1)
    }
    hodge = {n: c.filtration(c.F, n).induced_on(pieces[n]) for n in pieces}
    return differentials, hodge


def strictness_check(c: FilteredComplex) -> CheckReport:
    """Whether H^i(F^p Gr^W_k A) -> H^i(Gr^W_k A) is injective for all i, p, k

    Without W the complex is its own single graded piece.

    Returns
    -------
    :
        Clause ``injective`` listing the failing [i, p, k]
    """
    if c.W is None:
        weights = tuple(Filtration.trivial(dim, 0) for dim in c.dims)
        c = FilteredComplex(degrees=c.degrees, dims=c.dims, d=c.d, F=c.F, W=weights)
    ks = sorted({k for w in c.W for k in w.jumps()})
    low, high = c.p_range
    failing = []
    for k in ks:
        differentials, hodge = _graded_complex(c, k)
        for i in c.range:
            before = differentials[i - 1]
            for p in range(low, high + 2):
                boundaries = image_of(before, hodge[i - 1].at(p))
                if boundaries != intersect(hodge[i].at(p), image(before)):
                    failing.append([i, p, k])
    return CheckReport.of(
        [Clause(name="injective", passed=not failing, witness=failing)]
    )


def _check_chain_map(f: tuple[LinearMap, ...], a: FilteredComplex, b: FilteredComplex):
    if a.degrees != b.degrees or len(f) != len(a.dims):
        raise DimensionMismatch("chain map and complexes have different degrees")
    for n, fn in zip(a.range, f, strict=True):
        if fn.shape != (b.dim(n), a.dim(n)):
            raise DimensionMismatch(f"f^{n} has shape {fn.shape}")
        following = f[n + 1 - a.degrees[0]] if n < a.degrees[1] else None
        if following is not None and (
            b.differential(n) @ fn != following @ a.differential(n)
        ):
            raise WellDefinednessViolation(f"f does not commute with d in degree {n}")


def is_filtered_quasi_isomorphism(
    f: tuple[LinearMap, ...], a: FilteredComplex, b: FilteredComplex
) -> CheckReport:
    """Whether a filtered chain map induces isomorphisms on every E_1^{p,q}

    Returns
    -------
    :
        Clauses ``filtered`` and ``e1_isomorphism``

    Raises
    ------
    DimensionMismatch
        Shapes do not match
    WellDefinednessViolation
        f is not a chain map
    """
    _check_chain_map(f, a, b)
    unfiltered = [
        [n, p]
        for n, fn in zip(a.range, f, strict=True)
        for p in a.F[n - a.degrees[0]].window()
        if not image_of(fn, a.at(n, p)) <= b.at(n, p)
    ]
    if unfiltered:
        return CheckReport.of(
            [
                Clause(name="filtered", passed=False, witness=unfiltered),
                Clause(name="e1_isomorphism", passed=False, witness="not filtered"),
            ]
        )
    low = min(a.p_range[0], b.p_range[0])
    high = max(a.p_range[1], b.p_range[1])
    failing = []
    for n, fn in zip(a.range, f, strict=True):
        for p in range(low, high + 1):
            source, target = _term(a, n, p, 1), _term(b, n, p, 1)
            induced = induced_on(fn, source, target)
            if induced.rows != induced.cols or not induced.is_invertible():
                failing.append([p, n - p])
    return CheckReport.of(
        [
            Clause(name="filtered", passed=True, witness=[]),
            Clause(name="e1_isomorphism", passed=not failing, witness=failing),
        ]
    )


def chain_map_on_dec(
    f: tuple[LinearMap, ...], a: FilteredComplex, b: FilteredComplex
) -> tuple[FilteredComplex, FilteredComplex]:
    """The Dec-filtered source and target of a filtered chain map

    Returns
    -------
    :
        (a, b) with Dec(F)

    Raises
    ------
    FiltrationNotPreserved
        f does not respect Dec(F)
    """
    _check_chain_map(f, a, b)
    dec_a, dec_b = decalage(a), decalage(b)
    for n, fn in zip(a.range, f, strict=True):
        for p in dec_a.F[n - a.degrees[0]].window():
            if not image_of(fn, dec_a.at(n, p)) <= dec_b.at(n, p):
                raise FiltrationNotPreserved(f"f^{n} does not preserve Dec(F)^{p}")
    return dec_a, dec_b


def check_spectral_sequence(c: FilteredComplex) -> CheckReport:
    """The invariants of the spectral sequence of c

    Returns
    -------
    :
        Clauses ``pages`` (every d_r squares to zero and E_{r+1} is the
        cohomology of E_r), ``stabilization``, ``euler``, ``abutment``
        (Gr of the abutment matches E_infinity), ``decalage`` and, when W is
        given, ``injective``
    """
    last = c.length + 1
    pages = [page(c, r) for r in range(last + 1)]
    bad_pages = []
    for e, following in zip(pages, pages[1:], strict=False):
        if not e.is_complex():
            bad_pages.append(e.r)
            continue
        for (p, q), term in following.terms.items():
            outgoing = e.differentials[p, q].rank()
            incoming = e.differentials.get((p - e.r, q + e.r - 1))
            expected = e.dim(p, q) - outgoing - (incoming.rank() if incoming else 0)
            if term.dim != expected:
                bad_pages.append(e.r)
                break
    euler = {e.r: euler_characteristic(e) for e in pages}
    infinity = pages[c.length].dims()
    graded = {}
    for n, f in abutment_filtration(c).items():
        for p, dim in f.graded_dims().items():
            graded[p, n - p] = dim
    return CheckReport.of(
        [
            Clause(name="pages", passed=not bad_pages, witness=bad_pages),
            Clause(
                name="stabilization",
                passed=pages[-1].dims() == infinity,
                witness=[[p, q, d] for (p, q), d in sorted(infinity.items())],
            ),
            Clause(name="euler", passed=len(set(euler.values())) <= 1, witness=euler),
            Clause(
                name="abutment",
                passed=graded == infinity,
                witness=[[p, q, d] for (p, q), d in sorted(graded.items())],
            ),
            *decalage_comparison(c),
            *(strictness_check(c) if c.W is not None else ()),
        ]
    )


class DoubleComplex(MHSBaseModel):
    """K^{a,b} with commuting d_h: K^{a,b} -> K^{a+1,b} and d_v: K^{a,b} -> K^{a,b+1}

    ``dims[i][j]`` is dim K^{a_min+i, b_min+j}; ``dh`` and ``dv`` are keyed by
    (a, b) and default to zero. The total differential is d_h + (-1)^a d_v.
    """

    columns: tuple[int, int]
    rows: tuple[int, int]
    dims: tuple[tuple[int, ...], ...]
    dh: dict[tuple[int, int], LinearMap] = {}
    dv: dict[tuple[int, int], LinearMap] = {}

    @model_validator(mode="before")
    @classmethod
    @parses_raw
    def _parse(cls, data):
        if not isinstance(data, dict):
            return data
        data = dict(data)
        for key in ("dh", "dv"):
            maps = data.get(key, {})
            if isinstance(maps, list):
                data[key] = {(m["a"], m["b"]): m["map"] for m in maps}
        return data

    @model_validator(mode="after")
    def _commuting(self):
        for (a, b), m in self.dh.items():
            if m.shape != (self.dim(a + 1, b), self.dim(a, b)):
                raise DimensionMismatch(f"d_h at {(a, b)} has shape {m.shape}")
        for (a, b), m in self.dv.items():
            if m.shape != (self.dim(a, b + 1), self.dim(a, b)):
                raise DimensionMismatch(f"d_v at {(a, b)} has shape {m.shape}")
        for a in range(self.columns[0], self.columns[1] + 1):
            for b in range(self.rows[0], self.rows[1] + 1):
                h, v = self.horizontal(a, b), self.vertical(a, b)
                if not (self.horizontal(a + 1, b) @ h).is_zero():
                    raise WellDefinednessViolation(f"d_h d_h is not zero at {(a, b)}")
                if not (self.vertical(a, b + 1) @ v).is_zero():
                    raise WellDefinednessViolation(f"d_v d_v is not zero at {(a, b)}")
                if self.vertical(a + 1, b) @ h != self.horizontal(a, b + 1) @ v:
                    raise WellDefinednessViolation(f"d_h and d_v differ at {(a, b)}")
        return self

    @model_serializer
    def _serialise(self) -> dict[str, Any]:
        return {
            "columns": list(self.columns),
            "rows": list(self.rows),
            "dims": [list(r) for r in self.dims],
            "dh": [
                {"a": a, "b": b, "map": m.model_dump()} for (a, b), m in self.dh.items()
            ],
            "dv": [
                {"a": a, "b": b, "map": m.model_dump()} for (a, b), m in self.dv.items()
            ],
        }

    def dim(self, a: int, b: int) -> int:
        """dim K^{a,b}, zero outside the rectangle"""  # noqa: DOC201
        i, j = a - self.columns[0], b - self.rows[0]
        if 0 <= i < len(self.dims) and 0 <= j < len(self.dims[i]):
            return self.dims[i][j]
        return 0

    def horizontal(self, a: int, b: int) -> LinearMap:
        """d_h at (a, b)"""  # noqa: DOC201
        return self.dh.get((a, b), LinearMap.zeros(self.dim(a + 1, b), self.dim(a, b)))

    def vertical(self, a: int, b: int) -> LinearMap:
        """d_v at (a, b)"""  # noqa: DOC201
        return self.dv.get((a, b), LinearMap.zeros(self.dim(a, b + 1), self.dim(a, b)))

    def pieces(self, n: int) -> list[tuple[int, int]]:
        """(a, b) with a + b = n in the rectangle, by ascending a"""  # noqa: DOC201
        return [
            (a, n - a)
            for a in range(self.columns[0], self.columns[1] + 1)
            if self.rows[0] <= n - a <= self.rows[1]
        ]

    def _offsets(self, n: int) -> dict[tuple[int, int], int]:
        offsets, offset = {}, 0
        for key in self.pieces(n):
            offsets[key] = offset
            offset += self.dim(*key)
        return offsets

    def total(self) -> CochainComplex:
        """Total complex with d = d_h + (-1)^a d_v"""  # noqa: DOC201
        low = self.columns[0] + self.rows[0]
        high = self.columns[1] + self.rows[1]
        dims = [
            sum(self.dim(*key) for key in self.pieces(n)) for n in range(low, high + 1)
        ]
        ds = []
        for n in range(low, high):
            source, target = self._offsets(n), self._offsets(n + 1)
            entries = [[QQ(0)] * dims[n - low] for _ in range(dims[n + 1 - low])]
            for (a, b), start in source.items():
                sign = QQ(-1 if a % 2 else 1)
                for (ta, tb), m in (
                    ((a + 1, b), self.horizontal(a, b)),
                    ((a, b + 1), self.vertical(a, b).scale(sign)),
                ):
                    if (ta, tb) not in target:
                        continue
                    row0 = target[ta, tb]
                    for i, row in enumerate(m.entries):
                        for j, x in enumerate(row):
                            entries[row0 + i][start + j] += x
            ds.append(
                LinearMap(rows=dims[n + 1 - low], cols=dims[n - low], entries=entries)
            )
        return CochainComplex(degrees=(low, high), dims=tuple(dims), d=tuple(ds))

    def _total_filtration(self, select) -> FilteredComplex:
        complex_ = self.total()
        filtrations = []
        for n in complex_.range:
            offsets = self._offsets(n)
            steps = {}
            for p, parts in select(n).items():
                vectors = []
                for key, space in parts.items():
                    width = self.dim(*key)
                    for v in space.basis:
                        vector = [QQ(0)] * complex_.dim(n)
                        vector[offsets[key] : offsets[key] + width] = v
                        vectors.append(vector)
                steps[p] = Subspace.span(vectors, complex_.dim(n))
            filtrations.append(
                Filtration.from_subspaces(steps, complex_.dim(n), direction=DECREASING)
            )
        return FilteredComplex(
            degrees=complex_.degrees,
            dims=complex_.dims,
            d=complex_.d,
            F=tuple(filtrations),
        )

    def column_filtration(self) -> FilteredComplex:
        """F^p = sum of the columns a >= p"""  # noqa: DOC201

        def select(n):
            return {
                p: {
                    (a, b): Subspace.full(self.dim(a, b))
                    for a, b in self.pieces(n)
                    if a >= p
                }
                for p in range(self.columns[0], self.columns[1] + 2)
            }

        return self._total_filtration(select)

    def leray_filtration(self) -> FilteredComplex:
        """L^p in degree n is the vertical truncation tau_{<= n-p}

        Rows b < n - p are kept whole, row n - p contributes the kernel of d_v.
        Its abutment is L^p H^n = image of H^n(tau_{<= n-p}).
        """  # noqa: DOC201

        def select(n):
            out = {}
            for p in range(n - self.rows[1] - 1, n - self.rows[0] + 2):
                parts = {}
                for a, b in self.pieces(n):
                    if b < n - p:
                        parts[a, b] = Subspace.full(self.dim(a, b))
                    elif b == n - p:
                        parts[a, b] = kernel(self.vertical(a, b))
                out[p] = parts
            return out

        return self._total_filtration(select)
