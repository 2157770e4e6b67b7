"""Bidegree-wise dbar cohomology and the harmonic / exact / Green splitting.

For each bidegree (p, q) write ``A`` for the matrix of dbar on g^{p,q} and
``B`` for dbar on g^{p,q-1}, both in canonical monomial bases.  Using the
standard Hermitian form in which monomials are orthonormal:

* ``D = im B`` (exact part),
* ``H = ker A`` intersected with ``ker B^H`` (closed and orthogonal to D),
* ``G = im A^H`` (orthogonal to ``ker A``, so dbar is injective on it).

The form is positive definite over Q(i), so ``g^{p,q} = H + D + G`` is an exact
direct sum.  No metric enters the definitions of cohomology itself; the form
only fixes the complements deterministically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from math import comb

from . import linalg
from .errors import BidegreeError, NotInImageError
from .exterior import Monomial, Multivector
from .lie import AlgebraModel
from .ops import dbar_monomial
from .scalars import ZERO, GaussianRational

Vector = list[GaussianRational]


def _check_range(model: AlgebraModel, p: int, q: int) -> None:
    m = model.frame.rank
    if not (0 <= p <= m and 0 <= q <= m + 1):
        raise BidegreeError(f"bidegree ({p}, {q}) is outside 0 <= p <= {m}, 0 <= q <= {m + 1}")


def basis(model: AlgebraModel, p: int, q: int) -> list[Monomial]:
    """Canonical monomial basis of g^{p,q}; empty when out of range."""
    m = model.frame.rank
    if p < 0 or q < 0 or p > m or q > m:
        return []
    return model.frame.bidegree_basis(p, q)


def dbar_matrix(model: AlgebraModel, p: int, q: int) -> list[list[GaussianRational]]:
    """Matrix of dbar: g^{p,q} -> g^{p,q+1}, rows indexed by the codomain basis."""
    _check_range(model, p, q)
    dom = basis(model, p, q)
    cod = basis(model, p, q + 1)
    index = {mono: r for r, mono in enumerate(cod)}
    mat = linalg.zeros(len(cod), len(dom))
    for c, mono in enumerate(dom):
        for out, coeff in dbar_monomial(model, mono).items():
            mat[index[out]][c] = coeff
    return mat


def to_vector(mv: Multivector, monos: list[Monomial]) -> Vector:
    return [mv.coefficient(mono) for mono in monos]


def from_vector(model: AlgebraModel, monos: list[Monomial], v: Vector) -> Multivector:
    return Multivector(model.frame, {mono: c for mono, c in zip(monos, v) if c})


@dataclass
class BidegreeSplit:
    p: int
    q: int
    monomials: list[Monomial]
    H: list[Vector]
    D: list[Vector]
    G: list[Vector]
    _coords: list[list[GaussianRational]] = field(repr=False, default_factory=list)
    # green solver for targets in g^{p,q+1}: coefficients over G = solve @ d
    _solve: list[list[GaussianRational]] = field(repr=False, default_factory=list)
    _consistency: list[list[GaussianRational]] = field(repr=False, default_factory=list)

    @property
    def dims(self) -> tuple[int, int, int, int]:
        return len(self.monomials), len(self.H), len(self.D), len(self.G)

    def decompose(self, v: Vector) -> tuple[Vector, Vector, Vector]:
        """Coordinates of v with respect to the concatenated basis H, D, G."""
        c = linalg.matvec(self._coords, v) if self._coords else []
        h, d = len(self.H), len(self.D)
        return c[:h], c[h:h + d], c[h + d:]


def _combine(vectors: list[Vector], coeffs: Vector, size: int) -> Vector:
    out = [ZERO] * size
    for vec, c in zip(vectors, coeffs):
        if c:
            out = [x + c * y for x, y in zip(out, vec)]
    return out


def _split_bidegree(model: AlgebraModel, p: int, q: int) -> BidegreeSplit:
    monos = basis(model, p, q)
    size = len(monos)
    A = dbar_matrix(model, p, q)
    B = dbar_matrix(model, p, q - 1) if q >= 1 else []
    # D = column space of B
    D = linalg.row_basis(linalg.transpose(B)) if B and B[0] else []
    # H = ker A  intersect  ker B^H
    constraints = [row for row in A]
    if D:
        constraints += [[x.conjugate() for x in col] for col in linalg.transpose(B)]
    H = linalg.nullspace(constraints, size) if size else []
    # G = row space of conj(A)
    G = linalg.row_basis([[x.conjugate() for x in row] for row in A]) if A else []
    split = BidegreeSplit(p, q, monos, H, D, G)
    if size:
        cols = H + D + G
        if len(cols) != size:
            raise AssertionError(f"splitting of g^{{{p},{q}}} is not a direct sum")
        split._coords = linalg.inverse(linalg.transpose(cols))
    if G:
        AG = linalg.transpose([linalg.matvec(A, g) for g in G])
        rows = len(AG)
        aug = [AG[r] + [GaussianRational(1) if s == r else ZERO for s in range(rows)] for r in range(rows)]
        red, pivots = linalg.rref(aug)
        k = len(G)
        if pivots[:k] != list(range(k)):
            raise AssertionError("dbar fails to be injective on the Green subspace")
        split._solve = [row[len(G):] for row in red[:k]]
        split._consistency = [row[len(G):] for row in red[k:]]
    return split


class HodgeSplit:
    """Harmonic, exact and Green bases for every g^{p,q} with p + q <= max degree."""

    def __init__(self, model: AlgebraModel, max_total_degree: int):
        self.model = model
        self.max_total_degree = max_total_degree
        m = model.frame.rank
        self.pieces: dict[tuple[int, int], BidegreeSplit] = {}
        for k in range(min(max_total_degree, 2 * m) + 1):
            for p in range(max(0, k - m), min(k, m) + 1):
                self.pieces[(p, k - p)] = _split_bidegree(model, p, k - p)

    def piece(self, p: int, q: int) -> BidegreeSplit:
        try:
            return self.pieces[(p, q)]
        except KeyError:
            raise BidegreeError(f"bidegree ({p}, {q}) is not covered by this split") from None

    def _mv(self, piece: BidegreeSplit, vectors: list[Vector]) -> list[Multivector]:
        return [from_vector(self.model, piece.monomials, v) for v in vectors]

    def H_basis(self, p: int, q: int) -> list[Multivector]:
        piece = self.piece(p, q)
        return self._mv(piece, piece.H)

    def D_basis(self, p: int, q: int) -> list[Multivector]:
        piece = self.piece(p, q)
        return self._mv(piece, piece.D)

    def G_basis(self, p: int, q: int) -> list[Multivector]:
        piece = self.piece(p, q)
        return self._mv(piece, piece.G)

    def components(self, a: Multivector) -> tuple[Multivector, Multivector, Multivector]:
        """The (H, D, G) components of ``a``, bidegree by bidegree."""
        zero = self.model.zero()
        h_tot, d_tot, g_tot = zero, zero, zero
        for p, q in sorted(a.bidegrees()):
            piece = self.piece(p, q)
            v = to_vector(a.part(p, q), piece.monomials)
            h, d, g = piece.decompose(v)
            size = len(piece.monomials)
            h_tot += from_vector(self.model, piece.monomials, _combine(piece.H, h, size))
            d_tot += from_vector(self.model, piece.monomials, _combine(piece.D, d, size))
            g_tot += from_vector(self.model, piece.monomials, _combine(piece.G, g, size))
        return h_tot, d_tot, g_tot

    def harmonic_project(self, a: Multivector) -> Multivector:
        return self.components(a)[0]

    def green_preimage(self, d: Multivector) -> Multivector:
        """The unique g in the Green subspace with dbar g = d."""
        h, _, g = self.components(d)
        if h or g:
            raise NotInImageError("element is not dbar-exact", harmonic_part=h)
        out = self.model.zero()
        for p, q in sorted(d.bidegrees()):
            if q == 0:
                continue
            src = self.piece(p, q - 1)
            target = to_vector(d.part(p, q), basis(self.model, p, q))
            coeffs = linalg.matvec(src._solve, target)
            out += from_vector(self.model, src.monomials, _combine(src.G, coeffs, len(src.monomials)))
        return out

    # -- reporting ----------------------------------------------------------

    def dimension_rows(self) -> list[dict]:
        return [
            {"p": p, "q": q, "dim_g": piece.dims[0], "dim_H": piece.dims[1],
             "dim_D": piece.dims[2], "dim_G": piece.dims[3]}
            for (p, q), piece in sorted(self.pieces.items(), key=lambda kv: (sum(kv[0]), kv[0]))
        ]

    def to_json(self) -> str:
        return json.dumps(self.dimension_rows(), sort_keys=True)

    def render_text(self) -> str:
        header = ("p", "q", "dim g", "dim H", "dim D", "dim G")
        rows = [header] + [
            tuple(str(r[k]) for k in ("p", "q", "dim_g", "dim_H", "dim_D", "dim_G"))
            for r in self.dimension_rows()
        ]
        widths = [max(len(r[i]) for r in rows) for i in range(len(header))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in rows)


def hodge_split(model: AlgebraModel, max_total_degree: int) -> HodgeSplit:
    return HodgeSplit(model, max_total_degree)


def green_preimage(split: HodgeSplit, d: Multivector) -> Multivector:
    return split.green_preimage(d)


def harmonic_project(split: HodgeSplit, a: Multivector) -> Multivector:
    return split.harmonic_project(a)


def euler_characteristics(split: HodgeSplit) -> dict[int, tuple[int, int]]:
    """Per p: (alternating sum of dim g^{p,q}, alternating sum of dim H^{p,q}) over q.

    Only meaningful when the split covers every q for that p.
    """
    m = split.model.frame.rank
    out = {}
    for p in range(m + 1):
        qs = [q for q in range(m + 1) if (p, q) in split.pieces]
        if len(qs) != m + 1:
            continue
        g = sum((-1) ** q * comb(m, p) * comb(m, q) for q in qs)
        h = sum((-1) ** q * len(split.pieces[(p, q)].H) for q in qs)
        out[p] = (g, h)
    return out
