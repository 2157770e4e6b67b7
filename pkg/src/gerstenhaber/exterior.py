"""Sparse exterior algebra over a frame of (1,0)-vectors and (0,1)-forms.

Every generator has degree one.  A monomial is stored canonically as a pair
``(vectors, forms)`` of strictly increasing index tuples, all vectors before
all forms.  A :class:`Multivector` is a sparse map from monomials to
:class:`~gerstenhaber.scalars.GaussianRational` coefficients; zero
coefficients are never stored.
"""

from __future__ import annotations

import json
from bisect import bisect_left
from dataclasses import dataclass, field
from enum import IntEnum
from itertools import combinations
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import ModelMismatchError, ParseError
from .scalars import ONE, GaussianRational, Number


class Kind(IntEnum):
    VECTOR10 = 0
    FORM01 = 1


class GeneratorId(NamedTuple):
    kind: Kind
    index: int

    @classmethod
    def vector(cls, index: int) -> GeneratorId:
        return cls(Kind.VECTOR10, index)

    @classmethod
    def form(cls, index: int) -> GeneratorId:
        return cls(Kind.FORM01, index)

    @property
    def is_vector(self) -> bool:
        return self.kind == Kind.VECTOR10


class Monomial(NamedTuple):
    vectors: tuple[int, ...]
    forms: tuple[int, ...]

    @property
    def bidegree(self) -> tuple[int, int]:
        return len(self.vectors), len(self.forms)

    @property
    def degree(self) -> int:
        return len(self.vectors) + len(self.forms)

    def generators(self) -> tuple[GeneratorId, ...]:
        return tuple(GeneratorId.vector(a) for a in self.vectors) + tuple(
            GeneratorId.form(b) for b in self.forms
        )


UNIT = Monomial((), ())


@dataclass(frozen=True)
class Frame:
    """Names (and informational tags) of the generators of one algebra model.

    Generator ``GeneratorId(kind, k)`` is named ``vector_names[k]`` or
    ``form_names[k]``; form ``k`` is the conjugate dual of vector ``k``.
    """

    vector_names: tuple[str, ...]
    form_names: tuple[str, ...]
    vector_tags: tuple[str, ...] = field(default=(), compare=False)
    form_tags: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if len(self.vector_names) != len(self.form_names):
            raise ValueError("a frame needs as many (0,1)-forms as (1,0)-vectors")
        names = self.vector_names + self.form_names
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")

    @property
    def rank(self) -> int:
        """Complex dimension of g^{1,0}."""
        return len(self.vector_names)

    def generators(self) -> list[GeneratorId]:
        m = self.rank
        return [GeneratorId.vector(k) for k in range(m)] + [
            GeneratorId.form(k) for k in range(m)
        ]

    def name(self, g: GeneratorId) -> str:
        return (self.vector_names if g.is_vector else self.form_names)[g.index]

    def lookup(self, name: str) -> GeneratorId:
        if name in self.vector_names:
            return GeneratorId.vector(self.vector_names.index(name))
        if name in self.form_names:
            return GeneratorId.form(self.form_names.index(name))
        raise ParseError(f"unknown generator name {name!r}")

    def monomial_names(self, mono: Monomial) -> list[str]:
        return [self.name(g) for g in mono.generators()]

    def bidegree_basis(self, p: int, q: int) -> list[Monomial]:
        """All canonical monomials of bidegree (p, q), in canonical order."""
        m = self.rank
        return [
            Monomial(v, f)
            for v in combinations(range(m), p)
            for f in combinations(range(m), q)
        ]

    def monomials(self, max_degree: int | None = None) -> list[Monomial]:
        """All canonical monomials of total degree <= max_degree, by degree."""
        m = self.rank
        top = 2 * m if max_degree is None else min(max_degree, 2 * m)
        out = []
        for k in range(top + 1):
            for p in range(max(0, k - m), min(k, m) + 1):
                out.extend(self.bidegree_basis(p, k - p))
        return out


def _sort_key(g: GeneratorId) -> tuple[int, int]:
    return (int(g.kind), g.index)


def normalize_monomial(factors: Sequence[GeneratorId]) -> tuple[int, Monomial | None]:
    """Sort a wedge product of generators into canonical order.

    Returns ``(sign, monomial)`` where ``sign`` is the parity of the sorting
    permutation, or ``(0, None)`` if a generator repeats.
    """
    keys = [_sort_key(g) for g in factors]
    if len(set(keys)) != len(keys):
        return 0, None
    inversions = 0
    for i in range(len(keys)):
        ki = keys[i]
        for j in range(i + 1, len(keys)):
            if ki > keys[j]:
                inversions += 1
    keys.sort()
    vectors = tuple(i for kind, i in keys if kind == Kind.VECTOR10)
    forms = tuple(i for kind, i in keys if kind == Kind.FORM01)
    return (-1 if inversions & 1 else 1), Monomial(vectors, forms)


def _merge(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    """Sign and sorted union of ``x ^ y`` for two increasing index tuples."""
    if not x:
        return 1, y
    if not y:
        return 1, x
    inversions = 0
    for b in y:
        pos = bisect_left(x, b)
        if pos < len(x) and x[pos] == b:
            return 0, ()
        inversions += len(x) - pos
    return (-1 if inversions & 1 else 1), tuple(sorted(x + y))


def wedge_monomials(a: Monomial, b: Monomial) -> tuple[int, Monomial | None]:
    """``a ^ b`` for canonical monomials, as ``(sign, monomial)``."""
    # va fa vb fb -> va vb fa fb costs |fa||vb| transpositions
    sign = -1 if (len(a.forms) * len(b.vectors)) & 1 else 1
    s, vectors = _merge(a.vectors, b.vectors)
    if not s:
        return 0, None
    t, forms = _merge(a.forms, b.forms)
    if not t:
        return 0, None
    return sign * s * t, Monomial(vectors, forms)


class Multivector:
    """An immutable sparse element of the exterior algebra over a frame."""

    __slots__ = ("frame", "_terms", "_hash")

    def __init__(self, frame: Frame, terms: Mapping[Monomial, GaussianRational] | None = None):
        self.frame = frame
        self._terms = {}
        self._hash = None
        if terms:
            for mono, c in terms.items():
                c = GaussianRational.coerce(c)
                if c:
                    self._terms[mono] = c

    @classmethod
    def _from_clean(cls, frame: Frame, terms: dict) -> Multivector:
        mv = cls.__new__(cls)
        mv.frame = frame
        mv._terms = terms
        mv._hash = None
        return mv

    @classmethod
    def zero(cls, frame: Frame) -> Multivector:
        return cls._from_clean(frame, {})

    @classmethod
    def scalar(cls, frame: Frame, c: Number) -> Multivector:
        return cls(frame, {UNIT: GaussianRational.coerce(c)})

    @classmethod
    def monomial(cls, frame: Frame, mono: Monomial, c: Number = 1) -> Multivector:
        return cls(frame, {mono: GaussianRational.coerce(c)})

    @classmethod
    def generator(cls, frame: Frame, g: GeneratorId) -> Multivector:
        mono = Monomial((g.index,), ()) if g.is_vector else Monomial((), (g.index,))
        return cls._from_clean(frame, {mono: ONE})

    @classmethod
    def from_factors(cls, frame: Frame, factors: Sequence[GeneratorId], c: Number = 1) -> Multivector:
        sign, mono = normalize_monomial(factors)
        if not sign:
            return cls.zero(frame)
        return cls.monomial(frame, mono, GaussianRational.coerce(c) * sign)

    @classmethod
    def accumulate(cls, frame: Frame, pairs: Iterable[tuple[Monomial, GaussianRational]]) -> Multivector:
        acc: dict = {}
        for mono, c in pairs:
            _add_into(acc, mono, c)
        return cls._from_clean(frame, acc)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Monomial, GaussianRational]:
        return self._terms

    def items(self) -> list[tuple[Monomial, GaussianRational]]:
        """Terms sorted by (degree, vectors, forms)."""
        return sorted(self._terms.items(), key=lambda kv: (kv[0].degree, kv[0]))

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, mono: Monomial) -> GaussianRational:
        return self._terms.get(mono, GaussianRational())

    def bidegrees(self) -> set[tuple[int, int]]:
        return {m.bidegree for m in self._terms}

    def degrees(self) -> set[int]:
        return {m.degree for m in self._terms}

    def degree(self) -> int:
        """Total degree of a homogeneous element (0 for the zero element)."""
        ds = self.degrees()
        if len(ds) > 1:
            raise ValueError(f"inhomogeneous multivector with degrees {sorted(ds)}")
        return ds.pop() if ds else 0

    def part(self, p: int, q: int) -> Multivector:
        return Multivector._from_clean(
            self.frame, {m: c for m, c in self._terms.items() if m.bidegree == (p, q)}
        )

    def degree_part(self, k: int) -> Multivector:
        return Multivector._from_clean(
            self.frame, {m: c for m, c in self._terms.items() if m.degree == k}
        )

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: Multivector) -> None:
        if self.frame is not other.frame and self.frame != other.frame:
            raise ModelMismatchError("operands belong to different generator frames")

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        self._check(other)
        acc = dict(self._terms)
        for mono, c in other._terms.items():
            _add_into(acc, mono, c)
        return Multivector._from_clean(self.frame, acc)

    def __neg__(self):
        return Multivector._from_clean(self.frame, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        try:
            s = GaussianRational.coerce(scalar)
        except TypeError:
            return NotImplemented
        if not s:
            return Multivector.zero(self.frame)
        return Multivector._from_clean(self.frame, {m: c * s for m, c in self._terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * GaussianRational.coerce(scalar).inverse()

    def __xor__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self._terms == other._terms and (
            self.frame is other.frame or self.frame == other.frame
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.frame, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Multivector({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self.items():
            names = "^".join(self.frame.monomial_names(mono)) or "1"
            parts.append(f"{c}*{names}")
        return " + ".join(parts)

    # -- serialization ----------------------------------------------------

    def to_json(self) -> list[dict]:
        return [
            {"monomial": self.frame.monomial_names(mono), "coeff": c.to_string()}
            for mono, c in self.items()
        ]

    @classmethod
    def from_json(cls, frame: Frame, data: list[dict]) -> Multivector:
        pairs = []
        for entry in data:
            try:
                factors = [frame.lookup(n) for n in entry["monomial"]]
                coeff = GaussianRational.parse(entry["coeff"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"malformed multivector term {entry!r}") from exc
            sign, mono = normalize_monomial(factors)
            if sign:
                pairs.append((mono, coeff * sign))
        return cls.accumulate(frame, pairs)

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def _add_into(acc: dict, mono: Monomial, c: GaussianRational) -> None:
    prev = acc.get(mono)
    if prev is None:
        if c:
            acc[mono] = c
        return
    s = prev + c
    if s:
        acc[mono] = s
    else:
        del acc[mono]


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product, bilinear over canonical monomial concatenation."""
    a._check(b)
    acc: dict = {}
    for ma, ca in a._terms.items():
        for mb, cb in b._terms.items():
            sign, mono = wedge_monomials(ma, mb)
            if sign:
                c = ca * cb
                _add_into(acc, mono, c if sign > 0 else -c)
    return Multivector._from_clean(a.frame, acc)


def wedge_all(frame: Frame, factors: Iterable[Multivector]) -> Multivector:
    result = Multivector.scalar(frame, 1)
    for f in factors:
        result = wedge(result, f)
    return result
