"""Nilpotent Lie algebras with abelian complex structures.

A real Lie algebra is given by structure constants on a real basis together
with a rational matrix ``J``.  :func:`compile_model` derives the complex frame
``T_a = (X - iJX)/2`` and compiles the two generator tables that determine the
whole differential Gerstenhaber algebra:

* brackets of degree-one generators, ``[T, b] = i_T d b`` for a (0,1)-form ``b``;
* dbar on generators, ``dbar T = sum_b [conj(T_b), T]^{1,0} ^ conj(w^b)`` and
  ``dbar b = (d b)^{0,2}``.

Invariant forms satisfy ``d b(A, B) = -b([A, B])``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Mapping, Sequence

from . import linalg
from .errors import (
    ComplexStructureError,
    JacobiError,
    NonAbelianError,
    NotNilpotentError,
    ParseError,
    ValidationError,
)
from .exterior import Frame, GeneratorId, Multivector
from .scalars import ONE, ZERO, GaussianRational

StructureConstants = Mapping[tuple[int, int], Mapping[int, Fraction]]


def _bracket_real(c: StructureConstants, dim: int, u: Sequence, v: Sequence) -> list:
    """Bilinear extension of the bracket to coordinate vectors (any scalars)."""
    out = [0] * dim
    for (i, j), row in c.items():
        coef = u[i] * v[j] - u[j] * v[i]
        if not coef:
            continue
        for k, ck in row.items():
            out[k] = out[k] + coef * ck
    return out


def _unit(dim: int, i: int) -> list[Fraction]:
    v = [Fraction(0)] * dim
    v[i] = Fraction(1)
    return v


@dataclass(frozen=True)
class LieAlgebraSpec:
    """A real Lie algebra ``[e_i, e_j] = sum_k c^k_ij e_k``, stored for i < j.

    Jacobi and nilpotency are validated on construction.
    """

    dim: int
    basis_names: tuple[str, ...]
    structure_constants: Mapping[tuple[int, int], Mapping[int, Fraction]]
    name: str = ""
    frame_names: tuple[tuple[str, ...], tuple[str, ...]] | None = None
    nilpotency_step: int = field(init=False, compare=False, default=0)

    def __post_init__(self):
        if len(self.basis_names) != self.dim:
            raise ValidationError("basis_names must have length dim")
        clean: dict[tuple[int, int], dict[int, Fraction]] = {}
        for (i, j), row in self.structure_constants.items():
            if not (0 <= i < j < self.dim):
                raise ValidationError(f"structure constant key ({i}, {j}) must satisfy 0 <= i < j < dim")
            r = {}
            for k, ck in row.items():
                if not 0 <= k < self.dim:
                    raise ValidationError(f"output index {k} out of range")
                ck = Fraction(ck)
                if ck:
                    r[k] = ck
            if r:
                clean[(i, j)] = r
        object.__setattr__(self, "structure_constants", clean)
        self._check_jacobi()
        object.__setattr__(self, "nilpotency_step", self._lower_central_depth())

    def bracket(self, u: Sequence, v: Sequence) -> list:
        return _bracket_real(self.structure_constants, self.dim, u, v)

    def basis_bracket(self, i: int, j: int) -> list[Fraction]:
        return self.bracket(_unit(self.dim, i), _unit(self.dim, j))

    def _check_jacobi(self) -> None:
        n = self.dim
        for i, j, k in combinations(range(n), 3):
            ei, ej, ek = _unit(n, i), _unit(n, j), _unit(n, k)
            total = [0] * n
            for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                t = self.bracket(self.bracket(a, b), c)
                total = [x + y for x, y in zip(total, t)]
            if any(total):
                names = [self.basis_names[t] for t in (i, j, k)]
                raise JacobiError(names, total)

    def _lower_central_depth(self) -> int:
        """Number of steps s with g^{(s+1)} = 0 in the lower central series."""
        n = self.dim
        current = [_unit(n, i) for i in range(n)]
        step = 0
        while current:
            step += 1
            images = [
                [GaussianRational(x) for x in self.bracket(_unit(n, i), v)]
                for i in range(n)
                for v in current
            ]
            nxt = linalg.row_basis([v for v in images if any(v)])
            if len(nxt) == len(current):
                raise NotNilpotentError(
                    f"lower central series stabilizes at dimension {len(nxt)}"
                )
            current = [[x.re for x in v] for v in nxt]
        return step


@dataclass(frozen=True)
class ComplexStructureSpec:
    """A real endomorphism J with ``J[r][c]`` the e_r-coefficient of J(e_c)."""

    J: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Fraction(x) for x in row) for row in self.J)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ComplexStructureError("J must be a square matrix")
        object.__setattr__(self, "J", rows)
        for r in range(n):
            for c in range(n):
                s = sum(rows[r][k] * rows[k][c] for k in range(n))
                if s != (-1 if r == c else 0):
                    raise ComplexStructureError(f"J^2 != -I at entry ({r}, {c})")

    @property
    def dim(self) -> int:
        return len(self.J)

    def apply(self, v: Sequence) -> list:
        return [
            sum((self.J[r][c] * v[c] for c in range(self.dim) if v[c]), Fraction(0))
            for r in range(self.dim)
        ]


@dataclass(frozen=True, eq=False)
class AlgebraModel:
    """Generator-level tables of the differential Gerstenhaber algebra.

    Only nonzero entries are stored.  Two models are equal when their frames and
    tables agree exactly.
    """

    frame: Frame
    bracket_table: Mapping[tuple[GeneratorId, GeneratorId], Multivector]
    dbar_table: Mapping[GeneratorId, Multivector]
    name: str = ""
    kodaira_n: int | None = None
    nilpotency_step: int | None = None
    source: tuple[LieAlgebraSpec, ComplexStructureSpec] | None = None
    complex_frame: tuple[tuple[GaussianRational, ...], ...] | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __eq__(self, other):
        if not isinstance(other, AlgebraModel):
            return NotImplemented
        return (
            self.frame == other.frame
            and dict(self.bracket_table) == dict(other.bracket_table)
            and dict(self.dbar_table) == dict(other.dbar_table)
        )

    def __hash__(self):
        return id(self)

    @property
    def n_vectors10(self) -> int:
        return self.frame.rank

    def zero(self) -> Multivector:
        return Multivector.zero(self.frame)

    def gen(self, g: GeneratorId) -> Multivector:
        return Multivector.generator(self.frame, g)

    def generator_bracket(self, g: GeneratorId, h: GeneratorId) -> Multivector:
        """Bracket of two degree-one generators.

        Forms commute with forms; ``[b, T] = -[T, b]`` by graded antisymmetry.
        """
        key = (g, h)
        cached = self._cache.get(("gb", key))
        if cached is not None:
            return cached
        if not g.is_vector and not h.is_vector:
            out = self.zero()
        elif g.is_vector:
            out = self.bracket_table.get(key) or self.zero()
        elif h.is_vector:
            out = -(self.bracket_table.get((h, g)) or self.zero())
        self._cache[("gb", key)] = out
        return out

    def dbar_generator(self, g: GeneratorId) -> Multivector:
        return self.dbar_table.get(g) or self.zero()


# -- compilation ---------------------------------------------------------------


def _check_abelian(alg: LieAlgebraSpec, J: ComplexStructureSpec) -> None:
    n = alg.dim
    for i, j in combinations(range(n), 2):
        ei, ej = _unit(n, i), _unit(n, j)
        lhs = alg.bracket(J.apply(ei), J.apply(ej))
        rhs = alg.bracket(ei, ej)
        if lhs != rhs:
            raise NonAbelianError((alg.basis_names[i], alg.basis_names[j]))


def _default_complex_frame(alg: LieAlgebraSpec, J: ComplexStructureSpec) -> list[list[GaussianRational]]:
    """Greedy choice of T = (X - iJX)/2 over the real basis, in basis order."""
    n = alg.dim
    chosen: list[list[GaussianRational]] = []
    for a in range(n):
        x = _unit(n, a)
        jx = J.apply(x)
        t = [GaussianRational(x[r] / 2, -jx[r] / 2) for r in range(n)]
        if linalg.span_rank(chosen + [t]) > len(chosen):
            chosen.append(t)
        if len(chosen) == n // 2:
            break
    return chosen


def compile_model(
    alg: LieAlgebraSpec,
    J: ComplexStructureSpec,
    *,
    complex_frame: Sequence[Sequence[GaussianRational]] | None = None,
    names: tuple[Sequence[str], Sequence[str]] | None = None,
    name: str | None = None,
) -> AlgebraModel:
    """Compile the generator tables of a nilpotent algebra with abelian J.

    ``complex_frame`` optionally fixes the (1,0)-frame as complex coordinate
    vectors in the real basis; each must be a +i eigenvector of J.
    """
    if J.dim != alg.dim:
        raise ValidationError(f"J has size {J.dim} but the algebra has dimension {alg.dim}")
    if alg.dim % 2:
        raise ValidationError("a complex structure needs even real dimension")
    _check_abelian(alg, J)
    n = alg.dim
    m = n // 2

    if complex_frame is None:
        vecs = _default_complex_frame(alg, J)
    else:
        vecs = [[GaussianRational.coerce(x) for x in v] for v in complex_frame]
        for v in vecs:
            jv = J.apply(v)
            iv = [GaussianRational(-x.im, x.re) for x in v]
            if jv != iv:
                raise ValidationError("complex_frame vectors must satisfy J v = i v")
    if len(vecs) != m:
        raise ValidationError(f"expected {m} frame vectors, got {len(vecs)}")
    conj = [[x.conjugate() for x in v] for v in vecs]
    columns = vecs + conj
    P = linalg.transpose(columns)
    try:
        Pinv = linalg.inverse(P)
    except ZeroDivisionError:
        raise ValidationError("complex frame and its conjugate do not span") from None

    def coords(v):
        return linalg.matvec(Pinv, [GaussianRational.coerce(x) for x in v])

    if names is None:
        names = alg.frame_names
    if names is None:
        names = (tuple(f"V{a + 1}" for a in range(m)), tuple(f"ob{a + 1}" for a in range(m)))
    frame = Frame(tuple(names[0]), tuple(names[1]), ("generic",) * m, ("generic",) * m)

    def vec(a):
        return GeneratorId.vector(a)

    def form(a):
        return GeneratorId.form(a)

    bracket_acc: dict[tuple[GeneratorId, GeneratorId], dict] = {}
    dbar_acc: dict[GeneratorId, dict] = {}

    def put(acc, key, factors, c):
        if not c:
            return
        mv = Multivector.from_factors(frame, factors, c)
        acc[key] = acc[key] + mv if key in acc else mv

    for a in range(m):
        for b in range(m):
            z = coords(alg.bracket(vecs[a], conj[b]))
            for c in range(m):
                # dbar T_a = sum_b [conj T_b, T_a]^{1,0} ^ ob_b,  [conj T_b, T_a] = -[T_a, conj T_b]
                put(dbar_acc, vec(a), [vec(c), form(b)], -z[c])
                # [T_a, ob_c] = i_{T_a} d ob_c = sum_b d ob_c(T_a, conj T_b) ob_b
                put(bracket_acc, (vec(a), form(c)), [form(b)], -z[m + c])
    for a, b in combinations(range(m), 2):
        zz = coords(alg.bracket(conj[a], conj[b]))
        if any(zz[:m]):
            raise ValidationError("complex structure is not integrable")
        for c in range(m):
            put(dbar_acc, form(c), [form(a), form(b)], -zz[m + c])
        w = coords(alg.bracket(vecs[a], vecs[b]))
        if any(w):
            raise NonAbelianError((frame.vector_names[a], frame.vector_names[b]))

    bracket_table = {k: v for k, v in bracket_acc.items() if v}
    dbar_table = {k: v for k, v in dbar_acc.items() if v}
    model = AlgebraModel(
        frame=frame,
        bracket_table=bracket_table,
        dbar_table=dbar_table,
        name=name or alg.name or "compiled",
        nilpotency_step=alg.nilpotency_step,
        source=(alg, J),
        complex_frame=tuple(tuple(v) for v in vecs),
    )
    k = detect_kodaira(model)
    if k is not None:
        object.__setattr__(model, "kodaira_n", k)
    return model


# -- the primary Kodaira family ------------------------------------------------

HALF_I = GaussianRational(0, Fraction(1, 2))


def kodaira_frame(n: int) -> Frame:
    return Frame(
        tuple(f"T{j}" for j in range(1, n + 1)) + ("W",),
        tuple(f"ob{j}" for j in range(1, n + 1)) + ("orho",),
        ("T",) * n + ("W",),
        ("omegabar",) * n + ("rhobar",),
    )


def build_kodaira(n: int) -> AlgebraModel:
    """Tables of the (2n+2)-dimensional primary Kodaira algebra, written down directly.

    Generators T_1..T_n, W, ob_1..ob_n, orho with ``dbar T_j = -(i/2) W ^ ob_j``
    and ``[T_j, orho] = -(i/2) ob_j``; everything else vanishes.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    frame = kodaira_frame(n)
    W = GeneratorId.vector(n)
    rho = GeneratorId.form(n)
    bracket_table = {}
    dbar_table = {}
    for j in range(n):
        T, ob = GeneratorId.vector(j), GeneratorId.form(j)
        bracket_table[(T, rho)] = Multivector.from_factors(frame, [ob], -HALF_I)
        dbar_table[T] = Multivector.from_factors(frame, [W, ob], -HALF_I)
    alg, J = kodaira_spec(n)
    return AlgebraModel(
        frame=frame,
        bracket_table=bracket_table,
        dbar_table=dbar_table,
        name=f"kodaira:{n}",
        kodaira_n=n,
        nilpotency_step=2,
        source=(alg, J),
    )


def _table_terms(model: AlgebraModel):
    return (
        {k: dict(v.terms) for k, v in model.bracket_table.items()},
        {k: dict(v.terms) for k, v in model.dbar_table.items()},
    )


def detect_kodaira(model: AlgebraModel) -> int | None:
    """n if the model's tables coincide with the Kodaira tables, else None."""
    if model.kodaira_n:
        return model.kodaira_n
    n = model.frame.rank - 1
    if n < 1:
        return None
    return n if _table_terms(model) == _table_terms(build_kodaira(n)) else None


def kodaira_spec(n: int) -> tuple[LieAlgebraSpec, ComplexStructureSpec]:
    """Real basis X_1, Y_1, ..., X_n, Y_n, Z_1, Z_2 with [X_j, Y_j] = Z_1."""
    basis = []
    for j in range(1, n + 1):
        basis += [f"X{j}", f"Y{j}"]
    basis += ["Z1", "Z2"]
    dim = 2 * n + 2
    z1 = 2 * n
    consts = {(2 * j, 2 * j + 1): {z1: Fraction(1)} for j in range(n)}
    frame = kodaira_frame(n)
    alg = LieAlgebraSpec(
        dim, tuple(basis), consts, name=f"kodaira:{n}",
        frame_names=(frame.vector_names, frame.form_names),
    )
    return alg, standard_complex_structure(dim)


def standard_complex_structure(dim: int) -> ComplexStructureSpec:
    """J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}."""
    J = [[Fraction(0)] * dim for _ in range(dim)]
    for k in range(0, dim, 2):
        J[k + 1][k] = Fraction(1)
        J[k][k + 1] = Fraction(-1)
    return ComplexStructureSpec(tuple(tuple(r) for r in J))


def torus_spec(n: int) -> tuple[LieAlgebraSpec, ComplexStructureSpec]:
    """The abelian (2n+2)-dimensional algebra: a complex torus."""
    dim = 2 * n + 2
    basis = []
    for j in range(1, n + 2):
        basis += [f"X{j}", f"Y{j}"]
    return LieAlgebraSpec(dim, tuple(basis), {}, name=f"torus:{n}"), standard_complex_structure(dim)


# -- JSON algebra-spec files -----------------------------------------------------


def _index(value, basis: Sequence[str], what: str) -> int:
    if isinstance(value, bool):
        raise ParseError(f"{what}: expected an index or basis name, got {value!r}")
    if isinstance(value, int):
        if not 0 <= value < len(basis):
            raise ParseError(f"{what}: index {value} out of range")
        return value
    if isinstance(value, str) and value in basis:
        return basis.index(value)
    raise ParseError(f"{what}: unknown basis element {value!r}")


def _rational(value, what: str) -> Fraction:
    try:
        if isinstance(value, (int, str)) and not isinstance(value, bool):
            return Fraction(value)
    except (ValueError, ZeroDivisionError):
        pass
    raise ParseError(f"{what}: expected a rational string like 'p/q', got {value!r}")


def parse_algebra_spec(data: dict) -> tuple[LieAlgebraSpec, ComplexStructureSpec]:
    """Build (and validate) specs from the decoded JSON algebra-spec format."""
    try:
        dim = int(data["dim"])
        basis = [str(b) for b in data["basis"]]
        J_rows = data["J"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"algebra spec is missing a required field: {exc}") from exc
    consts: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pos, entry in enumerate(data.get("brackets", [])):
        where = f"brackets[{pos}]"
        i = _index(entry.get("i"), basis, where + ".i")
        j = _index(entry.get("j"), basis, where + ".j")
        if i == j:
            raise ParseError(f"{where}: [e, e] is identically zero; i == j not allowed")
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        row = consts.setdefault((i, j), {})
        for q, out in enumerate(entry.get("out", [])):
            k = _index(out.get("k"), basis, f"{where}.out[{q}].k")
            row[k] = row.get(k, Fraction(0)) + sign * _rational(out.get("coeff"), f"{where}.out[{q}].coeff")
    J = tuple(tuple(_rational(x, f"J[{r}]") for x in row) for r, row in enumerate(J_rows))
    names = None
    if "frame_names" in data:
        fn = data["frame_names"]
        names = (tuple(fn["vectors"]), tuple(fn["forms"]))
    alg = LieAlgebraSpec(dim, tuple(basis), consts, name=str(data.get("name", "")), frame_names=names)
    return alg, ComplexStructureSpec(J)


def load_algebra_spec(path: str | Path) -> tuple[LieAlgebraSpec, ComplexStructureSpec]:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_algebra_spec(data)


def algebra_spec_to_json(alg: LieAlgebraSpec, J: ComplexStructureSpec) -> dict:
    brackets = [
        {"i": i, "j": j, "out": [{"k": k, "coeff": str(c)} for k, c in sorted(row.items())]}
        for (i, j), row in sorted(alg.structure_constants.items())
    ]
    data = {
        "name": alg.name,
        "dim": alg.dim,
        "basis": list(alg.basis_names),
        "brackets": brackets,
        "J": [[str(x) for x in row] for row in J.J],
    }
    if alg.frame_names:
        data["frame_names"] = {"vectors": list(alg.frame_names[0]), "forms": list(alg.frame_names[1])}
    return data
