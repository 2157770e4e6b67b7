"""Kuranishi recursion for the Maurer-Cartan equation, with Chen-vector tracking.

Starting from a harmonic degree-2 seed ``Gamma_1``, each order m >= 2 sets

    R_m = 1/2 sum_{k+l=m} [Gamma_k, Gamma_l]
    chen_m = -harmonic(R_m)
    Gamma_m = -green(R_m + chen_m)

so that ``dbar Gamma_m + R_m + chen_m = 0``.  Closedness of ``R_m`` is
checked at every order rather than assumed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cohomology import HodgeSplit
from .elements import KodairaElements
from .errors import (
    InconsistentResidualError,
    NonKodairaModelError,
    ObstructedSeriesError,
    ParseError,
    PreconditionError,
    SingularParameterError,
)
from .exterior import Multivector, wedge
from .lie import AlgebraModel
from .ops import dbar, maurer_cartan_residual, schouten
from .scalars import ONE, ZERO, GaussianRational

HALF = GaussianRational("1/2")


# -- the series -------------------------------------------------------------------


@dataclass
class MCSeries:
    model: AlgebraModel
    terms: list[Multivector]
    chen: list[Multivector] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.terms)

    def gamma(self, m: int) -> Multivector:
        """Gamma_m, 1-based."""
        return self.terms[m - 1]

    def chen_vector(self, m: int) -> Multivector:
        """The Chen vector at order m >= 2."""
        return self.chen[m - 2]

    def unobstructed(self) -> bool:
        return not any(self.chen)

    def residual(self, m: int) -> Multivector:
        return _residual(self.model, self.terms, m)

    def invariant_failures(self, split: HodgeSplit) -> list[str]:
        """Orders (and reasons) at which the series invariants fail."""
        bad = []
        for m in range(2, self.order + 1):
            g, c = self.gamma(m), self.chen_vector(m)
            if dbar(self.model, g) + self.residual(m) + c:
                bad.append(f"order {m}: recursion equation")
            if split.harmonic_project(c) != c:
                bad.append(f"order {m}: Chen vector not harmonic")
            h, d, _ = split.components(g)
            if h or d:
                bad.append(f"order {m}: term not in the Green subspace")
        return bad

    def to_json(self) -> dict:
        return {
            "terms": {str(m): self.gamma(m).to_json() for m in range(1, self.order + 1)},
            "chen": {str(m): self.chen_vector(m).to_json() for m in range(2, self.order + 1)},
        }


def _residual(model: AlgebraModel, terms: Sequence[Multivector], m: int) -> Multivector:
    # degree-2 elements bracket symmetrically, so pair k < l twice
    out = model.zero()
    for k in range(1, (m - 1) // 2 + 1):
        out += schouten(model, terms[k - 1], terms[m - k - 1])
    if m % 2 == 0:
        half = terms[m // 2 - 1]
        out += schouten(model, half, half) * HALF
    return out


def kuranishi_solve(model: AlgebraModel, split: HodgeSplit, gamma1: Multivector, order: int) -> MCSeries:
    if order < 1:
        raise PreconditionError("order must be at least 1")
    if split.model is not model and split.model != model:
        raise PreconditionError("Hodge split was computed for a different model")
    if gamma1 and gamma1.degrees() != {2}:
        raise PreconditionError("the seed must be homogeneous of total degree 2")
    if order >= 2 and split.max_total_degree < 3:
        raise PreconditionError("the Hodge split must cover total degree 3")
    if split.harmonic_project(gamma1) != gamma1:
        raise PreconditionError("the seed is not harmonic")

    series = MCSeries(model, [gamma1])
    for m in range(2, order + 1):
        r = _residual(model, series.terms, m)
        if dbar(model, r):
            if not series.unobstructed():
                raise ObstructedSeriesError(
                    f"residual at order {m} is not closed after an earlier obstruction", series
                )
            raise InconsistentResidualError(
                f"residual at order {m} is not dbar-closed; bracket or sign tables are inconsistent"
            )
        chen = -split.harmonic_project(r)
        series.chen.append(chen)
        series.terms.append(-split.green_preimage(r + chen))
    return series


# -- Kodaira seed parameters --------------------------------------------------------


@dataclass(frozen=True)
class KodairaSeedParams:
    """Coefficients of a harmonic degree-2 seed on the n-dimensional Kodaira model.

    ``gamma_sym`` maps 0-based pairs (j, k), j <= k, to the coefficient of
    phi_jk; ``beta`` maps pairs j < k to the coefficient of ob_j ^ ob_k.
    """

    lam: tuple[GaussianRational, ...]
    gamma: GaussianRational
    alpha: tuple[GaussianRational, ...]
    gamma_sym: dict = field(default_factory=dict)
    beta: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.lam) != len(self.alpha):
            raise PreconditionError("lambda and alpha must have the same length")
        object.__setattr__(self, "lam", tuple(GaussianRational.coerce(x) for x in self.lam))
        object.__setattr__(self, "alpha", tuple(GaussianRational.coerce(x) for x in self.alpha))
        object.__setattr__(self, "gamma", GaussianRational.coerce(self.gamma))
        n = self.n
        for (j, k) in self.gamma_sym:
            if not 0 <= j <= k < n:
                raise PreconditionError(f"gamma_sym index ({j + 1}, {k + 1}) must satisfy j <= k <= n")
        for (j, k) in self.beta:
            if not 0 <= j < k < n:
                raise PreconditionError(f"beta index ({j + 1}, {k + 1}) must satisfy j < k <= n")
        # zero entries are dropped so equality is equality of seeds
        for name in ("gamma_sym", "beta"):
            clean = {key: GaussianRational.coerce(v) for key, v in getattr(self, name).items()}
            object.__setattr__(self, name, {key: v for key, v in sorted(clean.items()) if v})

    @property
    def n(self) -> int:
        return len(self.lam)

    def with_center(self, gamma_sym: dict, beta: dict) -> KodairaSeedParams:
        return KodairaSeedParams(self.lam, self.gamma, self.alpha, dict(gamma_sym), dict(beta))

    def gamma_norm_below_one(self) -> bool:
        """Whether |gamma|^2 < 1, the convergence condition of the geometric series."""
        return self.gamma.norm2() < 1

    def to_json(self) -> dict:
        return {
            "lambda": [x.to_string() for x in self.lam],
            "gamma": self.gamma.to_string(),
            "alpha": [x.to_string() for x in self.alpha],
            "gamma_sym": [
                {"j": j + 1, "k": k + 1, "value": v.to_string()}
                for (j, k), v in sorted(self.gamma_sym.items())
            ],
            "beta": [
                {"j": j + 1, "k": k + 1, "value": v.to_string()}
                for (j, k), v in sorted(self.beta.items())
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> KodairaSeedParams:
        try:
            lam = [GaussianRational.parse(str(x)) for x in data["lambda"]]
            alpha = [GaussianRational.parse(str(x)) for x in data["alpha"]]
            gamma = GaussianRational.parse(str(data.get("gamma", "0")))
            sym = {
                (int(e["j"]) - 1, int(e["k"]) - 1): GaussianRational.parse(str(e["value"]))
                for e in data.get("gamma_sym", [])
            }
            beta = {
                (int(e["j"]) - 1, int(e["k"]) - 1): GaussianRational.parse(str(e["value"]))
                for e in data.get("beta", [])
            }
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed seed parameters: {exc}") from exc
        try:
            return cls(tuple(lam), gamma, tuple(alpha), sym, beta)
        except PreconditionError as exc:
            raise ParseError(str(exc)) from exc


def load_seed_params(path: str | Path) -> KodairaSeedParams:
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return KodairaSeedParams.from_json(data)


def _elements(model: AlgebraModel, params: KodairaSeedParams) -> KodairaElements:
    el = KodairaElements(model)
    if el.n != params.n:
        raise NonKodairaModelError(f"parameters are for n = {params.n} but the model has n = {el.n}")
    return el


def gamma1_from_params(model: AlgebraModel, params: KodairaSeedParams) -> Multivector:
    el = _elements(model, params)
    out = wedge(el.W, el.T_sum(params.lam))
    out += wedge(el.W, el.rho) * params.gamma
    out += wedge(el.rho, el.ob_sum(params.alpha))
    for (j, k), c in params.gamma_sym.items():
        out += el.phi(j + 1, k + 1) * c
    for (j, k), c in params.beta.items():
        out += wedge(el.ob(j + 1), el.ob(k + 1)) * c
    return out


def gamma2_from_params(model: AlgebraModel, params: KodairaSeedParams) -> Multivector:
    """-sum_{j,k} lambda_j alpha_k psi_jk."""
    el = _elements(model, params)
    out = model.zero()
    for j, lj in enumerate(params.lam, start=1):
        for k, ak in enumerate(params.alpha, start=1):
            if lj and ak and j != k:
                out -= el.psi(j, k) * (lj * ak)
    return out


def closed_form_kodaira(model: AlgebraModel, params: KodairaSeedParams) -> Multivector:
    """Gamma_1 + Gamma_2 / (1 - gamma), an exact Maurer-Cartan solution."""
    if params.gamma == ONE:
        raise SingularParameterError(
            "gamma = 1 is a pole of the closed-form solution; choose gamma != 1"
        )
    return gamma1_from_params(model, params) + gamma2_from_params(model, params) / (ONE - params.gamma)


@dataclass
class SeriesComparison:
    agree: bool
    checked_orders: int
    first_mismatch: int | None = None

    def to_json(self) -> dict:
        return {"agree": self.agree, "checked_orders": self.checked_orders,
                "first_mismatch": self.first_mismatch}


def compare_series_to_closed_form(series: MCSeries, params: KodairaSeedParams) -> SeriesComparison:
    """Check Gamma_1 and Gamma_m = gamma^{m-2} Gamma_2 term by term."""
    model = series.model
    if series.gamma(1) != gamma1_from_params(model, params):
        return SeriesComparison(False, series.order, 1)
    g2 = gamma2_from_params(model, params)
    power = ONE
    for m in range(2, series.order + 1):
        if series.gamma(m) != g2 * power:
            return SeriesComparison(False, series.order, m)
        power = power * params.gamma
    return SeriesComparison(True, series.order)


# -- random seeds -------------------------------------------------------------------


def random_scalar(rng: random.Random, bound: int = 5, zero_prob: float = 0.15) -> GaussianRational:
    if rng.random() < zero_prob:
        return ZERO
    re = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    im = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return GaussianRational(re, im)


def random_seed_params(n: int, rng: random.Random, with_center: bool = True) -> KodairaSeedParams:
    lam = tuple(random_scalar(rng) for _ in range(n))
    alpha = tuple(random_scalar(rng) for _ in range(n))
    gamma = random_scalar(rng)
    while gamma == ONE:
        gamma = random_scalar(rng)
    sym, beta = {}, {}
    if with_center:
        for j in range(n):
            for k in range(j, n):
                sym[(j, k)] = random_scalar(rng)
                if j < k:
                    beta[(j, k)] = random_scalar(rng)
    return KodairaSeedParams(lam, gamma, alpha, sym, beta)


def closed_form_residual(model: AlgebraModel, params: KodairaSeedParams) -> Multivector:
    return maurer_cartan_residual(model, closed_form_kodaira(model, params))


def params_from_gamma1(model: AlgebraModel, gamma1: Multivector) -> KodairaSeedParams | None:
    """Read Kodaira seed parameters off an element, or None if it is not of that form."""
    el = KodairaElements(model)
    n = el.n

    def coeff(a: Multivector, b: Multivector) -> GaussianRational:
        (mono, c), = wedge(a, b).terms.items()
        return gamma1.coefficient(mono) / c

    lam = tuple(coeff(el.W, el.T(j)) for j in range(1, n + 1))
    alpha = tuple(coeff(el.rho, el.ob(k)) for k in range(1, n + 1))
    gamma = coeff(el.W, el.rho)
    sym, beta = {}, {}
    for j in range(1, n + 1):
        for k in range(j, n + 1):
            c = coeff(el.T(j), el.ob(k)) * (1 if j == k else 2)
            if c:
                sym[(j - 1, k - 1)] = c
            if j < k:
                b = coeff(el.ob(j), el.ob(k))
                if b:
                    beta[(j - 1, k - 1)] = b
    params = KodairaSeedParams(lam, gamma, alpha, sym, beta)
    return params if gamma1_from_params(model, params) == gamma1 else None
