"""Verification suites run by the command-line tool.

Every suite returns a :class:`SuiteResult` whose ``checks`` are plain dicts
``{"name", "status", ...}`` with status ``pass``, ``fail`` or ``note``.  A
suite passes when none of its checks fail.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Iterable

from . import linalg
from .cohomology import HodgeSplit, euler_characteristics, to_vector
from .elements import KodairaElements
from .errors import InconsistentResidualError, ObstructedSeriesError
from .exterior import Monomial, Multivector, wedge
from .kodaira import (
    build_phi,
    compute_table1,
    decomposition_check,
    kernel_of_dbar_gamma_degree1,
    kodaira_hodge_claims,
    psi_index_reading,
    verify_golden,
    verify_isomorphism,
)
from .kuranishi import (
    KodairaSeedParams,
    closed_form_kodaira,
    compare_series_to_closed_form,
    gamma1_from_params,
    gamma2_from_params,
    kuranishi_solve,
    random_scalar,
    random_seed_params,
)
from .lie import AlgebraModel
from .ops import dbar, maurer_cartan_residual, schouten
from .probe import conjecture_probe
from .scalars import ONE

SUITE_ORDER = ("axioms", "hodge", "golden", "table1", "kuranishi", "isomorphism", "probe")
KODAIRA_ONLY = {"golden", "table1", "isomorphism"}
WORKERS_ENV = "GERSTENHABER_WORKERS"


@dataclass
class SuiteResult:
    name: str
    checks: list[dict] = field(default_factory=list)
    counts: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def check(self, name: str, ok: bool, witness=None, note: bool = False) -> None:
        entry = {"name": name, "status": "note" if note else ("pass" if ok else "fail")}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checks": self.checks,
                "counts": dict(sorted(self.counts.items())), "data": self.data}


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def pmap(fn: Callable, items: list, workers: int | None = None) -> list:
    """Order-preserving map, fanned out to processes when more than one worker is set."""
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def applicable_suites(model: AlgebraModel) -> list[str]:
    """Suites that make sense for ``model``, in run order."""
    out = []
    for s in SUITE_ORDER:
        if s in KODAIRA_ONLY and not model.kodaira_n:
            continue
        if s == "probe" and model.source is None:
            continue
        out.append(s)
    return out


# -- axioms ---------------------------------------------------------------------------


def _name(model: AlgebraModel, mono: Monomial) -> str:
    return "^".join(model.frame.monomial_names(mono)) or "1"


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _pair_checks(args) -> tuple[dict, dict]:
    """Antisymmetry, both dbar rules and the bracket degree, for one left monomial."""
    model, a, monos = args
    frame = model.frame
    x = Multivector.monomial(frame, a)
    dx = dbar(model, x)
    p = a.degree
    counts = {"antisymmetry": 0, "dbar_wedge": 0, "dbar_bracket": 0, "bracket_degree": 0}
    first: dict = {}
    for b in monos:
        y = Multivector.monomial(frame, b)
        q = b.degree
        xy = schouten(model, x, y)
        yx = schouten(model, y, x)
        counts["antisymmetry"] += 1
        if xy != yx * (-_sign((p - 1) * (q - 1))):
            first.setdefault("antisymmetry", [_name(model, a), _name(model, b)])
        counts["dbar_wedge"] += 1
        if dbar(model, wedge(x, y)) != wedge(dx, y) + wedge(x, dbar(model, y)) * _sign(p):
            first.setdefault("dbar_wedge", [_name(model, a), _name(model, b)])
        counts["dbar_bracket"] += 1
        if dbar(model, xy) != schouten(model, dx, y) + schouten(model, x, dbar(model, y)) * _sign(p + 1):
            first.setdefault("dbar_bracket", [_name(model, a), _name(model, b)])
        counts["bracket_degree"] += 1
        if xy and xy.degrees() != {p + q - 1}:
            first.setdefault("bracket_degree", [_name(model, a), _name(model, b)])
    return counts, first


def _triple_checks(args) -> tuple[dict, dict]:
    """Bracket Leibniz over wedge and graded Jacobi, for one left monomial."""
    model, a, small = args
    frame = model.frame
    x = Multivector.monomial(frame, a)
    p = a.degree
    counts = {"leibniz": 0, "jacobi": 0}
    first: dict = {}
    for b in small:
        y = Multivector.monomial(frame, b)
        q = b.degree
        xy = schouten(model, x, y)
        for c in small:
            z = Multivector.monomial(frame, c)
            counts["leibniz"] += 1
            lhs = schouten(model, x, wedge(y, z))
            rhs = wedge(xy, z) + wedge(y, schouten(model, x, z)) * _sign((p - 1) * q)
            if lhs != rhs:
                first.setdefault("leibniz", [_name(model, a), _name(model, b), _name(model, c)])
            counts["jacobi"] += 1
            lhs = schouten(model, x, schouten(model, y, z))
            rhs = schouten(model, xy, z) + schouten(model, y, schouten(model, x, z)) * _sign((p - 1) * (q - 1))
            if lhs != rhs:
                first.setdefault("jacobi", [_name(model, a), _name(model, b), _name(model, c)])
    return counts, first


def _merge(results: Iterable[tuple[dict, dict]]) -> tuple[dict, dict]:
    counts: dict = {}
    first: dict = {}
    for c, f in results:
        for k, v in c.items():
            counts[k] = counts.get(k, 0) + v
        for k, v in f.items():
            first.setdefault(k, v)
    return counts, first


def run_axioms(model: AlgebraModel, max_degree: int, triple_degree: int = 2) -> SuiteResult:
    """Sign-convention axioms, exhaustive over basis monomials."""
    res = SuiteResult("axioms")
    monos = model.frame.monomials(max_degree)
    small = model.frame.monomials(min(triple_degree, max_degree))
    pair_counts, pair_first = _merge(pmap(_pair_checks, [(model, a, monos) for a in monos]))
    triple_counts, triple_first = _merge(pmap(_triple_checks, [(model, a, small) for a in small]))
    dd_first = None
    for a in monos:
        x = Multivector.monomial(model.frame, a)
        if dbar(model, dbar(model, x)):
            dd_first = _name(model, a)
            break
    gens = model.frame.generators()
    table_first = None
    for g, h in product(gens, gens):
        if schouten(model, model.gen(g), model.gen(h)) != model.generator_bracket(g, h):
            table_first = [model.frame.name(g), model.frame.name(h)]
            break
    for key in ("antisymmetry", "dbar_wedge", "dbar_bracket", "bracket_degree"):
        res.check(key, key not in pair_first, pair_first.get(key))
    for key in ("leibniz", "jacobi"):
        res.check(key, key not in triple_first, triple_first.get(key))
    res.check("dbar_squared", dd_first is None, dd_first)
    res.check("generator_table", table_first is None, table_first)
    res.counts = {**pair_counts, **triple_counts, "dbar_squared": len(monos), "generator_table": len(gens) ** 2}
    res.data = {"max_degree": max_degree, "triple_degree": min(triple_degree, max_degree),
                "monomials": len(monos)}
    return res


# -- hodge ----------------------------------------------------------------------------


def run_hodge(model: AlgebraModel, split: HodgeSplit) -> SuiteResult:
    res = SuiteResult("hodge")
    pieces = split.pieces
    bad_sum, bad_closed, bad_green, bad_exact, bad_idem = [], [], [], [], []
    for (p, q), piece in sorted(pieces.items()):
        if sum(piece.dims[1:]) != piece.dims[0]:
            bad_sum.append([p, q])
        for v in split.H_basis(p, q) + split.D_basis(p, q):
            if dbar(model, v):
                bad_closed.append([p, q])
                break
        for g in split.G_basis(p, q) if (p, q + 1) in pieces else []:
            if split.green_preimage(dbar(model, g)) != g:
                bad_green.append([p, q])
                break
        for d in split.D_basis(p, q):
            if dbar(model, split.green_preimage(d)) != d:
                bad_exact.append([p, q])
                break
        for v in split.H_basis(p, q):
            if split.harmonic_project(v) != v:
                bad_idem.append([p, q])
                break
        if (p, q + 1) in pieces:
            images = [dbar(model, g) for g in split.G_basis(p, q)]
            target = split.D_basis(p, q + 1)
            monos = pieces[(p, q + 1)].monomials
            vi = [to_vector(v, monos) for v in images]
            vt = [to_vector(v, monos) for v in target]
            if not (linalg.span_rank(vi) == len(vi) == len(vt) == linalg.span_rank(vi + vt)):
                bad_green.append([p, q])
    res.check("direct sum H + D + G", not bad_sum, bad_sum or None)
    res.check("dbar vanishes on H and D", not bad_closed, bad_closed or None)
    res.check("dbar injective on G onto next D", not bad_green, bad_green or None)
    res.check("dbar green = id on D", not bad_exact, bad_exact or None)
    res.check("harmonic projection idempotent", not bad_idem, bad_idem or None)
    euler = euler_characteristics(split)
    res.check("Euler characteristic", all(g == h for g, h in euler.values()),
              {str(p): list(v) for p, v in sorted(euler.items())})
    if model.kodaira_n:
        for claim in kodaira_hodge_claims(model, split):
            res.check(claim["name"], claim["holds"], claim["dims"])
        for name, info in decomposition_check(model).items():
            res.check(f"named summands rebuild {name}", info["direct_sum"], info)
    res.data = {"dimensions": split.dimension_rows(), "max_total_degree": split.max_total_degree}
    res.counts = {"bidegrees": len(pieces)}
    return res


# -- golden / table1 -----------------------------------------------------------------


def default_params(n: int, rng_seed: int = 0) -> KodairaSeedParams:
    return random_seed_params(n, random.Random(rng_seed))


def run_golden(model: AlgebraModel, params: KodairaSeedParams | None) -> SuiteResult:
    res = SuiteResult("golden")
    params = params or default_params(model.kodaira_n)
    results = verify_golden(model, params)
    for r in results:
        res.check(r.name, r.holds, r.witness)
    reading = psi_index_reading(model)
    res.check("psi index reading", True, reading, note=True)
    res.counts = {"identities": len(results), "cases": sum(r.cases for r in results)}
    res.data = {"statements": {r.name: r.statement for r in results}, "params": params.to_json()}
    return res


def run_table1(model: AlgebraModel) -> SuiteResult:
    res = SuiteResult("table1")
    table = compute_table1(model)
    for c in table.mismatches():
        res.check(f"cell ({c.row}, {c.col})", False,
                  {"computed": c.tightest, "published": c.published, "rank": c.rank})
    for c in table.notes():
        res.check(f"cell ({c.row}, {c.col})", True,
                  {"computed": c.tightest, "published": c.published, "rank": c.rank}, note=True)
    res.check("all cells contained in the published table", table.reproduced)
    if model.kodaira_n == 1:
        res.check("degenerate n = 1", True,
                  "the antisymmetric space is zero at n = 1, so several cells are vacuous", note=True)
    res.data = {"table": table.to_json(), "rendered": table.render()}
    res.counts = {"cells": len(table.cells)}
    return res


# -- kuranishi ------------------------------------------------------------------------


def _kodaira_seed_job(args) -> dict:
    model, split, params, order, center_seed = args
    out = {"params": params.to_json(), "gamma_norm_below_one": params.gamma_norm_below_one()}
    series = kuranishi_solve(model, split, gamma1_from_params(model, params), order)
    out["chen_zero"] = series.unobstructed()
    out["invariants"] = series.invariant_failures(split)
    out["gamma2"] = series.order < 2 or series.gamma(2) == gamma2_from_params(model, params)
    cmp = compare_series_to_closed_form(series, params)
    out["geometric"] = cmp.agree
    out["first_mismatch"] = cmp.first_mismatch
    if params.gamma == ONE:
        out["closed_form"] = None
    else:
        out["closed_form"] = not maurer_cartan_residual(model, closed_form_kodaira(model, params))
    rng = random.Random(center_seed)
    shifted = random_seed_params(params.n, rng)
    other = params.with_center(shifted.gamma_sym, shifted.beta)
    series2 = kuranishi_solve(model, split, gamma1_from_params(model, other), order)
    out["center_invariant"] = series2.terms[1:] == series.terms[1:]
    return out


def _generic_seed_job(args) -> dict:
    model, split, coeffs, order = args
    h2 = [v for (p, q) in sorted(split.pieces) if p + q == 2 for v in split.H_basis(p, q)]
    gamma1 = model.zero()
    for v, c in zip(h2, coeffs):
        gamma1 += v * c
    try:
        series = kuranishi_solve(model, split, gamma1, order)
    except ObstructedSeriesError as exc:
        series = exc.series
    except InconsistentResidualError:
        return {"chen_zero": False, "first_obstructed_order": None, "invariants": ["inconsistent residual"]}
    first = next((m for m in range(2, series.order + 1) if series.chen_vector(m)), None)
    return {"chen_zero": series.unobstructed(), "first_obstructed_order": first,
            "invariants": series.invariant_failures(split)}


def run_kuranishi(model: AlgebraModel, split: HodgeSplit, order: int,
                  params: KodairaSeedParams | None, seeds: int = 25, rng_seed: int = 0) -> SuiteResult:
    res = SuiteResult("kuranishi")
    rng = random.Random(rng_seed)
    if model.kodaira_n:
        plist = [params] if params is not None else [
            random_seed_params(model.kodaira_n, rng) for _ in range(seeds)]
        jobs = [(model, split, p, order, rng_seed + 1000 + i) for i, p in enumerate(plist)]
        outs = pmap(_kodaira_seed_job, jobs)
        for key, label in (("chen_zero", "all Chen vectors vanish"),
                           ("gamma2", "Gamma_2 = -sum lambda_j alpha_k psi_jk"),
                           ("geometric", "Gamma_m = gamma^(m-2) Gamma_2"),
                           ("center_invariant", "central seed terms leave Gamma_m>=2 unchanged")):
            bad = [i for i, o in enumerate(outs) if not o[key]]
            res.check(label, not bad, {"failing_seeds": bad} if bad else None)
        bad = [i for i, o in enumerate(outs) if o["invariants"]]
        res.check("series invariants", not bad, {"failing_seeds": bad} if bad else None)
        bad = [i for i, o in enumerate(outs) if o["closed_form"] is False]
        res.check("closed form solves Maurer-Cartan", not bad, {"failing_seeds": bad} if bad else None)
        singular = [i for i, o in enumerate(outs) if o["closed_form"] is None]
        if singular:
            res.check("gamma = 1 seeds skipped for the closed form", True, singular, note=True)
        res.data = {"seeds": [{"params": o["params"], "gamma_norm_below_one": o["gamma_norm_below_one"]}
                              for o in outs]}
        res.counts = {"seeds": len(outs), "order": order}
        if params is not None:
            series = kuranishi_solve(model, split, gamma1_from_params(model, params), order)
            res.data["series"] = series.to_json()
    else:
        h2 = [v for (p, q) in sorted(split.pieces) if p + q == 2 for v in split.H_basis(p, q)]
        jobs = [(model, split, [random_scalar(rng) for _ in h2], order) for _ in range(seeds)]
        outs = pmap(_generic_seed_job, jobs)
        bad = [i for i, o in enumerate(outs) if o["invariants"]]
        res.check("series invariants", not bad, {"failing_seeds": bad} if bad else None)
        obstructed = [i for i, o in enumerate(outs) if not o["chen_zero"]]
        res.check("obstructed seeds", True, {"seeds": obstructed,
                  "orders": [outs[i]["first_obstructed_order"] for i in obstructed]}, note=True)
        res.counts = {"seeds": len(outs), "order": order, "dim_H2": len(h2)}
    return res


# -- isomorphism ------------------------------------------------------------------------


def _iso_job(args) -> dict:
    model, params, max_degree = args
    n = model.kodaira_n
    gamma = closed_form_kodaira(model, params)
    phi = build_phi(params, model)
    cert = verify_isomorphism(model, gamma, phi, max_degree)
    det_ok = phi.degree1_determinant() == (ONE - params.gamma) ** (1 - 2 * n)
    kernel = kernel_of_dbar_gamma_degree1(model, gamma)
    el = KodairaElements(model)
    expected = el.rho - el.T_sum(params.lam) / (ONE - params.gamma)
    kernel_ok = len(kernel) == 1 and linalg.contains(
        [[kernel[0].coefficient(m) for m in _deg1(model)]],
        [[expected.coefficient(m) for m in _deg1(model)]])
    return {"certificate": cert.to_json(), "det": det_ok, "kernel": kernel_ok,
            "kernel_basis": [str(k) for k in kernel]}


def _deg1(model: AlgebraModel) -> list[Monomial]:
    return [m for m in model.frame.monomials(1) if m.degree == 1]


def run_isomorphism(model: AlgebraModel, max_degree: int, params: KodairaSeedParams | None,
                    sets: int = 10, rng_seed: int = 0) -> SuiteResult:
    res = SuiteResult("isomorphism")
    rng = random.Random(rng_seed + 7)
    plist = [params] if params is not None else [
        random_seed_params(model.kodaira_n, rng) for _ in range(sets)]
    outs = pmap(_iso_job, [(model, p, max_degree) for p in plist])
    bad = [i for i, o in enumerate(outs) if not o["certificate"]["passed"]]
    res.check("Phi intertwines, preserves brackets, bijective", not bad,
              [outs[i]["certificate"] for i in bad[:1]] or None)
    bad = [i for i, o in enumerate(outs) if not o["det"]]
    res.check("degree-1 determinant = (1-gamma)^(1-2n)", not bad, bad or None)
    bad = [i for i, o in enumerate(outs) if not o["kernel"]]
    res.check("kernel of dbar_Gamma on t10 + c01 = span(orho - T/(1-gamma))", not bad,
              [outs[i]["kernel_basis"] for i in bad[:1]] or None)
    res.counts = {"parameter_sets": len(outs), "max_degree": max_degree}
    res.data = {"certificates": [o["certificate"] for o in outs]}
    return res


# -- probe ----------------------------------------------------------------------------


def run_probe(model: AlgebraModel, order: int) -> SuiteResult:
    res = SuiteResult("probe")
    alg, J = model.source
    report = conjecture_probe(alg, J, order=min(order, 6))
    for c in report.checks:
        status = c["status"]
        ok = status != "fail"
        note = status not in ("pass", "fail", "holds", "found", "unobstructed")
        res.check(c["name"], ok, {"status": status, **({"witness": c["witness"]} if "witness" in c else {})},
                  note=note)
    res.data = report.to_json()
    res.counts = {"checks": len(report.checks)}
    return res
