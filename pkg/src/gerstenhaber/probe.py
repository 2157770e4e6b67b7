"""Evidence probe for 2-step nilpotent algebras with abelian complex structures.

The probe works from the real structure constants only:

1. search greedily for an ascending (1,0)-coframe, where each new form has
   d(theta^{j+1}) in I(theta^1..theta^j) ^ I(conj theta^1..conj theta^j);
2. report whether the last form contracts to a nondegenerate map t^{1,0} -> t^{0,1};
3. recompile in the ascending frame and test Lambda = V_n ^ V_{n+1};
4. run the Kuranishi recursion on sampled harmonic degree-2 seeds and, where
   the model has Kodaira form, try the Kodaira-form map Phi.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import linalg
from .cohomology import hodge_split
from .errors import GerstenhaberError
from .exterior import GeneratorId, wedge
from .kodaira import build_phi, verify_isomorphism
from .kuranishi import (
    closed_form_kodaira,
    compare_series_to_closed_form,
    kuranishi_solve,
    params_from_gamma1,
    random_scalar,
)
from .lie import AlgebraModel, ComplexStructureSpec, LieAlgebraSpec, compile_model
from .ops import dbar, schouten
from .scalars import ONE, ZERO, GaussianRational

Matrix = list[list[GaussianRational]]


@dataclass
class ProbeReport:
    model: str
    checks: list[dict] = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    ascending_model: AlgebraModel | None = field(default=None, repr=False)

    def add(self, name: str, status: str, witness=None) -> None:
        entry = {"name": name, "status": status}
        if witness is not None:
            entry["witness"] = witness
        self.checks.append(entry)

    def status(self, name: str) -> str | None:
        return next((c["status"] for c in self.checks if c["name"] == name), None)

    @property
    def passed(self) -> bool:
        """False only when an internal consistency check failed."""
        return all(c["status"] != "fail" for c in self.checks)

    def to_json(self) -> dict:
        return {"model": self.model, "checks": self.checks, "dims": dict(sorted(self.dims.items()))}


def _frame_data(alg: LieAlgebraSpec, vecs: list[list[GaussianRational]]):
    conj = [[x.conjugate() for x in v] for v in vecs]
    pinv = linalg.inverse(linalg.transpose(vecs + conj))
    return conj, pinv


def d10_matrices(alg: LieAlgebraSpec, vecs: list[list[GaussianRational]]) -> list[Matrix]:
    """M[c][a][b] = d theta^c(V_a, conj V_b) for the (1,0)-coframe dual to ``vecs``.

    For an abelian complex structure this (1,1) part is all of d theta^c.
    """
    m = len(vecs)
    conj, pinv = _frame_data(alg, vecs)
    out = [linalg.zeros(m, m) for _ in range(m)]
    for a in range(m):
        for b in range(m):
            z = linalg.matvec(pinv, [GaussianRational.coerce(x) for x in alg.bracket(vecs[a], conj[b])])
            for c in range(m):
                out[c][a][b] = -z[c]
    return out


def ascending_coframe(mats: list[Matrix]) -> tuple[Matrix | None, list[int]]:
    """Greedy ascending coframe as rows of coefficients on the original coframe.

    Returns (rows, dims) where dims[j] is the dimension of the admissible space
    at step j; rows is None if the greedy search stalls.
    """
    m = len(mats)
    chosen: Matrix = []
    dims = []
    for _ in range(m):
        q = linalg.nullspace(chosen, m) if chosen else linalg.identity(m)
        eqs = []
        for qv in q:
            # columns of N must lie in span(chosen)
            for b in range(m):
                eqs.append([sum((qv[a] * mats[c][a][b] for a in range(m)), ZERO) for c in range(m)])
            # rows of N must lie in the conjugate span
            for a in range(m):
                eqs.append([sum((mats[c][a][b] * qv[b].conjugate() for b in range(m)), ZERO)
                            for c in range(m)])
        eqs = [e for e in eqs if any(e)]
        admissible = linalg.row_basis(linalg.nullspace(eqs, m)) if eqs else linalg.identity(m)
        dims.append(len(admissible))
        pick = next((v for v in admissible if not linalg.contains(chosen, [v])), None)
        if pick is None:
            return None, dims
        chosen.append(pick)
    return chosen, dims


def conjecture_probe(alg: LieAlgebraSpec, J: ComplexStructureSpec, *, seeds: int = 4,
                     order: int = 6, rng_seed: int = 0, iso_degree: int = 3) -> ProbeReport:
    base = compile_model(alg, J)
    m = base.frame.rank
    report = ProbeReport(alg.name or base.name)
    report.dims.update({"complex_dim": m, "nilpotency_step": alg.nilpotency_step})
    report.add("two-step", "holds" if alg.nilpotency_step == 2 else "fails",
               {"nilpotency_step": alg.nilpotency_step})

    vecs = [list(v) for v in base.complex_frame]
    rows, dims = ascending_coframe(d10_matrices(alg, vecs))
    report.dims["admissible_dims"] = dims
    if rows is None:
        report.add("ascending basis", "not found by greedy")
        report.add("hypothesis", "fails")
        return report
    report.add("ascending basis", "found", {"coframe": [[x.to_string() for x in r] for r in rows]})

    # dual frame V_k = sum_a (U^{-1})[a][k] T_a, in real coordinates
    uinv = linalg.inverse(rows)
    new_vecs = [
        [sum((uinv[a][k] * vecs[a][r] for a in range(m)), ZERO) for r in range(alg.dim)]
        for k in range(m)
    ]
    names = None if rows == linalg.identity(m) else (
        tuple(f"V{k + 1}" for k in range(m)), tuple(f"ob{k + 1}" for k in range(m)))
    model = compile_model(alg, J, complex_frame=new_vecs, names=names)
    report.ascending_model = model

    top = d10_matrices(alg, new_vecs)[m - 1]
    n = m - 1
    contraction = [row[:n] for row in top[:n]]
    leak = any(top[a][n] for a in range(m)) or any(top[n][b] for b in range(m))
    rank = linalg.rank(contraction) if n else 0
    report.dims["contraction_rank"] = rank
    report.add("contraction in t10 x t01", "fail" if leak else "pass")
    nondeg = n > 0 and rank == n
    report.add("nondegenerate contraction", "holds" if nondeg else "degenerate",
               {"matrix": [[x.to_string() for x in r] for r in contraction]})
    hypothesis = nondeg and alg.nilpotency_step == 2 and not leak
    report.add("hypothesis", "holds" if hypothesis else "fails")

    if m >= 2:
        lam = wedge(model.gen(GeneratorId.vector(m - 2)), model.gen(GeneratorId.vector(m - 1)))
        poisson = not schouten(model, lam, lam) and not dbar(model, lam)
        expected = "pass" if poisson else ("fail" if hypothesis else "fails")
        report.add("Lambda holomorphic Poisson", expected, {"Lambda": str(lam)})

    _sample_seeds(report, model, seeds, order, rng_seed, iso_degree, hypothesis)
    return report


def _sample_seeds(report: ProbeReport, model: AlgebraModel, seeds: int, order: int,
                  rng_seed: int, iso_degree: int, hypothesis: bool) -> None:
    split = hodge_split(model, 3)
    h2 = [v for (p, q) in sorted(split.pieces) if p + q == 2 for v in split.H_basis(p, q)]
    report.dims["dim_H2"] = len(h2)
    rng = random.Random(rng_seed)
    obstructed, inconsistent = 0, 0
    phi_status = []
    for _ in range(seeds):
        gamma1 = model.zero()
        for v in h2:
            gamma1 += v * random_scalar(rng)
        try:
            series = kuranishi_solve(model, split, gamma1, order)
        except GerstenhaberError:
            inconsistent += 1
            continue
        if series.invariant_failures(split):
            inconsistent += 1
        if not series.unobstructed():
            obstructed += 1
            phi_status.append("inapplicable")
            continue
        phi_status.append(_phi_ansatz(model, series, gamma1, iso_degree))
    report.dims["seeds"] = seeds
    report.add("Kuranishi recursion consistent", "fail" if inconsistent else "pass",
               {"inconsistent": inconsistent})
    if obstructed:
        status = "fail" if hypothesis and model.kodaira_n else "obstructed"
    else:
        status = "unobstructed"
    report.add("sampled seeds", status, {"obstructed": obstructed, "order": order})
    if "fails" in phi_status:
        verdict = "fails"
    elif phi_status and all(s == "holds" for s in phi_status):
        verdict = "holds"
    else:
        verdict = "inapplicable"
    report.add("Phi ansatz", verdict)


def _phi_ansatz(model: AlgebraModel, series, gamma1, iso_degree: int) -> str:
    if not model.kodaira_n:
        return "inapplicable"
    params = params_from_gamma1(model, gamma1)
    if params is None or params.gamma == ONE:
        return "inapplicable"
    if not compare_series_to_closed_form(series, params).agree:
        return "fails"
    cert = verify_isomorphism(model, closed_form_kodaira(model, params), build_phi(params, model), iso_degree)
    return "holds" if cert.passed else "fails"


def degenerate_example_spec() -> tuple[LieAlgebraSpec, ComplexStructureSpec]:
    """Complex dimension 3, [X1, Y1] = Z1 only: dtheta^3 contracts to rank one."""
    from fractions import Fraction

    from .lie import standard_complex_structure

    basis = ("X1", "Y1", "X2", "Y2", "Z1", "Z2")
    alg = LieAlgebraSpec(6, basis, {(0, 1): {4: Fraction(1)}}, name="degenerate-2step")
    return alg, standard_complex_structure(6)
