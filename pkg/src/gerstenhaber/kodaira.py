"""Kodaira-specific structure: named subspaces, the degree-2 bracket table,
the displayed identities used as a golden oracle, and the map Phi relating
the deformed and undeformed differential Gerstenhaber algebras.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable

from . import linalg
from .elements import KodairaElements
from .errors import PreconditionError, SingularParameterError
from .exterior import GeneratorId, Monomial, Multivector, wedge
from .kuranishi import (
    KodairaSeedParams,
    closed_form_kodaira,
    gamma2_from_params,
)
from .lie import AlgebraModel, build_kodaira
from .ops import dbar, dbar_gamma, maurer_cartan_residual, schouten
from .scalars import I, ONE, ZERO, GaussianRational

HALF_I = GaussianRational(0, "1/2")


# -- named subspaces --------------------------------------------------------------


@dataclass
class NamedSubspace:
    label: str
    display: str
    basis: list[Multivector]

    @property
    def dim(self) -> int:
        return len(self.basis)


DISPLAY = {
    "0": "0",
    "c10t10": "c^{1,0}⊗t^{1,0}",
    "t20": "t^{2,0}",
    "c11": "c^{1,1}",
    "c10t01": "c^{1,0}⊗t^{0,1}",
    "t10c01": "t^{1,0}⊗c^{0,1}",
    "sym11": "⊙^{1,1}",
    "alt11": "△^{1,1}",
    "t11": "t^{1,1}",
    "c01t01": "c^{0,1}⊗t^{0,1}",
    "t02": "t^{0,2}",
    "c10t11": "c^{1,0}⊗t^{1,1}",
    "c10alt11": "c^{1,0}⊗△^{1,1}",
    "c10sym11": "c^{1,0}⊗⊙^{1,1}",
    "t10alt11": "t^{1,0}⊗△^{1,1}",
    "t01alt11": "t^{0,1}⊗△^{1,1}",
    "c11t01": "c^{1,1}⊗t^{0,1}",
    "c10t02": "c^{1,0}⊗t^{0,2}",
    "alt11c01": "△^{1,1}⊗c^{0,1}",
    "sym11c01": "⊙^{1,1}⊗c^{0,1}",
    "t11c01": "t^{1,1}⊗c^{0,1}",
    "t12": "t^{1,2}",
    "c01t02": "c^{0,1}⊗t^{0,2}",
    "t03": "t^{0,3}",
}

TABLE1_LABELS = ("c10t10", "t20", "c11", "t10c01", "alt11", "c01t01")

# the published table, row by row (symmetric)
PUBLISHED_TABLE1 = {
    ("c10t10", "c10t10"): "0", ("c10t10", "t20"): "0", ("c10t10", "c11"): "0",
    ("c10t10", "t10c01"): "c10t11", ("c10t10", "alt11"): "0", ("c10t10", "c01t01"): "c10t02",
    ("t20", "t20"): "0", ("t20", "c11"): "c10alt11", ("t20", "t10c01"): "t10alt11",
    ("t20", "alt11"): "0", ("t20", "c01t01"): "t01alt11",
    ("c11", "c11"): "0", ("c11", "t10c01"): "c11t01", ("c11", "alt11"): "c10t02",
    ("c11", "c01t01"): "0",
    ("t10c01", "t10c01"): "alt11c01", ("t10c01", "alt11"): "t12", ("t10c01", "c01t01"): "c01t02",
    ("alt11", "alt11"): "0", ("alt11", "c01t01"): "t03",
    ("c01t01", "c01t01"): "0",
}


def published_table1_cell(a: str, b: str) -> str:
    return PUBLISHED_TABLE1.get((a, b)) or PUBLISHED_TABLE1[(b, a)]


def _pairs(n: int, strict: bool) -> list[tuple[int, int]]:
    return [(j, k) for j in range(1, n + 1) for k in range(j, n + 1) if not strict or j < k]


def named_subspaces(model: AlgebraModel) -> dict[str, NamedSubspace]:
    """Labelled subspaces of degree 2 (and the degree-3 targets of the bracket table)."""
    el = KodairaElements(model)
    n, W, rho = el.n, el.W, el.rho
    T, ob, phi, psi = el.T, el.ob, el.phi, el.psi
    rng = range(1, n + 1)
    t11 = [wedge(T(j), ob(k)) for j in rng for k in rng]
    t02 = [wedge(ob(j), ob(k)) for j, k in _pairs(n, True)]
    alt = [psi(j, k) for j, k in _pairs(n, True)]
    sym = [phi(j, k) for j, k in _pairs(n, False)]
    spaces = {
        "c10t10": [wedge(W, T(j)) for j in rng],
        "t20": [wedge(T(j), T(k)) for j, k in _pairs(n, True)],
        "c11": [wedge(W, rho)],
        "c10t01": [wedge(W, ob(j)) for j in rng],
        "t10c01": [wedge(T(j), rho) for j in rng],
        "sym11": sym,
        "alt11": alt,
        "t11": t11,
        "c01t01": [wedge(rho, ob(j)) for j in rng],
        "t02": t02,
        "c10t11": [wedge(W, x) for x in t11],
        "c10alt11": [wedge(W, x) for x in alt],
        "c10sym11": [wedge(W, x) for x in sym],
        "t10alt11": [wedge(T(l), x) for l in rng for x in alt],
        "t01alt11": [wedge(ob(l), x) for l in rng for x in alt],
        "c11t01": [wedge(wedge(W, rho), ob(j)) for j in rng],
        "c10t02": [wedge(W, x) for x in t02],
        "alt11c01": [wedge(x, rho) for x in alt],
        "sym11c01": [wedge(x, rho) for x in sym],
        "t11c01": [wedge(x, rho) for x in t11],
        "t12": [wedge(T(l), x) for l in rng for x in t02],
        "c01t02": [wedge(rho, x) for x in t02],
        "t03": [wedge(ob(a), wedge(ob(b), ob(c))) for a, b, c in combinations(rng, 3)],
    }
    return {
        label: NamedSubspace(label, DISPLAY[label], [v for v in basis if v])
        for label, basis in spaces.items()
    }


def _vectors(mvs: list[Multivector], index: dict[Monomial, int]) -> list[list[GaussianRational]]:
    out = []
    for mv in mvs:
        v = [ZERO] * len(index)
        for mono, c in mv.terms.items():
            v[index[mono]] = c
        out.append(v)
    return out


def _degree_index(model: AlgebraModel, k: int) -> dict[Monomial, int]:
    monos = [m for m in model.frame.monomials(k) if m.degree == k]
    return {m: i for i, m in enumerate(monos)}


def decomposition_check(model: AlgebraModel) -> dict[str, dict]:
    """Whether the labelled summands rebuild g^{2,0}, g^{1,1}, g^{0,2} as direct sums."""
    spaces = named_subspaces(model)
    parts = {
        "g20": ((2, 0), ["c10t10", "t20"]),
        "g11": ((1, 1), ["c11", "c10t01", "t10c01", "sym11", "alt11"]),
        "g02": ((0, 2), ["c01t01", "t02"]),
        "t11": ((1, 1), ["sym11", "alt11"]),
    }
    index = _degree_index(model, 2)
    out = {}
    for name, ((p, q), labels) in parts.items():
        vecs = _vectors([v for lab in labels for v in spaces[lab].basis], index)
        total = sum(spaces[lab].dim for lab in labels)
        target = len(model.frame.bidegree_basis(p, q)) if name != "t11" else spaces["t11"].dim
        rank = linalg.span_rank(vecs)
        out[name] = {"sum_of_dims": total, "rank": rank, "dim": target,
                     "direct_sum": total == rank == target}
    return out


# -- the degree-2 bracket table -------------------------------------------------------


@dataclass
class Table1Cell:
    row: str
    col: str
    rank: int
    tightest: str
    published: str
    contained: bool
    equal: bool

    @property
    def status(self) -> str:
        if not self.contained:
            return "mismatch"
        return "match" if self.equal else "stronger"

    def to_json(self) -> dict:
        return {"row": self.row, "col": self.col, "rank": self.rank, "tightest": self.tightest,
                "published": self.published, "status": self.status}


@dataclass
class Table1:
    n: int
    cells: dict[tuple[str, str], Table1Cell]

    @property
    def reproduced(self) -> bool:
        return all(c.contained for c in self.cells.values())

    def mismatches(self) -> list[Table1Cell]:
        return [c for c in self._ordered() if not c.contained]

    def notes(self) -> list[Table1Cell]:
        return [c for c in self._ordered() if c.contained and not c.equal]

    def _ordered(self) -> list[Table1Cell]:
        return [self.cells[(a, b)] for a in TABLE1_LABELS for b in TABLE1_LABELS]

    def to_json(self) -> dict:
        return {"n": self.n, "reproduced": self.reproduced,
                "cells": [c.to_json() for c in self._ordered()]}

    def render(self) -> str:
        heads = [DISPLAY[lab] for lab in TABLE1_LABELS]
        rows = [[""] + heads]
        for a in TABLE1_LABELS:
            row = [DISPLAY[a]]
            for b in TABLE1_LABELS:
                c = self.cells[(a, b)]
                mark = {"match": "", "stronger": " (*)", "mismatch": " (!)"}[c.status]
                row.append(DISPLAY[c.tightest] + mark)
            rows.append(row)
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        lines = [" | ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "-+-".join("-" * w for w in widths))
        legend = ["(*) strictly smaller than the published cell", "(!) not contained in the published cell"]
        for c in self.mismatches():
            legend.append(f"mismatch at ({c.row}, {c.col}): computed {DISPLAY[c.tightest]}, "
                          f"published {DISPLAY[c.published]}")
        return "\n".join(lines + [""] + legend)


TARGET_ORDER = ("0", "c10t11", "c10alt11", "c10sym11", "t10alt11", "t01alt11", "c11t01",
                "c10t02", "alt11c01", "sym11c01", "t11c01", "t12", "c01t02", "t03")


def compute_table1(model: AlgebraModel) -> Table1:
    spaces = named_subspaces(model)
    index = _degree_index(model, 3)
    target_vecs = {lab: linalg.row_basis(_vectors(spaces[lab].basis, index))
                   for lab in TARGET_ORDER if lab != "0"}
    target_vecs["0"] = []
    cells = {}
    for a in TABLE1_LABELS:
        for b in TABLE1_LABELS:
            brackets = [schouten(model, x, y) for x in spaces[a].basis for y in spaces[b].basis]
            span = linalg.row_basis(_vectors([v for v in brackets if v], index))
            rank = len(span)
            published = published_table1_cell(a, b)
            candidates = [lab for lab in TARGET_ORDER if linalg.contains(target_vecs[lab], span)]
            # among equally tight labels prefer "0", then the published one
            tightest = min(candidates, key=lambda lab: (
                len(target_vecs[lab]), lab != "0", lab != published, TARGET_ORDER.index(lab)
            )) if candidates else "?"
            contained = linalg.contains(target_vecs[published], span)
            equal = contained and len(target_vecs[published]) == rank
            cells[(a, b)] = Table1Cell(a, b, rank, tightest, published, contained, equal)
    return Table1(KodairaElements(model).n, cells)


def emit_table1(model: AlgebraModel) -> str:
    return compute_table1(model).render()


# -- the golden identities -----------------------------------------------------------


@dataclass
class GoldenIdentity:
    """A displayed identity, checked for every admissible index assignment."""

    name: str
    statement: str
    check: Callable[[KodairaElements, tuple], tuple[Multivector, Multivector]]
    arity: int = 0
    distinct: bool = False
    needs_gamma: bool = False


@dataclass
class GoldenResult:
    name: str
    statement: str
    holds: bool
    cases: int
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "statement": self.statement, "holds": self.holds, "cases": self.cases}
        if self.witness:
            out["witness"] = self.witness
        return out


def _sch(el, a, b):
    return schouten(el.model, a, b)


def _db(el, a):
    return dbar(el.model, a)


def _golden_plain() -> list[GoldenIdentity]:
    hi, i = HALF_I, I
    w = wedge
    G = GoldenIdentity
    return [
        G("non trivial bracket", "[T_j, orho] = -(i/2) ob_j",
          lambda e, x: (_sch(e, e.T(x[0]), e.rho), e.ob(x[0]) * -hi), 1),
        G("tjk orho", "[T_j^T_k, orho] = -i psi_jk",
          lambda e, x: (_sch(e, w(e.T(x[0]), e.T(x[1])), e.rho), e.psi(x[0], x[1]) * -i), 2),
        G("wtj tk orho", "[W^T_j, T_k^orho] = -(i/2) W^T_k^ob_j",
          lambda e, x: (_sch(e, w(e.W, e.T(x[0])), w(e.T(x[1]), e.rho)),
                        w(w(e.W, e.T(x[1])), e.ob(x[0])) * -hi), 2),
        G("wtj orho oomk", "[W^T_j, orho^ob_k] = -(i/2) W^ob_j^ob_k",
          lambda e, x: (_sch(e, w(e.W, e.T(x[0])), w(e.rho, e.ob(x[1]))),
                        w(w(e.W, e.ob(x[0])), e.ob(x[1])) * -hi), 2),
        G("tjk w orho", "[T_j^T_k, W^orho] = i W^psi_jk",
          lambda e, x: (_sch(e, w(e.T(x[0]), e.T(x[1])), w(e.W, e.rho)), w(e.W, e.psi(x[0], x[1])) * i), 2),
        G("tjk tl orho", "[T_j^T_k, T_l^orho] = i T_l^psi_jk",
          lambda e, x: (_sch(e, w(e.T(x[0]), e.T(x[1])), w(e.T(x[2]), e.rho)),
                        w(e.T(x[2]), e.psi(x[0], x[1])) * i), 3),
        G("tjk orho ol", "[T_j^T_k, orho^ob_l] = -i psi_jk^ob_l",
          lambda e, x: (_sch(e, w(e.T(x[0]), e.T(x[1])), w(e.rho, e.ob(x[2]))),
                        w(e.psi(x[0], x[1]), e.ob(x[2])) * -i), 3),
        G("w orho tj orho", "[W^orho, T_j^orho] = -(i/2) W^orho^ob_j",
          lambda e, x: (_sch(e, w(e.W, e.rho), w(e.T(x[0]), e.rho)),
                        w(w(e.W, e.rho), e.ob(x[0])) * -hi), 1),
        G("orho phijk", "[orho, phi_jk] = 0",
          lambda e, x: (_sch(e, e.rho, e.phi(x[0], x[1])), e.model.zero()), 2),
        G("orho psijk", "[orho, psi_jk] = (i/2) ob_j^ob_k",
          lambda e, x: (_sch(e, e.rho, e.psi(x[0], x[1])), w(e.ob(x[0]), e.ob(x[1])) * hi), 2),
        G("c11tri11", "[W^orho, psi_jk] = (i/2) W^ob_j^ob_k",
          lambda e, x: (_sch(e, w(e.W, e.rho), e.psi(x[0], x[1])),
                        w(w(e.W, e.ob(x[0])), e.ob(x[1])) * hi), 2),
        G("tj orho tk orho", "[T_j^orho, T_k^orho] = i psi_jk^orho",
          lambda e, x: (_sch(e, w(e.T(x[0]), e.rho), w(e.T(x[1]), e.rho)),
                        w(e.psi(x[0], x[1]), e.rho) * i), 2),
        G("tl orho psijk", "[T_l^orho, psi_jk] = (i/2) T_l^ob_j^ob_k",
          lambda e, x: (_sch(e, w(e.T(x[2]), e.rho), e.psi(x[0], x[1])),
                        w(e.T(x[2]), w(e.ob(x[0]), e.ob(x[1]))) * hi), 3),
        G("tri11c01t01", "[psi_jk, orho^ob_l] = (i/2) ob_j^ob_k^ob_l",
          lambda e, x: (_sch(e, e.psi(x[0], x[1]), w(e.rho, e.ob(x[2]))),
                        w(w(e.ob(x[0]), e.ob(x[1])), e.ob(x[2])) * hi), 3),
        G("full structure W", "dbar W = 0", lambda e, x: (_db(e, e.W), e.model.zero())),
        G("full structure T", "dbar T_j = -(i/2) W^ob_j",
          lambda e, x: (_db(e, e.T(x[0])), w(e.W, e.ob(x[0])) * -hi), 1),
        G("full structure orho", "dbar orho = 0", lambda e, x: (_db(e, e.rho), e.model.zero())),
        G("full structure ob", "dbar ob_j = 0", lambda e, x: (_db(e, e.ob(x[0])), e.model.zero()), 1),
        G("dbar tjtk", "dbar(T_j^T_k) = -i W^psi_jk",
          lambda e, x: (_db(e, w(e.T(x[0]), e.T(x[1]))), w(e.W, e.psi(x[0], x[1])) * -i), 2),
        G("dbar w tj", "dbar(W^T_j) = 0",
          lambda e, x: (_db(e, w(e.W, e.T(x[0]))), e.model.zero()), 1),
        G("dbar tj orho", "dbar(T_j^orho) = -(i/2) W^ob_j^orho",
          lambda e, x: (_db(e, w(e.T(x[0]), e.rho)), w(w(e.W, e.ob(x[0])), e.rho) * -hi), 1),
        G("dbar tj obk", "dbar(T_j^ob_k) = -(i/2) W^ob_j^ob_k",
          lambda e, x: (_db(e, w(e.T(x[0]), e.ob(x[1]))), w(w(e.W, e.ob(x[0])), e.ob(x[1])) * -hi), 2),
        G("dbar phijk", "dbar phi_jk = 0",
          lambda e, x: (_db(e, e.phi(x[0], x[1])), e.model.zero()), 2),
        G("dbar psijk", "dbar psi_jk = -(i/2) W^ob_j^ob_k",
          lambda e, x: (_db(e, e.psi(x[0], x[1])), w(w(e.W, e.ob(x[0])), e.ob(x[1])) * -hi), 2),
        G("wtj orho oomk exact", "[W^T_j, orho^ob_k] = dbar psi_jk",
          lambda e, x: (_sch(e, w(e.W, e.T(x[0])), w(e.rho, e.ob(x[1]))), _db(e, e.psi(x[0], x[1]))), 2),
        G("w orho psijk", "[W^orho, psi_jk] = (i/2) W^ob_j^ob_k = -dbar psi_jk",
          lambda e, x: (_sch(e, w(e.W, e.rho), e.psi(x[0], x[1])), -_db(e, e.psi(x[0], x[1]))), 2),
        G("psijk orho oom", "[psi_jk, orho^ob_l] = (i/2) ob_j^ob_k^ob_l",
          lambda e, x: (_sch(e, e.psi(x[0], x[1]), w(e.rho, e.ob(x[2]))),
                        w(w(e.ob(x[0]), e.ob(x[1])), e.ob(x[2])) * hi), 3),
    ]


def _golden_deformed() -> list[GoldenIdentity]:
    """Identities involving T, omegabar, X, Omegabar and Gamma built from parameters.

    The check functions receive ``(e, (k,), ctx)`` packed into ``x`` as
    ``x = (k, ctx)``.
    """
    hi = HALF_I
    w = wedge
    G = GoldenIdentity

    def mk(name, statement, fn, arity=0):
        return G(name, statement, fn, arity, needs_gamma=True)

    return [
        mk("w t orho", "[W^T, orho] = dbar T",
           lambda e, x: (_sch(e, w(e.W, x[-1].T), e.rho), _db(e, x[-1].T))),
        mk("w orho tk", "[W^orho, T_k] = (i/2) W^ob_k = -dbar T_k",
           lambda e, x: (_sch(e, w(e.W, e.rho), e.T(x[0])), -_db(e, e.T(x[0]))), 1),
        mk("w orho orho", "[W^orho, orho] = 0",
           lambda e, x: (_sch(e, w(e.W, e.rho), e.rho), e.model.zero())),
        mk("w t tk", "[W^T, T_k] = 0",
           lambda e, x: (_sch(e, w(e.W, x[-1].T), e.T(x[0])), e.model.zero()), 1),
        mk("orho oom tk", "[orho^ob, T_k] = -(i/2) ob^ob_k",
           lambda e, x: (_sch(e, w(e.rho, x[-1].ob), e.T(x[0])), w(x[-1].ob, e.ob(x[0])) * -hi), 1),
        mk("orho oom orho", "[orho^ob, orho] = 0",
           lambda e, x: (_sch(e, w(e.rho, x[-1].ob), e.rho), e.model.zero())),
        mk("gamma2 tk", "[Gamma_2, T_k] = 0",
           lambda e, x: (_sch(e, x[-1].gamma2, e.T(x[0])), e.model.zero()), 1),
        mk("gamma2 formula", "Gamma_2 = -(1/2)(T^ob - X^Ob)",
           lambda e, x: (x[-1].gamma2, (w(x[-1].T, x[-1].ob) - w(x[-1].X, x[-1].Ob)) * GaussianRational("-1/2"))),
        mk("gamma2 orho", "[Gamma_2, orho] = -(i/2) ob^Ob",
           lambda e, x: (_sch(e, x[-1].gamma2, e.rho), w(x[-1].ob, x[-1].Ob) * -hi)),
        mk("half bracket gamma1", "1/2 [Gamma_1', Gamma_1'] = dbar(sum lambda_j alpha_k psi_jk)",
           lambda e, x: (_sch(e, x[-1].g1_core, x[-1].g1_core) * GaussianRational("1/2"),
                         -_db(e, x[-1].gamma2))),
        mk("dbargamma tk", "dbar_Gamma T_k = (1-gamma) dbar T_k - (i/2) ob^ob_k",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.T(x[0])),
                         _db(e, e.T(x[0])) * x[-1].one_minus - w(x[-1].ob, e.ob(x[0])) * hi), 1),
        mk("dbargamma orho", "dbar_Gamma orho = dbar T - i/(2(1-gamma)) ob^Ob",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.rho),
                         _db(e, x[-1].T) - w(x[-1].ob, x[-1].Ob) * (hi / x[-1].one_minus))),
        mk("dbar gamma generator", "dbar_Gamma(T_k/(1-gamma)) = -(i/2) Phi(W)^Phi(ob_k)",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.T(x[0]) / x[-1].one_minus),
                         w(e.W * x[-1].one_minus + x[-1].ob, e.ob(x[0]) / x[-1].one_minus) * -hi), 1),
        mk("gamma bracket generator", "[T_k/(1-gamma), orho - T/(1-gamma)] = -(i/2) ob_k/(1-gamma)",
           lambda e, x: (_sch(e, e.T(x[0]) / x[-1].one_minus, e.rho - x[-1].T / x[-1].one_minus),
                         e.ob(x[0]) * (-hi / x[-1].one_minus)), 1),
        mk("dbargamma phi w", "dbar_Gamma((1-gamma)W + ob) = 0",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.W * x[-1].one_minus + x[-1].ob), e.model.zero())),
        mk("dbargamma phi obk", "dbar_Gamma(ob_k/(1-gamma)) = 0",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.ob(x[0]) / x[-1].one_minus), e.model.zero()), 1),
        mk("dbargamma phi orho", "dbar_Gamma(orho - T/(1-gamma)) = 0",
           lambda e, x: (dbar_gamma(e.model, x[-1].Gamma, e.rho - x[-1].T / x[-1].one_minus),
                         e.model.zero())),
    ]


@dataclass
class _DeformedContext:
    T: Multivector
    ob: Multivector
    X: Multivector
    Ob: Multivector
    gamma2: Multivector
    g1_core: Multivector
    Gamma: Multivector
    one_minus: GaussianRational


def _deformed_context(model: AlgebraModel, params: KodairaSeedParams) -> _DeformedContext:
    el = KodairaElements(model)
    T = el.T_sum(params.lam)
    ob = el.ob_sum(params.alpha)
    return _DeformedContext(
        T=T, ob=ob, X=el.T_sum(params.alpha), Ob=el.ob_sum(params.lam),
        gamma2=gamma2_from_params(model, params),
        g1_core=wedge(el.W, T) + wedge(el.rho, ob),
        Gamma=closed_form_kodaira(model, params),
        one_minus=ONE - params.gamma,
    )


def golden_identities() -> list[GoldenIdentity]:
    return _golden_plain() + _golden_deformed()


def _index_tuples(n: int, arity: int) -> list[tuple]:
    return list(product(range(1, n + 1), repeat=arity))


def verify_golden(model: AlgebraModel, params: KodairaSeedParams | None = None,
                  names: list[str] | None = None) -> list[GoldenResult]:
    """Evaluate every golden identity over all index assignments."""
    el = KodairaElements(model)
    ctx = None
    results = []
    for ident in golden_identities():
        if names is not None and ident.name not in names:
            continue
        if ident.needs_gamma:
            if params is None:
                raise PreconditionError("deformed identities need seed parameters")
            if ctx is None:
                ctx = _deformed_context(model, params)
        cases, witness = 0, None
        for idx in _index_tuples(el.n, ident.arity):
            args = idx + (ctx,) if ident.needs_gamma else idx
            lhs, rhs = ident.check(el, args)
            cases += 1
            if lhs != rhs:
                witness = {"indices": list(idx), "lhs": str(lhs), "rhs": str(rhs)}
                break
        results.append(GoldenResult(ident.name, ident.statement, witness is None, cases, witness))
    return results


def psi_index_reading(model: AlgebraModel) -> dict:
    """Which index reading of [W^orho, psi_ij] = (i/2) W^ob_j^ob_k = -dbar psi_jk holds.

    Reading "jk" takes the left side as psi_jk.  Reading "ij" keeps psi_ij on
    the left against ob_j^ob_k on the right, for all independent i, j, k.
    """
    el = KodairaElements(model)
    rng = range(1, el.n + 1)
    Wr = wedge(el.W, el.rho)

    def rhs(j, k):
        return wedge(el.W, wedge(el.ob(j), el.ob(k))) * HALF_I

    jk = all(
        schouten(model, Wr, el.psi(j, k)) == rhs(j, k) == -dbar(model, el.psi(j, k))
        for j in rng for k in rng
    )
    ij = all(schouten(model, Wr, el.psi(i, j)) == rhs(j, k) for i in rng for j in rng for k in rng)
    return {"reading_jk_holds": jk, "reading_ij_holds": ij}


# -- the map Phi ---------------------------------------------------------------------


class PhiMap:
    """The algebra map fixed by its values on degree-one generators."""

    def __init__(self, model: AlgebraModel, params: KodairaSeedParams,
                 images: dict[GeneratorId, Multivector]):
        self.model = model
        self.params = params
        self.generator_images = images
        self._mono_cache: dict[Monomial, Multivector] = {}

    def image_of_monomial(self, mono: Monomial) -> Multivector:
        hit = self._mono_cache.get(mono)
        if hit is None:
            hit = Multivector.scalar(self.model.frame, 1)
            for g in mono.generators():
                hit = wedge(hit, self.generator_images[g])
            self._mono_cache[mono] = hit
        return hit

    def __call__(self, a: Multivector) -> Multivector:
        out = self.model.zero()
        for mono, c in a.terms.items():
            out += self.image_of_monomial(mono) * c
        return out

    def degree_matrix(self, k: int) -> list[list[GaussianRational]]:
        """Matrix of Phi on degree-k elements, columns indexed by source monomials."""
        index = _degree_index(self.model, k)
        monos = list(index)
        mat = linalg.zeros(len(monos), len(monos))
        for col, mono in enumerate(monos):
            for out, c in self.image_of_monomial(mono).terms.items():
                mat[index[out]][col] = c
        return mat

    def degree1_determinant(self) -> GaussianRational:
        return linalg.det(self.degree_matrix(1))


def build_phi(params: KodairaSeedParams, model: AlgebraModel | None = None) -> PhiMap:
    if params.gamma == ONE:
        raise SingularParameterError("gamma = 1 makes Phi singular; choose gamma != 1")
    if model is None:
        model = build_kodaira(params.n)
    el = KodairaElements(model)
    if el.n != params.n:
        raise PreconditionError(f"parameters are for n = {params.n} but the model has n = {el.n}")
    s = ONE - params.gamma
    T, ob = el.T_sum(params.lam), el.ob_sum(params.alpha)
    n = el.n
    images = {GeneratorId.vector(n): el.W * s + ob, GeneratorId.form(n): el.rho - T / s}
    for j in range(1, n + 1):
        images[GeneratorId.vector(j - 1)] = el.T(j) / s
        images[GeneratorId.form(j - 1)] = el.ob(j) / s
    return PhiMap(model, params, images)


@dataclass
class IsomorphismCertificate:
    passed: bool
    counts: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {"passed": self.passed, "counts": dict(sorted(self.counts.items()))}
        if self.counterexample:
            out["counterexample"] = self.counterexample
        return out


def verify_isomorphism(model: AlgebraModel, gamma: Multivector, phi: PhiMap,
                       max_degree: int) -> IsomorphismCertificate:
    """Check Phi dbar = dbar_Gamma Phi, Phi [x, y] = [Phi x, Phi y] and bijectivity."""
    if maurer_cartan_residual(model, gamma):
        raise PreconditionError("Gamma does not solve the Maurer-Cartan equation")
    if gamma != closed_form_kodaira(model, phi.params):
        raise PreconditionError("Phi was built from parameters other than Gamma's")
    frame = model.frame
    monos = frame.monomials(max_degree)
    counts = {"intertwining": 0, "bracket": 0, "degrees": 0}

    def name(mono):
        return "^".join(frame.monomial_names(mono)) or "1"

    for mono in monos:
        x = Multivector.monomial(frame, mono)
        lhs, rhs = phi(dbar(model, x)), dbar_gamma(model, gamma, phi(x))
        counts["intertwining"] += 1
        if lhs != rhs:
            return IsomorphismCertificate(False, counts, {
                "check": "intertwining", "x": name(mono), "lhs": str(lhs), "rhs": str(rhs)})
    for a in monos:
        for b in monos:
            if a.degree + b.degree > max_degree:
                continue
            x, y = Multivector.monomial(frame, a), Multivector.monomial(frame, b)
            lhs, rhs = phi(schouten(model, x, y)), schouten(model, phi(x), phi(y))
            counts["bracket"] += 1
            if lhs != rhs:
                return IsomorphismCertificate(False, counts, {
                    "check": "bracket", "x": name(a), "y": name(b), "lhs": str(lhs), "rhs": str(rhs)})
    for k in range(max_degree + 1):
        mat = phi.degree_matrix(k)
        counts["degrees"] += 1
        if linalg.rank(mat) != len(mat):
            return IsomorphismCertificate(False, counts, {"check": "bijective", "degree": k})
    return IsomorphismCertificate(True, counts)


def kernel_of_dbar_gamma_degree1(model: AlgebraModel, gamma: Multivector) -> list[Multivector]:
    """Basis of the kernel of dbar_Gamma on span{T_1, ..., T_n, orho}."""
    el = KodairaElements(model)
    domain = [el.T(j) for j in range(1, el.n + 1)] + [el.rho]
    images = [dbar_gamma(model, gamma, v) for v in domain]
    index = _degree_index(model, 2)
    cols = _vectors(images, index)
    mat = linalg.transpose(cols)
    null = linalg.nullspace(mat, len(domain))
    out = []
    for v in null:
        mv = model.zero()
        for c, d in zip(v, domain):
            mv += d * c
        out.append(mv)
    return out


# -- Hodge claims -----------------------------------------------------------------------


def _span_equal(model: AlgebraModel, k: int, a: list[Multivector], b: list[Multivector]) -> bool:
    index = _degree_index(model, k)
    va, vb = _vectors(a, index), _vectors(b, index)
    ra, rb = linalg.span_rank(va), linalg.span_rank(vb)
    return ra == rb == linalg.span_rank(va + vb)


def kodaira_hodge_claims(model: AlgebraModel, split) -> list[dict]:
    """Every stated decomposition and dbar-isomorphism in degrees 1 and 2, checked exactly.

    Each entry is ``{"name", "holds", "dims"}``; dims gives the computed
    dimension next to the closed-form count.
    """
    el = KodairaElements(model)
    n = el.n
    sp = named_subspaces(model)
    B = {k: v.basis for k, v in sp.items()}
    W, rho = el.W, el.rho
    rng = range(1, n + 1)
    t10 = [el.T(j) for j in rng]
    t01 = [el.ob(j) for j in rng]
    claims = []

    def eq(name, k, computed, stated, count=None):
        holds = _span_equal(model, k, computed, stated)
        if count is not None:
            holds = holds and len(computed) == count
        claims.append({"name": name, "holds": holds,
                       "dims": {"computed": len(computed), "expected": count if count is not None else len(stated)}})

    def iso(name, k, source, target):
        images = [dbar(model, x) for x in source]
        index = _degree_index(model, k + 1)
        rank = linalg.span_rank(_vectors(images, index))
        holds = rank == len(source) == len(target) and _span_equal(model, k + 1, images, target)
        claims.append({"name": name, "holds": holds, "dims": {"computed": rank, "expected": len(target)}})

    H, D, G = split.H_basis, split.D_basis, split.G_basis
    c2 = n * (n - 1) // 2
    eq("H10 = c10", 1, H(1, 0), [W], 1)
    eq("D10 = 0", 1, D(1, 0), [], 0)
    eq("G10 = t10", 1, G(1, 0), t10, n)
    eq("H01 = c01 + t01", 1, H(0, 1), [rho] + t01, n + 1)
    eq("D01 = 0", 1, D(0, 1), [], 0)
    eq("G01 = 0", 1, G(0, 1), [], 0)
    iso("dbar: t10 -> c10t01 iso", 1, t10, B["c10t01"])
    eq("H20 = c10t10", 2, H(2, 0), B["c10t10"], n)
    eq("D20 = 0", 2, D(2, 0), [], 0)
    eq("G20 = t20", 2, G(2, 0), B["t20"], c2)
    iso("dbar: t20 -> c10alt11 iso", 2, B["t20"], B["c10alt11"])
    eq("H11 = c11 + sym11", 2, H(1, 1), B["c11"] + B["sym11"], 1 + n * (n + 1) // 2)
    eq("D11 = c10t01", 2, D(1, 1), B["c10t01"], n)
    eq("D11 = dbar t10", 2, D(1, 1), [dbar(model, x) for x in t10], n)
    eq("G11 = t10c01 + alt11", 2, G(1, 1), B["t10c01"] + B["alt11"], n + c2)
    iso("dbar: t10c01 -> c11t01 iso", 2, B["t10c01"], B["c11t01"])
    iso("dbar: alt11 -> c10t02 iso", 2, B["alt11"], B["c10t02"])
    eq("H02 = c01t01 + t02", 2, H(0, 2), B["c01t01"] + B["t02"], n + c2)
    eq("D02 = 0", 2, D(0, 2), [], 0)
    eq("G02 = 0", 2, G(0, 2), [], 0)
    h2 = H(2, 0) + H(1, 1) + H(0, 2)
    d2 = D(2, 0) + D(1, 1) + D(0, 2)
    g2 = G(2, 0) + G(1, 1) + G(0, 2)
    eq("H2", 2, h2, B["c10t10"] + B["c11"] + B["sym11"] + B["c01t01"] + B["t02"])
    eq("D2", 2, d2, B["c10t01"])
    eq("G2", 2, g2, B["t20"] + B["t10c01"] + B["alt11"])
    return claims
