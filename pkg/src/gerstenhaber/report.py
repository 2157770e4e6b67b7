"""Run configuration, suite orchestration and report rendering."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from . import suites as S
from .cohomology import hodge_split
from .errors import GerstenhaberError, ParseError, SingularParameterError, ValidationError
from .kuranishi import KodairaSeedParams, load_seed_params
from .lie import AlgebraModel, build_kodaira, compile_model, load_algebra_spec, torus_spec
from .scalars import ONE

SCHEMA_VERSION = 1
DEFAULT_ORDER = 8
DEFAULT_MAX_DEGREE = 4

_MODEL_REF = re.compile(r"^(kodaira|torus):(\d+)$")


class ConfigError(ValidationError):
    """An invalid run configuration."""


@dataclass
class RunConfig:
    model: str | None = None
    spec: str | None = None
    seed: str | None = None
    order: int = DEFAULT_ORDER
    max_degree: int = DEFAULT_MAX_DEGREE
    suites: list[str] = field(default_factory=lambda: ["all"])
    format: str = "json"
    out: str | None = None

    def to_json(self) -> dict:
        # paths are reported by file name only, so reports do not depend on the cwd
        return {
            "model": self.model,
            "spec": Path(self.spec).name if self.spec else None,
            "seed": Path(self.seed).name if self.seed else None,
            "order": self.order,
            "max_degree": self.max_degree,
            "suites": list(self.suites),
        }


def resolve_model(config: RunConfig) -> AlgebraModel:
    if (config.model is None) == (config.spec is None):
        raise ConfigError("give exactly one of --model or --spec")
    if config.spec is not None:
        alg, J = load_algebra_spec(config.spec)
        return compile_model(alg, J)
    m = _MODEL_REF.match(config.model)
    if not m:
        raise ParseError(f"unknown model reference {config.model!r}; expected kodaira:N or torus:N")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ConfigError("model size must be at least 1")
    if kind == "kodaira":
        return build_kodaira(n)
    return compile_model(*torus_spec(n))


def resolve_suites(config: RunConfig, model: AlgebraModel) -> list[str]:
    applicable = S.applicable_suites(model)
    requested = []
    for item in config.suites:
        for name in (s.strip() for s in item.split(",")):
            if not name:
                continue
            if name == "all":
                requested.extend(applicable)
            elif name not in S.SUITE_ORDER:
                raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(S.SUITE_ORDER)} or all")
            elif name not in applicable:
                raise ConfigError(f"suite {name!r} does not apply to model {model.name!r}")
            else:
                requested.append(name)
    if not requested:
        raise ConfigError("no suites requested")
    return [s for s in S.SUITE_ORDER if s in requested]


def validate(config: RunConfig, model: AlgebraModel) -> KodairaSeedParams | None:
    if config.order < 1:
        raise ConfigError("--order must be at least 1")
    total = 2 * model.frame.rank
    if not 0 <= config.max_degree <= total:
        raise ConfigError(f"--max-degree must lie in 0..{total} for this model")
    if config.format not in ("json", "text"):
        raise ConfigError("--format must be json or text")
    if config.seed is None:
        return None
    if not model.kodaira_n:
        raise ConfigError("--seed applies only to Kodaira models")
    params = load_seed_params(config.seed)
    if params.n != model.kodaira_n:
        raise ConfigError(f"seed has n = {params.n} but the model has n = {model.kodaira_n}")
    return params


def run(config: RunConfig) -> dict:
    """Run the configured suites and return the report dict.

    Raises GerstenhaberError subclasses for parse, validation and singular-parameter problems.
    """
    model = resolve_model(config)
    params = validate(config, model)
    names = resolve_suites(config, model)
    if params is not None and params.gamma == ONE and {"kuranishi", "isomorphism"} & set(names):
        raise SingularParameterError(
            "the seed has gamma = 1, a pole of the closed-form solution and of Phi; "
            "edit the seed so that gamma != 1 (|gamma| < 1 also makes the series converge)"
        )
    split = hodge_split(model, min(max(config.max_degree, 3), 2 * model.frame.rank))
    results = []
    for name in names:
        if name == "axioms":
            r = S.run_axioms(model, config.max_degree)
        elif name == "hodge":
            r = S.run_hodge(model, hodge_split(model, config.max_degree))
        elif name == "golden":
            r = S.run_golden(model, params)
        elif name == "table1":
            r = S.run_table1(model)
        elif name == "kuranishi":
            r = S.run_kuranishi(model, split, config.order, params)
        elif name == "isomorphism":
            r = S.run_isomorphism(model, config.max_degree, params)
        else:
            r = S.run_probe(model, config.order)
        results.append(r.to_json())
    return {
        "schema_version": SCHEMA_VERSION,
        "model": {"name": model.name, "kodaira_n": model.kodaira_n, "complex_dim": model.frame.rank,
                  "nilpotency_step": model.nilpotency_step},
        "config": {**config.to_json(), "suites": names},
        "suites": results,
        "passed": all(r["passed"] for r in results),
    }


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return json.dumps(value, sort_keys=True)


def render_text(report: dict) -> str:
    lines = [f"model {report['model']['name']}  (schema v{report['schema_version']})"]
    for suite in report["suites"]:
        lines.append("")
        lines.append(f"[{'PASS' if suite['passed'] else 'FAIL'}] {suite['name']}")
        for c in suite["checks"]:
            tag = {"pass": "ok  ", "fail": "FAIL", "note": "note"}[c["status"]]
            extra = _fmt(c.get("witness"))
            lines.append(f"  {tag} {c['name']}" + (f"  {extra}" if extra and c["status"] != "pass" else ""))
        if suite["counts"]:
            lines.append("  counts: " + ", ".join(f"{k}={v}" for k, v in sorted(suite["counts"].items())))
        if suite["name"] == "table1":
            lines.append("")
            lines.extend("  " + row for row in suite["data"]["rendered"].splitlines())
        if suite["name"] == "hodge":
            dims = suite["data"]["dimensions"]
            lines.append("  p q  dim g  H  D  G")
            lines.extend(f"  {r['p']} {r['q']}  {r['dim_g']:5d} {r['dim_H']:2d} {r['dim_D']:2d} {r['dim_G']:2d}"
                         for r in dims)
    lines.append("")
    lines.append("PASSED" if report["passed"] else "FAILED")
    return "\n".join(lines) + "\n"


def exit_code(report: dict) -> int:
    return 0 if report["passed"] else 1


__all__ = ["RunConfig", "ConfigError", "run", "dumps", "render_text", "exit_code", "GerstenhaberError",
           "SCHEMA_VERSION"]
