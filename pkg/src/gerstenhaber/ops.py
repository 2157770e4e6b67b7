"""Schouten bracket, dbar and the deformed differential on arbitrary multivectors.

Sign conventions (total degree ``|a|``; the bracket has degree -1):

* ``[a, b] = -(-1)^{(|a|-1)(|b|-1)} [b, a]``
* ``[a, b ^ c] = [a, b] ^ c + (-1)^{(|a|-1)|b|} b ^ [a, c]``
* ``dbar(K ^ L) = dbar K ^ L + (-1)^{|K|} K ^ dbar L``
* ``dbar [K, L] = [dbar K, L] + (-1)^{|K|+1} [K, dbar L]``

On monomials ``a = a_1 ^ ... ^ a_p`` and ``b = b_1 ^ ... ^ b_q`` of degree-one
generators these rules give the closed expansion

    [a, b] = sum_{i,j} (-1)^{i+j} [a_i, b_j] ^ a_1..^a_i..a_p ^ b_1..^b_j..b_q

(1-based positions, hats omitted), which is what :func:`schouten` evaluates.
Results are memoized per model and monomial pair.
"""

from __future__ import annotations

from .errors import ModelMismatchError
from .exterior import GeneratorId, Monomial, Multivector, _add_into, normalize_monomial
from .lie import AlgebraModel
from .scalars import GaussianRational


def _check(model: AlgebraModel, *mvs: Multivector) -> None:
    for mv in mvs:
        if mv.frame is not model.frame and mv.frame != model.frame:
            raise ModelMismatchError("multivector does not belong to this model's frame")


def schouten_monomials(model: AlgebraModel, a: Monomial, b: Monomial) -> dict[Monomial, GaussianRational]:
    key = ("sch", a, b)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    ga, gb = a.generators(), b.generators()
    acc: dict = {}
    for i, x in enumerate(ga):
        rest_a = ga[:i] + ga[i + 1:]
        for j, y in enumerate(gb):
            br = model.generator_bracket(x, y)
            if not br:
                continue
            rest_b = gb[:j] + gb[j + 1:]
            outer = -1 if (i + j) & 1 else 1
            for mono, c in br.terms.items():
                sign, out = normalize_monomial(mono.generators() + rest_a + rest_b)
                if sign:
                    _add_into(acc, out, c if sign * outer > 0 else -c)
    model._cache[key] = acc
    return acc


def schouten(model: AlgebraModel, a: Multivector, b: Multivector) -> Multivector:
    """The Schouten bracket [a, b], bilinear in both arguments."""
    _check(model, a, b)
    acc: dict = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            part = schouten_monomials(model, ma, mb)
            if not part:
                continue
            c = ca * cb
            for mono, d in part.items():
                _add_into(acc, mono, c * d)
    return Multivector._from_clean(model.frame, acc)


def dbar_monomial(model: AlgebraModel, a: Monomial) -> dict[Monomial, GaussianRational]:
    key = ("dbar", a)
    cached = model._cache.get(key)
    if cached is not None:
        return cached
    gens = a.generators()
    acc: dict = {}
    for i, g in enumerate(gens):
        image = model.dbar_generator(g)
        if not image:
            continue
        sign_i = -1 if i & 1 else 1
        before, after = gens[:i], gens[i + 1:]
        for mono, c in image.terms.items():
            sign, out = normalize_monomial(before + mono.generators() + after)
            if sign:
                _add_into(acc, out, c if sign * sign_i > 0 else -c)
    model._cache[key] = acc
    return acc


def dbar(model: AlgebraModel, a: Multivector) -> Multivector:
    """The exterior differential dbar, extended as a graded derivation."""
    _check(model, a)
    acc: dict = {}
    for ma, ca in a.terms.items():
        for mono, d in dbar_monomial(model, ma).items():
            _add_into(acc, mono, ca * d)
    return Multivector._from_clean(model.frame, acc)


def dbar_gamma(model: AlgebraModel, gamma: Multivector, a: Multivector) -> Multivector:
    """The deformed differential ``dbar a + [gamma, a]``."""
    return dbar(model, a) + schouten(model, gamma, a)


def maurer_cartan_residual(model: AlgebraModel, gamma: Multivector) -> Multivector:
    """``dbar gamma + 1/2 [gamma, gamma]``; zero exactly when gamma is integrable."""
    return dbar(model, gamma) + schouten(model, gamma, gamma) * GaussianRational("1/2")


def generator(model: AlgebraModel, g: GeneratorId) -> Multivector:
    return Multivector.generator(model.frame, g)
