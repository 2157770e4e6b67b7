import random
from itertools import product

import pytest
import sympy

from gerstenhaber.errors import NonKodairaModelError, PreconditionError, SingularParameterError
from gerstenhaber.exterior import GeneratorId, Multivector, wedge
from gerstenhaber.kodaira import (
    TABLE1_LABELS,
    build_phi,
    compute_table1,
    decomposition_check,
    emit_table1,
    kernel_of_dbar_gamma_degree1,
    kodaira_hodge_claims,
    named_subspaces,
    psi_index_reading,
    verify_isomorphism,
)
from gerstenhaber.kuranishi import KodairaSeedParams, closed_form_kodaira, random_seed_params
from gerstenhaber.lie import build_kodaira, compile_model, torus_spec
from gerstenhaber.cohomology import hodge_split
from gerstenhaber.ops import dbar, dbar_gamma, schouten
from gerstenhaber.scalars import ONE, ZERO, gr

HALF_I = gr(0, "1/2")


def test_named_subspace_dimensions(k2, k3):
    sp2, sp3 = named_subspaces(k2), named_subspaces(k3)
    assert sp2["alt11"].dim == 1
    assert sp3["sym11"].dim == 6
    assert sp2["c11"].dim == sp3["c11"].dim == 1
    assert sp3["alt11"].dim + sp3["sym11"].dim == sp3["t11"].dim == 9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_summands_rebuild_degree_two(n):
    for name, info in decomposition_check(build_kodaira(n)).items():
        assert info["direct_sum"], (name, info)


def test_non_kodaira_rejected():
    with pytest.raises(NonKodairaModelError):
        named_subspaces(compile_model(*torus_spec(2)))


def test_phi_identity(k2):
    params = KodairaSeedParams((ZERO, ZERO), ZERO, (ZERO, ZERO))
    phi = build_phi(params, k2)
    f = k2.frame
    for mono in f.monomials(4):
        x = Multivector.monomial(f, mono)
        assert phi(x) == x
    cert = verify_isomorphism(k2, k2.zero(), phi, 4)
    assert cert.passed


def test_phi_n1_generator_images():
    params = KodairaSeedParams((ONE,), gr("1/2"), (ONE,))
    phi = build_phi(params)
    m = phi.model
    W, T1 = m.gen(GeneratorId.vector(1)), m.gen(GeneratorId.vector(0))
    ob1, rho = m.gen(GeneratorId.form(0)), m.gen(GeneratorId.form(1))
    assert phi(W) == W * gr("1/2") + ob1
    assert phi(rho) == rho - T1 * 2


def test_phi_is_multiplicative(k2):
    phi = build_phi(random_seed_params(2, random.Random(3)), k2)
    f = k2.frame
    gens = [Multivector.generator(f, g) for g in f.generators()]
    for a, b in product(gens, gens):
        assert phi(wedge(a, b)) == wedge(phi(a), phi(b))


def symbolic_degree1_det(n):
    lam = sympy.symbols(f"l1:{n + 1}")
    alpha = sympy.symbols(f"a1:{n + 1}")
    g = sympy.Symbol("g")
    s = 1 - g
    size = 2 * n + 2
    M = sympy.zeros(size, size)
    # generator order T_1..T_n, W, ob_1..ob_n, orho; column c holds Phi(generator c)
    for j in range(n):
        M[j, j] = 1 / s
        M[n + 1 + j, n + 1 + j] = 1 / s
        M[n + 1 + j, n] = alpha[j]
        M[j, 2 * n + 1] = -lam[j] / s
    M[n, n] = s
    M[2 * n + 1, 2 * n + 1] = 1
    return sympy.simplify(M.det()), lam, alpha, g


@pytest.mark.parametrize("n", [1, 2, 3])
def test_degree1_determinant_against_symbolic_oracle(n):
    det, lam, alpha, g = symbolic_degree1_det(n)
    assert sympy.simplify(det - (1 - g) ** (1 - 2 * n)) == 0
    model = build_kodaira(n)
    rng = random.Random(n)
    for _ in range(4):
        params = random_seed_params(n, rng)
        got = build_phi(params, model).degree1_determinant()
        sub = {g: sympy.Rational(params.gamma.re) + sympy.I * sympy.Rational(params.gamma.im)}
        value = sympy.nsimplify(sympy.expand(det.subs(sub)))
        re, im = sympy.Rational(sympy.re(value)), sympy.Rational(sympy.im(value))
        assert (got.re, got.im) == (re, im)
        assert got != 0


def test_phi_singular_at_gamma_one():
    with pytest.raises(SingularParameterError):
        build_phi(KodairaSeedParams((ONE,), ONE, (ONE,)))


def test_intertwining_and_bracket_on_generators(el2):
    m = el2.model
    params = KodairaSeedParams((gr(1), gr(2)), gr("1/3"), (gr(3), gr("1/2")))
    G = closed_form_kodaira(m, params)
    phi = build_phi(params, m)
    for k in (1, 2):
        T_k, ob_k = el2.T(k), el2.ob(k)
        assert phi(dbar(m, T_k)) == wedge(phi(el2.W), phi(ob_k)) * -HALF_I
        assert phi(dbar(m, T_k)) == dbar_gamma(m, G, phi(T_k))
        assert schouten(m, phi(T_k), phi(el2.rho)) == phi(ob_k) * -HALF_I


def test_certificate_preconditions(k2, el2):
    params = random_seed_params(2, random.Random(9))
    phi = build_phi(params, k2)
    with pytest.raises(PreconditionError):
        verify_isomorphism(k2, wedge(el2.W, el2.T(1)) + wedge(el2.rho, el2.ob(2)), phi, 2)
    with pytest.raises(PreconditionError):
        verify_isomorphism(k2, k2.zero(), phi, 2)


def test_certificate_catches_a_wrong_map(k2):
    params = random_seed_params(2, random.Random(4))
    phi = build_phi(params, k2)
    W = GeneratorId.vector(2)
    phi.generator_images[W] = phi.generator_images[W] * 2
    cert = verify_isomorphism(k2, closed_form_kodaira(k2, params), phi, 3)
    assert not cert.passed
    assert cert.counterexample["check"] == "intertwining"


def test_kernel_examples(el2):
    m = el2.model
    params = KodairaSeedParams((gr(1), gr(2)), gr("1/3"), (gr(3), gr("1/2")))
    kernel = kernel_of_dbar_gamma_degree1(m, closed_form_kodaira(m, params))
    assert len(kernel) == 1
    target = el2.rho - (el2.T(1) + el2.T(2) * 2) * gr("3/2")
    mono = next(iter(el2.rho.terms))
    assert kernel[0] / kernel[0].coefficient(mono) == target
    flat = KodairaSeedParams((ZERO, ZERO), gr(2), (gr(1), gr(1)))
    kernel = kernel_of_dbar_gamma_degree1(m, closed_form_kodaira(m, flat))
    assert len(kernel) == 1 and kernel[0] / kernel[0].coefficient(mono) == el2.rho


@pytest.mark.parametrize("n", [1, 2, 3])
def test_kernel_is_one_dimensional(n):
    model = build_kodaira(n)
    rng = random.Random(20 + n)
    for _ in range(5):
        params = random_seed_params(n, rng)
        assert len(kernel_of_dbar_gamma_degree1(model, closed_form_kodaira(model, params))) == 1


@pytest.mark.parametrize("n", [2, 3])
def test_table_cells(n):
    table = compute_table1(build_kodaira(n))
    assert table.cells[("c10t10", "c01t01")].tightest == "c10t02"
    assert table.cells[("alt11", "alt11")].tightest == "0"
    assert table.cells[("t20", "c11")].tightest == "c10alt11"
    for a, b in product(TABLE1_LABELS, repeat=2):
        assert table.cells[(a, b)].tightest == table.cells[(b, a)].tightest


def test_table_t10c01_square_lands_in_sym(k2, el2):
    # [T_j ^ orho, T_k ^ orho] = i phi_jk ^ orho; symmetric in j, k
    for j, k in product((1, 2), repeat=2):
        lhs = schouten(k2, wedge(el2.T(j), el2.rho), wedge(el2.T(k), el2.rho))
        assert lhs == wedge(el2.phi(j, k), el2.rho) * gr(0, 1)


def test_alt11_with_c01t01_value(el3):
    # computed value of [psi_jk, orho ^ ob_l] for distinct indices
    lhs = schouten(el3.model, el3.psi(1, 2), wedge(el3.rho, el3.ob(3)))
    ob123 = wedge(el3.ob(1), wedge(el3.ob(2), el3.ob(3)))
    assert lhs == ob123 * -HALF_I


def test_table_render(k2):
    text = emit_table1(k2)
    assert "c^{1,0}⊗t^{0,2}" in text.splitlines()[2]
    assert text.count("\n") > 7


def test_psi_reading(k1, k2, k3):
    assert psi_index_reading(k2) == {"reading_jk_holds": True, "reading_ij_holds": False}
    assert psi_index_reading(k3)["reading_jk_holds"]
    assert psi_index_reading(k1)["reading_ij_holds"]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hodge_claims_reproduce_named_subspaces(n):
    model = build_kodaira(n)
    for claim in kodaira_hodge_claims(model, hodge_split(model, 3)):
        assert claim["holds"], claim
