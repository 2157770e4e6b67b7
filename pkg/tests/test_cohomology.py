from itertools import product

import pytest
import sympy

from gerstenhaber import linalg
from gerstenhaber.cohomology import (
    basis,
    dbar_matrix,
    euler_characteristics,
    from_vector,
    green_preimage,
    harmonic_project,
    hodge_split,
    to_vector,
)
from gerstenhaber.errors import BidegreeError, NotInImageError
from gerstenhaber.exterior import wedge
from gerstenhaber.kodaira import named_subspaces
from gerstenhaber.lie import build_kodaira
from gerstenhaber.ops import dbar
from gerstenhaber.scalars import gr

HALF_I = gr(0, "1/2")


def to_sympy(rows, ncols):
    if not rows:
        return sympy.zeros(0, ncols)
    return sympy.Matrix([[sympy.Rational(x.re.numerator, x.re.denominator)
                          + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator) for x in r]
                         for r in rows])


def sympy_rank(model, p, q):
    """Rank of dbar: g^{p,q} -> g^{p,q+1}, by sympy."""
    m = model.frame.rank
    if q > m or p > m:
        return 0
    return to_sympy(dbar_matrix(model, p, q), len(basis(model, p, q))).rank()


def test_dbar_matrix_degree_one(k2, el2):
    mat = dbar_matrix(k2, 1, 0)
    assert linalg.rank(mat) == 2
    kernel = linalg.nullspace(mat, len(basis(k2, 1, 0)))
    assert len(kernel) == 1
    w = to_vector(el2.W, basis(k2, 1, 0))
    assert linalg.contains(kernel, [w])


def test_dbar_matrix_forms_and_top(k2):
    assert linalg.rank(dbar_matrix(k2, 0, 1)) == 0
    assert all(not any(r) for r in dbar_matrix(k2, 0, 1))
    assert dbar_matrix(k2, 0, 4) == []
    with pytest.raises(BidegreeError):
        dbar_matrix(k2, 0, 5)
    with pytest.raises(BidegreeError):
        dbar_matrix(k2, -1, 0)


def test_dbar_matrix_columns_are_images(k2):
    for p, q in [(1, 0), (1, 1), (2, 1)]:
        dom, cod = basis(k2, p, q), basis(k2, p, q + 1)
        mat = dbar_matrix(k2, p, q)
        for c, mono in enumerate(dom):
            image = dbar(k2, from_vector(k2, dom, [1 if i == c else 0 for i in range(len(dom))]))
            assert [row[c] for row in mat] == to_vector(image, cod)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_harmonic_dimensions_match_rank_oracle(n):
    model = build_kodaira(n)
    split = hodge_split(model, 4)
    for (p, q), piece in split.pieces.items():
        dim_g = len(basis(model, p, q))
        r_out = sympy_rank(model, p, q)
        r_in = sympy_rank(model, p, q - 1) if q else 0
        assert piece.dims == (dim_g, dim_g - r_out - r_in, r_in, r_out), (p, q)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_h11_dimension_closed_form(n):
    split = hodge_split(build_kodaira(n), 2)
    assert len(split.H_basis(1, 1)) == 1 + n * (n + 1) // 2


def test_d20_is_zero(split2):
    assert split2.D_basis(2, 0) == []


def test_alt11_maps_bijectively_onto_c10t02(k3):
    sp = named_subspaces(k3)
    source, target = sp["alt11"].basis, sp["c10t02"].basis
    assert len(source) == len(target) == 3
    cod = basis(k3, 1, 2)
    images = [to_vector(dbar(k3, x), cod) for x in source]
    tvecs = [to_vector(x, cod) for x in target]
    assert linalg.span_rank(images) == 3
    assert linalg.span_rank(images + tvecs) == 3


def test_green_preimage_examples(split3, el3):
    for j, k in product(range(1, 4), repeat=2):
        if j < k:
            d = wedge(el3.W, wedge(el3.ob(j), el3.ob(k))) * -HALF_I
            assert green_preimage(split3, d) == el3.psi(j, k)
    for j in range(1, 4):
        assert green_preimage(split3, wedge(el3.W, el3.ob(j)) * -HALF_I) == el3.T(j)
    assert not green_preimage(split3, el3.model.zero())


def test_green_preimage_rejects_non_exact(split2, el2):
    with pytest.raises(NotInImageError) as info:
        green_preimage(split2, el2.phi(1, 2))
    assert info.value.harmonic_part == el2.phi(1, 2)
    with pytest.raises(NotInImageError):
        green_preimage(split2, el2.T(1))


def test_harmonic_project_examples(split3, el3):
    for j, k in product(range(1, 4), repeat=2):
        assert not harmonic_project(split3, el3.psi(j, k))
        assert harmonic_project(split3, el3.phi(j, k)) == el3.phi(j, k)
    for j in range(1, 4):
        assert not harmonic_project(split3, wedge(el3.W, el3.ob(j)))


@pytest.mark.parametrize("n", [2, 3])
def test_split_invariants(n):
    model = build_kodaira(n)
    split = hodge_split(model, 4)
    for (p, q), piece in split.pieces.items():
        total, h, d, g = piece.dims
        assert h + d + g == total
        for x in split.D_basis(p, q):
            assert dbar(model, split.green_preimage(x)) == x
        for x in split.H_basis(p, q) + split.D_basis(p, q) + split.G_basis(p, q):
            h_part = split.harmonic_project(x)
            assert split.harmonic_project(h_part) == h_part
            parts = split.components(x)
            assert parts[0] + parts[1] + parts[2] == x


@pytest.mark.parametrize("n", [2, 3])
def test_euler_characteristic(n):
    model = build_kodaira(n)
    split = hodge_split(model, 2 * model.frame.rank)
    euler = euler_characteristics(split)
    assert sorted(euler) == list(range(model.frame.rank + 1))
    for p, (g, h) in euler.items():
        assert g == h, p


def test_uncovered_bidegree(split2, el2):
    with pytest.raises(BidegreeError):
        split2.piece(3, 3)


def test_dimension_report(split2):
    rows = split2.dimension_rows()
    assert {"p": 1, "q": 1, "dim_g": 9, "dim_H": 4, "dim_D": 2, "dim_G": 3} in rows
    text = split2.render_text()
    assert text.splitlines()[0].split() == ["p", "q", "dim", "g", "dim", "H", "dim", "D", "dim", "G"]
    assert '"dim_H": 4' in split2.to_json()
