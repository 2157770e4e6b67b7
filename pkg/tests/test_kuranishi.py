import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gerstenhaber import kuranishi as K
from gerstenhaber.cohomology import hodge_split
from gerstenhaber.errors import (
    InconsistentResidualError,
    ObstructedSeriesError,
    ParseError,
    PreconditionError,
    SingularParameterError,
)
from gerstenhaber.exterior import wedge
from gerstenhaber.kuranishi import (
    KodairaSeedParams,
    MCSeries,
    closed_form_kodaira,
    closed_form_residual,
    compare_series_to_closed_form,
    gamma1_from_params,
    gamma2_from_params,
    kuranishi_solve,
    load_seed_params,
    params_from_gamma1,
    random_seed_params,
)
from gerstenhaber.lie import build_kodaira
from gerstenhaber.ops import maurer_cartan_residual
from gerstenhaber.scalars import ONE, ZERO, gr

SAMPLE = KodairaSeedParams((gr(1), gr(2)), gr("1/3"), (gr(3), gr("1/2")))


@pytest.fixture(scope="module")
def sample_series(k2, split2):
    return kuranishi_solve(k2, split2, gamma1_from_params(k2, SAMPLE), 12)


def test_gamma2_value(sample_series, el2):
    # -(1 * 1/2 - 2 * 3) psi_12 = (11/2) psi_12, worked by hand
    expected = (wedge(el2.T(1), el2.ob(2)) - wedge(el2.T(2), el2.ob(1))) * gr("11/4")
    assert sample_series.gamma(2) == expected
    assert sample_series.gamma(2) == gamma2_from_params(el2.model, SAMPLE)


def test_chen_vectors_vanish(sample_series):
    assert sample_series.order == 12
    assert all(not sample_series.chen_vector(m) for m in range(2, 13))
    assert sample_series.unobstructed()


def test_geometric_tail(sample_series):
    g2 = sample_series.gamma(2)
    assert sample_series.gamma(3) == g2 * gr("1/3")
    for m in range(3, 13):
        assert sample_series.gamma(m) == g2 * SAMPLE.gamma ** (m - 2)


def test_series_invariants(sample_series, split2):
    assert sample_series.invariant_failures(split2) == []


def test_no_lambda_means_no_tail(k2, split2):
    params = KodairaSeedParams((ZERO, ZERO), gr("1/2"), (gr(3), gr(1, 1)), {(0, 1): gr(2)}, {(0, 1): gr(5)})
    series = kuranishi_solve(k2, split2, gamma1_from_params(k2, params), 8)
    assert all(not series.gamma(m) for m in range(2, 9))


def test_closed_form_single_pair(el2):
    params = KodairaSeedParams((gr(1), ZERO), ZERO, (ZERO, gr(1)))
    G = closed_form_kodaira(el2.model, params)
    assert G == gamma1_from_params(el2.model, params) - el2.psi(1, 2)
    assert not maurer_cartan_residual(el2.model, G)


def test_closed_form_without_lambda_is_seed(k3):
    params = KodairaSeedParams((ZERO,) * 3, gr("7/2"), (gr(1), gr(2), gr(3)))
    assert closed_form_kodaira(k3, params) == gamma1_from_params(k3, params)


def test_gamma_one_is_singular(k2):
    params = KodairaSeedParams((gr(1), gr(2)), ONE, (gr(3), gr(4)))
    with pytest.raises(SingularParameterError, match="gamma != 1"):
        closed_form_kodaira(k2, params)


def test_gamma_norm_report():
    assert KodairaSeedParams((ONE,), gr("3/5", "4/5"), (ONE,)).gamma_norm_below_one() is False
    assert KodairaSeedParams((ONE,), gr("3/5", "3/5"), (ONE,)).gamma_norm_below_one() is True
    # |gamma| > 1 is still a valid algebraic solution
    big = KodairaSeedParams((ONE, gr(2)), gr(3), (gr(1), gr(-1)))
    assert not big.gamma_norm_below_one()
    assert not closed_form_residual(build_kodaira(2), big)


def test_comparison_full_agreement(sample_series):
    result = compare_series_to_closed_form(sample_series, SAMPLE)
    assert result.agree and result.checked_orders == 12 and result.first_mismatch is None


def test_comparison_order_one_vacuous(k2, split2):
    series = kuranishi_solve(k2, split2, gamma1_from_params(k2, SAMPLE), 1)
    assert compare_series_to_closed_form(series, SAMPLE).agree


def test_mutated_gamma5_is_caught(sample_series, el2):
    terms = list(sample_series.terms)
    terms[4] = terms[4] + el2.psi(1, 2) * gr(0, "1/1000")
    mutant = MCSeries(sample_series.model, terms, list(sample_series.chen))
    result = compare_series_to_closed_form(mutant, SAMPLE)
    assert not result.agree
    assert result.first_mismatch == 5


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_seeds(n):
    model = build_kodaira(n)
    split = hodge_split(model, 3)
    rng = random.Random(100 + n)
    for _ in range(6):
        params = random_seed_params(n, rng)
        series = kuranishi_solve(model, split, gamma1_from_params(model, params), 6)
        assert series.unobstructed()
        assert series.invariant_failures(split) == []
        assert compare_series_to_closed_form(series, params).agree
        assert not closed_form_residual(model, params)


def test_center_perturbation_leaves_tail_unchanged(k3):
    split = hodge_split(k3, 3)
    rng = random.Random(7)
    base = random_seed_params(3, rng, with_center=False)
    reference = kuranishi_solve(k3, split, gamma1_from_params(k3, base), 6)
    for _ in range(3):
        other = random_seed_params(3, rng)
        moved = base.with_center(other.gamma_sym, other.beta)
        series = kuranishi_solve(k3, split, gamma1_from_params(k3, moved), 6)
        assert series.terms[1:] == reference.terms[1:]


def test_preconditions(k2, split2, el2):
    seed = gamma1_from_params(k2, SAMPLE)
    with pytest.raises(PreconditionError):
        kuranishi_solve(k2, split2, seed, 0)
    with pytest.raises(PreconditionError):
        kuranishi_solve(k2, split2, el2.W, 3)
    with pytest.raises(PreconditionError):
        kuranishi_solve(k2, split2, seed + el2.psi(1, 2), 3)
    with pytest.raises(PreconditionError):
        kuranishi_solve(k2, hodge_split(k2, 2), seed, 3)


def test_non_closed_residual_aborts(k2, split2, el2, monkeypatch):
    monkeypatch.setattr(K, "_residual", lambda model, terms, m: el2.T(1) if m == 2 else model.zero())
    with pytest.raises(InconsistentResidualError):
        kuranishi_solve(k2, split2, gamma1_from_params(k2, SAMPLE), 4)


def test_non_closed_residual_after_obstruction(k2, split2, el2, monkeypatch):
    fake = {2: el2.phi(1, 2), 3: wedge(el2.T(1), el2.T(2))}
    monkeypatch.setattr(K, "_residual", lambda model, terms, m: fake.get(m, model.zero()))
    with pytest.raises(ObstructedSeriesError) as info:
        kuranishi_solve(k2, split2, gamma1_from_params(k2, SAMPLE), 4)
    series = info.value.series
    assert series.chen_vector(2) == -el2.phi(1, 2)


def test_params_read_back_from_seed(k3):
    rng = random.Random(11)
    for _ in range(5):
        params = random_seed_params(3, rng)
        assert params_from_gamma1(k3, gamma1_from_params(k3, params)) == params
    assert params_from_gamma1(k3, k3.zero()) is not None


def test_seed_file(tmp_path):
    path = tmp_path / "seed.json"
    path.write_text(json.dumps(SAMPLE.to_json()))
    assert load_seed_params(path) == SAMPLE
    path.write_text('{"lambda": ["1"], "alpha": [}')
    with pytest.raises(ParseError, match="line 1"):
        load_seed_params(path)
    with pytest.raises(ParseError):
        KodairaSeedParams.from_json({"lambda": ["1", "2"], "alpha": ["1"]})


scalar = st.builds(lambda a, b, c, d: gr(f"{a}/{b}", f"{c}/{d}"),
                   st.integers(-9, 9), st.integers(1, 9), st.integers(-9, 9), st.integers(1, 9))


@settings(max_examples=40)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(scalar, min_size=n, max_size=n), scalar, st.lists(scalar, min_size=n, max_size=n),
    st.dictionaries(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).map(lambda t: tuple(sorted(t))),
                    scalar, max_size=3),
    st.dictionaries(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                    .filter(lambda t: t[0] != t[1]).map(lambda t: tuple(sorted(t))), scalar, max_size=3),
)))
def test_seed_json_round_trip(data):
    lam, gamma, alpha, sym, beta = data
    params = KodairaSeedParams(tuple(lam), gamma, tuple(alpha), sym, beta)
    text = json.dumps(params.to_json(), sort_keys=True)
    back = KodairaSeedParams.from_json(json.loads(text))
    assert back == params
    assert json.dumps(back.to_json(), sort_keys=True) == text
