"""Adapted transforms and their action on the coefficient tuples.

The per-size closed forms are the fast route; the slow route pushes the
full structure tensor through a change of basis and reads the coefficients
back off.  Both must agree everywhere, which is the content of most tests
here.
"""

import numpy as np
import numpy.testing as npt
import pytest
from hypothesis import given, settings, strategies as st

from filiform_ce import (
    AdaptedTransform,
    DegenerateTransformError,
    DomainError,
    TableShapeError,
    act_by_coefficient_sum,
    act_on_params,
    adapted_matrix,
    build_mu,
    build_table,
    change_basis,
    compose,
    elementary_factors,
    elementary_to_adapted,
    from_entries,
    identity_transform,
    inverse_transform,
    params_from_tuple,
    random_params,
    random_transform,
    read_params,
    sigma,
    tau,
    transform_from_matrix,
    upsilon,
    verify_tail_triviality,
)

import oracles


def tuple_dev(p, q):
    return max(abs(x - y) for x, y in zip(p.as_tuple(), q.as_tuple()))


# ---------------------------------------------------------------------------
# transform objects


def test_transform_validation():
    with pytest.raises(DomainError):
        AdaptedTransform(4, 1, 0, (1,))  # B too short
    with pytest.raises(DomainError):
        AdaptedTransform(3, 1, 0, (1,))
    with pytest.raises(DomainError):
        AdaptedTransform(4, float("inf"), 0, (1, 0))


def test_identity_transform():
    t = identity_transform(5)
    assert t.A0 == 1 and t.A1 == 0
    assert t.B == (1,) + (0,) * (5 - 3)
    p = random_params(5, seed=8)
    assert tuple_dev(act_on_params(t, p), p) == 0


def test_degenerate_transforms_rejected():
    p = random_params(4, seed=0)
    with pytest.raises(DegenerateTransformError):
        act_on_params(AdaptedTransform(4, 0, 1, (1, 0)), p)
    with pytest.raises(DegenerateTransformError):
        act_on_params(AdaptedTransform(4, 1, 0, (0, 1)), p)


def test_shear_degeneracy_rejected():
    # A0 + b * A1 = 0 collapses the chain even though A0, B1 are fine
    p = params_from_tuple(5, [1, 0, 1, 0, 1])  # b = 1
    with pytest.raises(DegenerateTransformError):
        act_on_params(AdaptedTransform(5, 1, -1, (1, 0, 0)), p)


# ---------------------------------------------------------------------------
# matrix form


def test_adapted_matrix_frozen_example():
    # zero parameters, A0 = 1, B = (1, 1): each basis image picks up the
    # next chain vector, computed by hand
    m = adapted_matrix(AdaptedTransform(4, 1, 0, (1, 1)), params_from_tuple(4, [0, 0, 0, 0]))
    want = np.array(
        [
            [1, 0, 0, 0, 0],
            [0, 1, 0, 0, 0],
            [0, 1, 1, 0, 0],
            [0, 0, 1, 1, 0],
            [0, 0, 0, 1, 1],
        ],
        dtype=float,
    )
    npt.assert_allclose(m, want, atol=1e-14)


def test_adapted_matrix_first_column_is_shear():
    p = random_params(6, seed=1)
    t = random_transform(6, seed=2, b=p.b)
    m = adapted_matrix(t, p)
    npt.assert_allclose(m[:, 0], [t.A0, t.A1] + [0] * 5, atol=1e-12)


def test_matrix_columns_follow_bracket_recursion():
    # column k+1 must be the product of column k with column 0
    from filiform_ce import bracket

    p = random_params(7, seed=3)
    t = random_transform(7, seed=4, b=p.b)
    m = adapted_matrix(t, p)
    tab = build_table(p)
    for k in range(1, 7):
        npt.assert_allclose(bracket(tab, m[:, k], m[:, 0]), m[:, k + 1], atol=1e-9)


@given(st.integers(4, 8), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_matrix_roundtrip(n, seed):
    p = random_params(n, seed=seed)
    t = random_transform(n, seed=seed + 1, b=p.b)
    back = transform_from_matrix(adapted_matrix(t, p), n)
    assert abs(back.A0 - t.A0) < 1e-9
    assert abs(back.A1 - t.A1) < 1e-9
    assert max(abs(x - y) for x, y in zip(back.B, t.B)) < 1e-9


# ---------------------------------------------------------------------------
# action: closed forms against the tensor route


@given(st.integers(4, 8), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_action_agrees_with_tensor_route(n, seed):
    p = random_params(n, seed=seed)
    t = random_transform(n, seed=seed + 7, b=p.b)
    fast = act_on_params(t, p)
    slow = read_params(change_basis(build_table(p), adapted_matrix(t, p)))
    assert tuple_dev(fast, slow) < 1e-8 * (1 + p.scale())


def test_action_agrees_with_loop_reference():
    # drive the slow route through the pure-loop basis change as well
    p = random_params(5, seed=21)
    t = random_transform(5, seed=22, b=p.b)
    fast = act_on_params(t, p)
    g = oracles.naive_change_basis(
        np.asarray(build_table(p).gamma, dtype=complex), adapted_matrix(t, p)
    )
    from filiform_ce import StructureTensor

    slow = read_params(StructureTensor(g))
    assert tuple_dev(fast, slow) < 1e-8


def test_action_frozen_diagonal_case():
    # scaling: A0 = 2, B1 = 3 sends b11 to 3 / 2**3 at n = 4 (worked by hand)
    q = act_on_params(AdaptedTransform(4, 2, 0, (3, 0)), params_from_tuple(4, [0, 0, 1, 0]))
    assert q.b11 == pytest.approx(0.375)
    assert q.b00 == q.b01 == 0
    assert q.b12 == 0


def test_action_is_functorial():
    p = random_params(6, seed=30)
    t1 = random_transform(6, seed=31, b=p.b)
    q1 = act_on_params(t1, p)
    t2 = random_transform(6, seed=32, b=q1.b)
    two_step = act_on_params(t2, q1)
    combined = act_on_params(compose(t1, t2, p), p)
    assert tuple_dev(two_step, combined) < 1e-8


def test_inverse_transform_roundtrip():
    for n in range(4, 9):
        p = random_params(n, seed=n)
        t = random_transform(n, seed=n + 50, b=p.b)
        q = act_on_params(t, p)
        back = act_on_params(inverse_transform(t, p), q)
        assert tuple_dev(back, p) < 1e-8


# ---------------------------------------------------------------------------
# general coefficient-sum action


def test_coefficient_sum_matches_closed_forms():
    for n in range(4, 9):
        p = random_params(n, seed=n + 10)
        t = random_transform(n, seed=n + 60, b=p.b)
        got = act_by_coefficient_sum(t, p)
        want = act_on_params(t, p)
        assert tuple_dev(got, want) < 1e-8


def test_coefficient_sum_narrow_variant_deviates():
    # restricting the summation ranges looks plausible but loses the
    # top-chain contributions for odd sizes
    p = random_params(7, seed=70)
    t = random_transform(7, seed=71, b=p.b)
    want = act_on_params(t, p)
    narrow = act_by_coefficient_sum(t, p, bounds="narrow")
    assert tuple_dev(narrow, want) > 1e-4


# ---------------------------------------------------------------------------
# elementary factors


def test_elementary_constructors_validate():
    with pytest.raises(DomainError):
        sigma(1.0, 1)  # k starts at 2
    with pytest.raises(DomainError):
        tau(1.0, 0)
    with pytest.raises(DomainError):
        upsilon(0, 1)  # zero scale is not invertible


def test_factors_multiply_back(subtests=None):
    for n in range(4, 9):
        p = random_params(n, seed=n + 20)
        t = random_transform(n, seed=n + 80, b=p.b)
        factors = elementary_factors(t)
        q = p
        for f in factors:
            q = act_on_params(elementary_to_adapted(f, n), q)
        assert tuple_dev(q, act_on_params(t, p)) < 1e-8, n


def test_factor_order_shear_first_scale_last():
    t = random_transform(6, seed=90)
    factors = elementary_factors(t)
    assert factors[0].kind == "tau"
    assert factors[-1].kind == "upsilon"
    assert all(f.kind == "sigma" for f in factors[1:-1])


def test_uncorrected_factors_fail_at_larger_sizes():
    # reading the shift coefficients off the matrix columns naively ignores
    # that earlier factors already moved the columns; visible from n = 7 up
    p = random_params(7, seed=91)
    t = random_transform(7, seed=92, b=p.b)
    q = p
    for f in elementary_factors(t, corrected=False):
        q = act_on_params(elementary_to_adapted(f, 7), q)
    assert tuple_dev(q, act_on_params(t, p)) > 1e-3


def test_tail_triviality():
    for n in range(4, 9):
        assert verify_tail_triviality(n)


def test_tail_triviality_control():
    # tau at k = 1 genuinely moves the parameters, so the check must refuse it
    assert not verify_tail_triviality(5, elementaries=[tau(1.0, 1)])


# ---------------------------------------------------------------------------
# reading coefficients off a tensor


@given(st.integers(4, 8), st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_read_params_roundtrip(n, seed):
    p = random_params(n, seed=seed)
    assert tuple_dev(read_params(build_table(p)), p) < 1e-10


def test_read_params_rejects_off_family_entries():
    g = build_table(random_params(6, seed=5)).gamma.copy()
    g[2, 2, 6] = 0.5  # diagonal pair entries never occur in the family
    from filiform_ce import StructureTensor

    with pytest.raises(TableShapeError) as err:
        read_params(StructureTensor(g))
    assert "(2, 2, 6)" in str(err.value)


def test_read_params_rejects_wrong_dimension():
    with pytest.raises(DomainError):
        read_params(from_entries(3, {}))


def test_read_params_on_base_algebra():
    # mu itself is the zero tuple except for the skeleton, but it is missing
    # the antisymmetric back-chain, so reading must reject it
    with pytest.raises(TableShapeError):
        read_params(build_mu(5))
