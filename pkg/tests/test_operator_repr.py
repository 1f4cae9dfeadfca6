import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from orbitframes.disc import generate_geometric
from orbitframes.errors import DimensionError, DomainError, OverflowRisk, RankError, UnknownExample
from orbitframes.frames import DiagonalSystem, orbit_matrix
from orbitframes.operator_repr import (
    DualFamily,
    VectorFamily,
    block_orbit_coefficients,
    example_factory,
    expansion_residuals,
    fractional_norms,
    kernel_shift_check,
    norm_ratio_sequence,
    representing_operator,
    restricted_norm_estimate,
    right_shift,
    riesz_bounds,
    scaled_riesz_bound_check,
    synthesis_apply,
)


def diag_family(values, d=None):
    d = d or len(values)
    X = np.zeros((d, len(values)))
    X[np.arange(len(values)), np.arange(len(values))] = values
    return VectorFamily(X)


def dyadic_multipliers(rng, n):
    # powers of two keep m * (1/m) == 1 exactly
    return 2.0 ** np.cumsum(rng.integers(-3, 4, n))


# -- shift and synthesis --------------------------------------------------------

def test_right_shift_examples():
    assert right_shift([1]).tolist() == [0, 1]
    assert right_shift([]).tolist() == [0]
    assert right_shift([1, 2, 3]).tolist() == [0, 1, 2, 3]
    assert right_shift([1j]).tolist() == [0, 1j]


def test_synthesis_examples():
    F = VectorFamily(np.eye(3))
    assert synthesis_apply(F, [1]).tolist() == [1, 0, 0]
    assert synthesis_apply(F, [0, 0, 0]).tolist() == [0, 0, 0]
    assert np.linalg.norm(synthesis_apply(F, [1, 1])) == pytest.approx(math.sqrt(2), rel=1e-15)
    with pytest.raises(DimensionError):
        synthesis_apply(F, [1, 2, 3, 4])


def test_family_shape_checks():
    with pytest.raises(DimensionError):
        VectorFamily(np.ones((3, 1)))
    with pytest.raises(RankError):
        VectorFamily(np.ones((3, 2)), independent=True)
    VectorFamily(example_factory("factorial", 10).columns, independent=True)


@given(st.lists(st.complex_numbers(max_magnitude=100, allow_nan=False), max_size=7))
def test_shift_algebra(c):
    rng = np.random.default_rng(len(c))
    F = VectorFamily(rng.standard_normal((5, 8)) + 1j * rng.standard_normal((5, 8)))
    assert np.array_equal(synthesis_apply(F, right_shift(c)), synthesis_apply(F.shifted(), c))


# -- restricted norm -------------------------------------------------------------

def test_restricted_norm_orthonormal():
    assert restricted_norm_estimate(VectorFamily(np.eye(6))) == pytest.approx(1, rel=1e-15)


def test_sum_basis_example():
    F = example_factory("sum_basis", 4, d=5)
    expected = np.zeros((5, 4))
    for k in range(4):
        expected[k, k] = expected[k + 1, k] = 1
    assert np.array_equal(F.columns, expected)
    assert restricted_norm_estimate(F) == pytest.approx(1, abs=1e-12)


def test_sum_basis_isometry(rng):
    F = example_factory("sum_basis", 49, d=50)
    assert abs(restricted_norm_estimate(F) - 1) <= 1e-12
    c = rng.standard_normal((48, 1000)) + 1j * rng.standard_normal((48, 1000))
    shifted = np.linalg.norm(F.columns[:, 1:] @ c, axis=0)
    plain = np.linalg.norm(F.columns[:, :-1] @ c, axis=0)
    assert np.max(np.abs(shifted - plain) / plain) <= 1e-12


@pytest.mark.parametrize("N", [2, 5, 10, 15, 18])
def test_factorial_growth(N):
    est = restricted_norm_estimate(example_factory("factorial", N))
    assert est == pytest.approx(N, rel=1e-10)


def test_factorial_cap():
    with pytest.raises(OverflowRisk):
        example_factory("factorial", 19)


def test_fractional_family():
    assert fractional_norms(5) == pytest.approx([1 / 2, 1 / 3, 2 / 3, 1 / 4, 3 / 4], rel=1e-15)
    est = [restricted_norm_estimate(example_factory("fractional", N)) for N in (10, 20, 40)]
    assert est[0] < est[1] < est[2]


def test_restricted_norm_repr_golden(golden):
    for row in golden("repr"):
        if row["quantity"] == "restricted_norm":
            F = example_factory(row["family"], int(row["N"]))
            assert restricted_norm_estimate(F) == pytest.approx(float(row["oracle"]), rel=1e-10)


def test_restricted_norm_rank_error():
    X = np.array([[1.0, 2.0, 1.0], [0.0, 0.0, 1.0]])
    with pytest.raises(RankError):
        restricted_norm_estimate(VectorFamily(X))


def test_representing_operator_maps_each_vector_to_the_next(rng):
    F = VectorFamily(rng.standard_normal((6, 5)) + 1j * rng.standard_normal((6, 5)))
    T = representing_operator(F)
    for k in range(4):
        assert T @ F[k] == pytest.approx(F[k + 1], abs=1e-12)
    assert np.linalg.norm(T, 2) == pytest.approx(restricted_norm_estimate(F), rel=1e-12)


@pytest.mark.parametrize("name, N", [("sum_basis", 12), ("factorial", 10), ("fractional", 12),
                                     ("block", 20), ("scaled", 12)])
def test_submultiplicativity_witness(name, N, rng):
    F = example_factory(name, N)
    K = restricted_norm_estimate(F)
    c = rng.standard_normal((N - 1, 1000)) + 1j * rng.standard_normal((N - 1, 1000))
    lhs = np.linalg.norm(F.columns[:, 1:] @ c, axis=0)
    rhs = np.linalg.norm(F.columns[:, :-1] @ c, axis=0)
    assert np.all(lhs <= (K + 1e-9) * rhs)


# -- norm ratios --------------------------------------------------------------------

def test_norm_ratio_examples():
    assert norm_ratio_sequence(example_factory("scaled", 6)) == pytest.approx(2, rel=1e-15)
    assert norm_ratio_sequence(VectorFamily(np.eye(4))).tolist() == [1, 1, 1]
    assert norm_ratio_sequence(example_factory("factorial", 6)) == pytest.approx([2, 3, 4, 5, 6], rel=1e-15)


def test_norm_ratio_zero_column():
    with pytest.raises(DomainError):
        norm_ratio_sequence(VectorFamily(np.array([[1.0, 0.0], [0.0, 0.0]])))


# -- block example --------------------------------------------------------------------

def test_block_first_coefficients():
    assert block_orbit_coefficients(10).tolist() == [1, .5, .25, .5, 1, 2, 1, .5, .25, .125]
    F = example_factory("block", 10)
    assert np.diag(F.columns).real.tolist() == block_orbit_coefficients(10).tolist()


def test_block_oscillation_envelope():
    c = block_orbit_coefficients(200)
    ends = {M: c[M * (M + 1) // 2 - 1] for M in range(2, 20) if M * (M + 1) // 2 - 1 < 200}
    odd = [v for M, v in sorted(ends.items()) if M % 2]
    even = [v for M, v in sorted(ends.items()) if not M % 2]
    assert all(b > a for a, b in zip(odd, odd[1:])) and odd[-1] >= 2 ** 8
    assert all(b < a for a, b in zip(even, even[1:])) and even[-1] <= 2.0 ** -8
    # neither bounded above nor below away from zero on the generated range
    assert c.max() / c.min() > 2 ** 16


# -- kernel invariance ---------------------------------------------------------------

def test_kernel_trivial_for_independent_family():
    rep = kernel_shift_check(example_factory("factorial", 8))
    assert rep.dimension == 0 and rep.invariant and rep.max_residual == 0


def test_kernel_duplicated_column_hand_case():
    f = np.array([1.0, 2.0])
    rep = kernel_shift_check(VectorFamily(np.column_stack([f, f])))
    assert rep.dimension == 1
    v = rep.kernel_basis[:, 0]
    assert abs(v[0] + v[1]) < 1e-15
    # shift of (1,-1)/sqrt2 truncated to (0, 1/sqrt2); its image f/sqrt2 over sigma_max = sqrt2 |f|
    assert rep.max_residual == pytest.approx(0.5, rel=1e-14)
    assert not rep.invariant


def test_kernel_of_truncated_carleson_orbit(golden):
    M = orbit_matrix(DiagonalSystem(generate_geometric(2, 5)), 800)
    rep = kernel_shift_check(VectorFamily(M.entries), tol=1e-8)
    assert rep.dimension >= 800 - 5
    assert rep.max_residual <= 10 * 1e-8
    frozen = next(float(r["value"]) for r in golden("repr") if r["quantity"] == "kernel_max_residual")
    assert rep.max_residual <= 10 * frozen + 1e-14


# -- expansions -----------------------------------------------------------------------------

def test_expansion_orthonormal_exact():
    E = np.eye(7)
    assert expansion_residuals(VectorFamily(E), DualFamily(E)).tolist() == [0] * 6


def test_biorthogonal_collapse_exact(rng):
    for _ in range(10):
        m = dyadic_multipliers(rng, 20)
        r = expansion_residuals(diag_family(m), DualFamily(np.diag(1 / m)))
        assert np.all(r == 0)


def test_rotated_biorthogonal_pair(rng):
    d = 8
    Q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
    F = Q @ np.diag(rng.uniform(0.5, 2, d)) @ (np.eye(d) + 0.1 * rng.standard_normal((d, d)))
    G = np.linalg.inv(F).conj().T
    assert np.max(expansion_residuals(VectorFamily(F), DualFamily(G))) <= 1e-10


def test_expansion_shape_mismatch():
    with pytest.raises(DimensionError):
        expansion_residuals(VectorFamily(np.eye(3)), DualFamily(np.eye(3)[:, :2]))


# -- scaled Riesz inequality ------------------------------------------------------------

def test_scaled_riesz_dyadic_decay():
    rep = scaled_riesz_bound_check(np.eye(10), 2.0 ** -np.arange(1, 11))
    assert rep.ratio_bound == 0.5
    assert rep.estimate <= 0.5 + 1e-12
    assert rep.passed


def test_scaled_riesz_constant_multipliers():
    rep = scaled_riesz_bound_check(np.eye(6), np.ones(6))
    assert rep.estimate == pytest.approx(1, rel=1e-15)
    assert rep.bound == pytest.approx(1, rel=1e-15)


def test_scaled_riesz_perturbed_basis(golden):
    rng = np.random.default_rng(20170918)
    worst = np.inf
    for _ in range(20):
        E = np.eye(12) + 0.05 * rng.standard_normal((12, 12))
        m = np.cumprod(rng.uniform(0.2, 3.0, 12))
        rep = scaled_riesz_bound_check(E, m)
        A, B = riesz_bounds(E)
        assert (rep.lower, rep.upper) == (A, B)
        assert rep.passed and rep.slack >= 0
        worst = min(worst, rep.slack)
    frozen = next(float(r["value"]) for r in golden("repr") if r["quantity"] == "min_slack")
    assert worst == pytest.approx(frozen, rel=1e-10)


def test_scaled_riesz_input_checks():
    with pytest.raises(DimensionError):
        scaled_riesz_bound_check(np.eye(3), [1, 2])
    with pytest.raises(DomainError):
        scaled_riesz_bound_check(np.eye(3), [1, 0, 2])


# -- factory -----------------------------------------------------------------------------

def test_factory_errors():
    with pytest.raises(UnknownExample):
        example_factory("nope", 4)
    with pytest.raises(DimensionError):
        example_factory("sum_basis", 4, d=4)


def test_scaled_factor_param():
    F = example_factory("scaled", 4, factor=0.5)
    assert np.diag(F.columns).real.tolist() == [0.5, 0.25, 0.125, 0.0625]
