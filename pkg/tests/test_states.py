import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinflip import catalog
from spinflip.errors import DimensionError, ValidationError
from spinflip.harness import random_density, random_pure_state
from spinflip.states import (
    DensityMatrix,
    StateVector,
    analyze,
    hs_distance_sq,
    indistinguishability,
    mix,
    mixedness,
    n_tangle_pure,
    partial_trace,
    pure_density,
    purity,
    s_n_squared,
    spin_flip,
    spin_flip_matrix,
    spin_flip_vector,
)

from conftest import flip_oracle, partial_trace_oracle, random_psi, random_rho, sigma2_n


def basis(bits):
    return catalog.basis_product(bits)


def test_state_vector_validation():
    with pytest.raises(ValidationError):
        StateVector([1, 1])
    with pytest.raises(DimensionError):
        StateVector([1, 0, 0])
    psi = StateVector([0, 1])
    with pytest.raises(ValueError):
        psi.amplitudes[0] = 1


def test_density_matrix_validation():
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([0.6, 0.6]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.array([[0.5, 0.1], [0.2, 0.5]]))
    with pytest.raises(ValidationError):
        DensityMatrix(np.diag([1.2, -0.2]))
    DensityMatrix(np.diag([1.0 + 5e-10, -5e-10]))


def test_pure_density_examples():
    np.testing.assert_array_equal(pure_density(StateVector([1, 0])).mat, np.diag([1, 0]))
    phi = pure_density(StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2))).mat
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(phi, expected, atol=1e-16)
    with pytest.raises(ValidationError):
        pure_density(np.array([1.0, 1.0]))


def test_pure_density_random_purity(rng):
    for n in (1, 2, 3, 4):
        assert abs(purity(pure_density(StateVector(random_psi(rng, n)))) - 1.0) <= 1e-10


def test_mix_examples():
    rho = catalog.werner(0.3)
    np.testing.assert_array_equal(mix([1.0], [rho]).mat, rho.mat)
    out = mix([0.5, 0.5], [pure_density(basis("00")), pure_density(basis("11"))])
    np.testing.assert_array_equal(out.mat, np.diag([0.5, 0, 0, 0.5]))
    w = 0.3
    two_bell = mix([w, 1 - w], [catalog.bell_projector("phi+"), catalog.bell_projector("phi-")])
    expected = np.zeros((4, 4))
    expected[0, 0] = expected[3, 3] = 0.5
    expected[0, 3] = expected[3, 0] = 0.5 * (2 * w - 1)
    np.testing.assert_allclose(two_bell.mat, expected, atol=1e-15)


def test_mix_errors():
    a = catalog.fully_mixed(1)
    with pytest.raises(ValidationError):
        mix([0.5, 0.6], [a, a])
    with pytest.raises(ValidationError):
        mix([1.5, -0.5], [a, a])
    with pytest.raises(DimensionError):
        mix([0.5, 0.5], [a, catalog.fully_mixed(2)])


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_spin_flip_matches_definition(rng, n):
    rho = random_rho(rng, n)
    np.testing.assert_allclose(spin_flip_matrix(rho), flip_oracle(rho), atol=1e-15)


def test_spin_flip_examples():
    np.testing.assert_array_equal(spin_flip(pure_density(basis("01"))).mat, pure_density(basis("10")).mat)
    np.testing.assert_array_equal(spin_flip(catalog.fully_mixed(3)).mat, catalog.fully_mixed(3).mat)
    for w in (0.0, 0.25, 0.7, 1.0):
        rho = catalog.werner(w)
        assert np.max(np.abs(spin_flip(rho).mat - rho.mat)) <= 1e-12


def test_spin_flip_involution_and_purity(rng):
    for n in (1, 2, 3, 4):
        rho = DensityMatrix(random_rho(rng, n))
        flipped = spin_flip(rho)
        assert np.max(np.abs(spin_flip(flipped).mat - rho.mat)) <= 1e-12
        assert abs(purity(flipped) - purity(rho)) <= 1e-12
        assert np.min(np.linalg.eigvalsh(flipped.mat)) >= -1e-12


def test_spin_flip_vector_examples():
    # sigma_2|0> = i|1>, twice: i*i = -1
    np.testing.assert_allclose(spin_flip_vector(basis("00")).amplitudes, [0, 0, 0, -1], atol=0)
    # i * (-i) = 1
    np.testing.assert_allclose(spin_flip_vector(basis("01")).amplitudes, [0, 0, 1, 0], atol=0)
    psi_plus = catalog.bell_state("psi+")
    np.testing.assert_allclose(spin_flip_vector(psi_plus).amplitudes, psi_plus.amplitudes, atol=1e-16)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_spin_flip_vector_matches_definition(rng, n):
    psi = random_psi(rng, n)
    np.testing.assert_allclose(
        spin_flip_vector(StateVector(psi)).amplitudes, sigma2_n(n) @ psi.conj(), atol=1e-15
    )


def test_purity_examples():
    assert purity(catalog.fully_mixed(2)) == 0.25
    # werner(1/2): eigenvalues 5/8, 1/8, 1/8, 1/8 -> 25/64 + 3/64
    assert abs(purity(catalog.werner(0.5)) - 0.4375) <= 1e-15


def test_mixedness_examples():
    assert mixedness(pure_density(basis("0110"))) == 0.0
    assert mixedness(catalog.fully_mixed(2)) == 0.75
    assert abs(mixedness(catalog.mixed_cat(3, 0.25)) - 0.375) <= 1e-15


def test_s_n_squared_examples():
    assert abs(s_n_squared(pure_density(catalog.cat_state(2, 2 ** -0.5))) - 1.0) <= 1e-12
    assert abs(s_n_squared(pure_density(catalog.cat_state(4, 0.6))) - 0.9216) <= 1e-12
    w = catalog.w_state(0.3, 0.5j, np.sqrt(1 - 0.09 - 0.25))
    assert s_n_squared(pure_density(w)) == 0.0


def test_s_n_squared_against_dense_trace(rng):
    for n in (1, 2, 3, 4):
        rho = random_rho(rng, n)
        expected = np.trace(rho @ flip_oracle(rho)).real
        assert abs(s_n_squared(DensityMatrix(rho)) - expected) <= 1e-14


def test_s_n_squared_non_negative_no_negative_zero():
    val = s_n_squared(pure_density(basis("000")))
    assert val == 0.0 and np.copysign(1.0, val) == 1.0


def test_odd_qubit_pure_states_have_zero_s2(rng):
    # sigma_2^(x)n is antisymmetric for odd n, so <psi|sigma_2^(x)n|psi*> = 0
    for n in (1, 3, 5):
        y = sigma2_n(n)
        assert np.array_equal(y.T, -y)
        psi = random_psi(rng, n)
        assert abs(psi.conj() @ y @ psi.conj()) <= 1e-14
        assert s_n_squared(pure_density(StateVector(psi))) <= 1e-14


def test_hs_distance_examples():
    rho = catalog.werner(0.3)
    assert hs_distance_sq(rho, rho) == 0.0
    assert hs_distance_sq(pure_density(basis("00")), pure_density(basis("11"))) == 1.0
    cat = pure_density(catalog.cat_state(2, 0.8))
    assert abs(hs_distance_sq(cat, spin_flip(cat)) - 0.0784) <= 1e-12
    with pytest.raises(DimensionError):
        hs_distance_sq(rho, catalog.fully_mixed(1))


def test_hs_distance_symmetric_and_bounded(rng):
    for n in (1, 2, 3):
        a = DensityMatrix(random_rho(rng, n))
        b = DensityMatrix(random_rho(rng, n, rank=1))
        d = hs_distance_sq(a, b)
        assert d == hs_distance_sq(b, a)
        assert 0.0 <= d <= 1.0
        oracle = 0.5 * np.trace((a.mat - b.mat) @ (a.mat - b.mat)).real
        assert abs(d - oracle) <= 1e-14


def test_indistinguishability_examples():
    for w in (0.0, 0.4, 1.0):
        assert abs(indistinguishability(catalog.werner(w)) - 1.0) <= 1e-12
    assert indistinguishability(pure_density(basis("000"))) == 0.0
    assert abs(indistinguishability(catalog.mixed_cat(3, 0.25)) - 0.75) <= 1e-12


def test_n_tangle_examples():
    assert abs(n_tangle_pure(catalog.cat_state(2, 2 ** -0.5)) - 1.0) <= 1e-12
    assert abs(n_tangle_pure(catalog.cat_state(4, 2 ** -0.5)) - 1.0) <= 1e-12
    s = np.sqrt(1 / 3)
    assert n_tangle_pure(catalog.w_state(s, s, s)) <= 1e-15
    assert n_tangle_pure(catalog.cat_state(2, 1.0)) == 0.0


def test_n_tangle_equals_s2_on_pure(rng):
    for n in (1, 2, 3, 4, 5):
        psi = StateVector(random_psi(rng, n))
        assert abs(n_tangle_pure(psi) - s_n_squared(pure_density(psi))) <= 1e-10


@pytest.mark.parametrize("n,drop", [(2, {1}), (2, {2}), (3, {2}), (3, {1, 3}), (4, {4}), (4, {2, 3})])
def test_partial_trace_matches_oracle(rng, n, drop):
    rho = random_rho(rng, n)
    np.testing.assert_allclose(
        partial_trace(DensityMatrix(rho), drop).mat, partial_trace_oracle(rho, drop), atol=1e-15
    )


def test_partial_trace_examples():
    reduced = partial_trace(pure_density(catalog.cat_state(4, 0.6)), {4})
    assert np.max(np.abs(reduced.mat - catalog.mixed_cat(3, 0.36).mat)) <= 1e-12
    marg = partial_trace(catalog.bell_projector("phi+"), {2})
    np.testing.assert_allclose(marg.mat, np.eye(2) / 2, atol=1e-16)


def test_partial_trace_composes(rng):
    rho = DensityMatrix(random_rho(rng, 4))
    stepwise = partial_trace(partial_trace(rho, {3}), {2})
    direct = partial_trace(rho, {2, 3})
    np.testing.assert_allclose(stepwise.mat, direct.mat, atol=1e-15)


def test_partial_trace_errors():
    rho = catalog.fully_mixed(3)
    for drop in (set(), {1, 2, 3}, {0}, {4}):
        with pytest.raises(DimensionError):
            partial_trace(rho, drop)


def test_analyze_examples():
    rep = analyze(catalog.mems(1.0))
    assert abs(rep.purity - 1) <= 1e-12 and abs(rep.mixedness) <= 1e-12
    assert abs(rep.s_n_sq - 1) <= 1e-12 and abs(rep.indistinguishability - 1) <= 1e-12
    rep = analyze(catalog.bell_diagonal(0.1, 0.2, 0.3, 0.4))
    assert abs(rep.s_n_sq + rep.mixedness - 1) <= 1e-10


def test_fully_mixed_s2_is_two_to_minus_n():
    for n in (1, 2, 3, 4):
        rep = analyze(catalog.fully_mixed(n))
        assert rep.s_n_sq == pytest.approx(2.0 ** -n, abs=1e-15)
        assert rep.indistinguishability == 1.0
        assert rep.mixedness == pytest.approx(1 - 2.0 ** -n, abs=1e-15)


def test_basis_products_all_zero():
    for bits in ("0", "1", "01", "110", "10110"):
        rep = analyze(pure_density(basis(bits)))
        assert rep.s_n_sq == rep.mixedness == rep.indistinguishability == 0.0


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 5), rank=st.integers(1, 32), seed=st.integers(0, 2 ** 64 - 1))
def test_identities_hold_for_random_states(n, rank, seed):
    rho = random_density(n, min(rank, 2 ** n), seed)
    rep = analyze(rho)
    assert rep.residual_purity <= 1e-10
    assert rep.residual_symmetry <= 1e-10
    assert 2.0 ** -n - 1e-12 <= rep.purity <= 1 + 1e-12
    assert rep.s_n_sq >= 0.0


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), seed=st.integers(0, 2 ** 64 - 1))
def test_pure_state_coincidences(n, seed):
    psi = random_pure_state(n, seed)
    rep = analyze(pure_density(psi))
    assert abs(rep.mixedness) <= 1e-10
    assert abs(rep.s_n_sq - n_tangle_pure(psi)) <= 1e-10
    assert abs(rep.s_n_sq - rep.indistinguishability) <= 1e-10


@settings(max_examples=30, deadline=None)
@given(st.lists(st.floats(0, 1), min_size=4, max_size=4).filter(lambda w: sum(w) > 0.1))
def test_spin_flip_symmetric_complement(ws):
    total = sum(ws)
    ws = [w / total for w in ws]
    ws[3] = 1.0 - sum(ws[:3])
    rho = catalog.bell_diagonal(*[max(w, 0.0) for w in ws])
    assert np.max(np.abs(spin_flip(rho).mat - rho.mat)) <= 1e-12
    assert abs(s_n_squared(rho) + mixedness(rho) - 1.0) <= 1e-10
