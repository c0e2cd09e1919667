"""Fourier, orbit and Gram identities, with direct-summation oracles."""

import numpy as np
import pytest

from circrank.algebra import (
    CirculantMatrix,
    PatternReport,
    Tolerance,
    a_matrix,
    circulant_deviation,
    diagonalize_circulant,
    fourier_matrix,
    gram,
    graph_of_matrix,
    is_psd,
    orbit,
    rank_with_tol,
    u_matrix,
)
from circrank.graph import new_graph


def test_fourier_small_cases():
    assert np.allclose(fourier_matrix(1), [[1.0]])
    assert np.allclose(fourier_matrix(2), np.array([[1, 1], [1, -1]]) / np.sqrt(2))
    f4 = fourier_matrix(4)
    assert np.abs(f4[1] - np.array([1, 1j, -1, -1j]) / 2).max() < 1e-15


def test_fourier_unitary_up_to_64():
    for n in range(1, 65):
        F = fourier_matrix(n)
        assert np.abs(F @ F.conj().T - np.eye(n)).max() < 1e-9


def test_generators_match_worked_examples():
    assert np.allclose(u_matrix(4), np.diag([1, 1j, -1, -1j]))
    assert np.allclose(u_matrix(1), [[1.0]])
    assert np.allclose(u_matrix(2), np.diag([1, -1]))
    a4 = a_matrix(4)
    want = np.array([
        [1, 0, 0, 0],
        [0, 0, 0, -1],
        [0, 0, -1, 0],
        [0, 1, 0, 0],
    ], dtype=float)
    assert np.abs(a4 - want).max() < 1e-15
    assert np.allclose(a_matrix(2), np.diag([1.0, -1.0]))
    a3 = a_matrix(3)
    th = 2 * np.pi / 3
    want3 = np.array([
        [1, 0, 0],
        [0, np.cos(th), -np.sin(th)],
        [0, np.sin(th), np.cos(th)],
    ])
    assert np.abs(a3 - want3).max() < 1e-15


def test_generator_power_identity():
    for n in range(1, 65):
        U = u_matrix(n)
        A = a_matrix(n)
        assert np.abs(np.linalg.matrix_power(U, n) - np.eye(n)).max() < 1e-9
        assert np.abs(np.linalg.matrix_power(A, n) - np.eye(n)).max() < 1e-9
        assert np.abs(A @ A.T - np.eye(n)).max() < 1e-12


def test_orbit_examples():
    x = np.array([1.0, 1.0, 0.0, 0.0])
    rep = orbit(u_matrix(4), x)
    want = np.array([
        [1, 1, 0, 0],
        [1, 1j, 0, 0],
        [1, -1, 0, 0],
        [1, -1j, 0, 0],
    ])
    assert np.abs(rep - want).max() < 1e-14
    rep_a = orbit(a_matrix(4), x)
    want_a = np.array([
        [1, 1, 0, 0],
        [1, 0, 0, 1],
        [1, -1, 0, 0],
        [1, 0, 0, -1],
    ], dtype=float)
    assert np.abs(rep_a - want_a).max() < 1e-14
    zero = orbit(u_matrix(5), np.zeros(5))
    assert np.abs(zero).max() == 0.0


def _gram_oracle(rep):
    # direct inner-product loop, conjugating the second argument
    n = rep.shape[0]
    out = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[i, j] = np.sum(rep[i] * np.conj(rep[j]))
    return out


def test_gram_first_row_example():
    rep = orbit(u_matrix(4), np.array([1.0, 1.0, 0.0, 0.0]))
    G = gram(rep)
    assert np.abs(G - _gram_oracle(rep)).max() < 1e-14
    assert np.abs(G[0] - np.array([2, 1 - 1j, 0, 1 + 1j])).max() < 1e-14


def test_gram_trivial_cases():
    assert np.abs(gram(orbit(u_matrix(3), np.zeros(3)))).max() == 0.0
    e0 = np.eye(1, 5, 0)[0]
    assert np.abs(gram(orbit(u_matrix(5), e0)) - np.ones((5, 5))).max() < 1e-12


def test_diagonalize_worked_example():
    c = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0])
    lam = np.sort(np.real(diagonalize_circulant(c)))
    assert np.abs(lam - np.sort([0, 0, 0, 6, 6, -6])).max() < 1e-8
    ident = CirculantMatrix.from_row([1, 0, 0, 0, 0])
    assert np.abs(diagonalize_circulant(ident) - 1.0).max() < 1e-12
    ones = CirculantMatrix.from_row([1] * 6)
    lam = diagonalize_circulant(ones)
    assert abs(lam[0] - 6) < 1e-12 and np.abs(lam[1:]).max() < 1e-12


def test_diagonalize_rejects_noncirculant():
    m = np.eye(4)
    m[0, 1] = 5.0
    with pytest.raises(ValueError):
        diagonalize_circulant(m)


def test_rank_and_psd():
    c = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0]).realize()
    assert rank_with_tol(c) == 3
    assert not is_psd(c)
    assert rank_with_tol(np.zeros((4, 4))) == 0
    assert is_psd(np.zeros((3, 3)))
    assert rank_with_tol(np.ones((7, 7))) == 1
    G = gram(orbit(u_matrix(6), np.array([1.0, 0.5, 0, 0, 0.25, 0])))
    assert is_psd(G)


def test_graph_of_matrix():
    c = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0]).realize()
    g = graph_of_matrix(c)
    assert g == new_graph(6, [2, 3, 4])
    assert graph_of_matrix(np.eye(5)) == new_graph(5, [])
    assert graph_of_matrix(np.ones((4, 4))) == new_graph(4, [1, 2, 3])
    m = np.zeros((4, 4))
    m[0, 1] = m[1, 0] = 1.0
    rep = graph_of_matrix(m)
    assert isinstance(rep, PatternReport)
    assert rep.matrix()[0, 1]


def test_scale_invariance_of_pattern():
    c = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0]).realize()
    assert graph_of_matrix(1e-8 * c) == graph_of_matrix(1e6 * c)


def test_u_gram_spectral_identity():
    # U-orbit Gram = F Lambda F* with Lambda = n diag(x^2); checked as
    # diag(F* G F) = n x^2 in index order plus vanishing off-diagonal
    rng = np.random.default_rng(3)
    for n in range(3, 33):
        x = rng.standard_normal(n)
        G = gram(orbit(u_matrix(n), x))
        F = fourier_matrix(n)
        D = F.conj().T @ G @ F
        assert np.abs(np.diag(D) - n * x ** 2).max() < 1e-8
        assert np.abs(D - np.diag(np.diag(D))).max() < 1e-8


def test_u_gram_rank_is_support():
    rng = np.random.default_rng(4)
    for n in range(3, 17):
        for _ in range(20):
            x = rng.standard_normal(n)
            x[rng.random(n) < 0.5] = 0.0
            G = gram(orbit(u_matrix(n), x))
            assert rank_with_tol(G) == int(np.count_nonzero(x))


def test_a_gram_real_part_identity():
    rng = np.random.default_rng(5)
    for n in range(3, 17):
        x = rng.standard_normal(n)
        Gu = gram(orbit(u_matrix(n), x))
        Ga = gram(orbit(a_matrix(n), x))
        assert np.abs(Ga - Gu.real).max() < 1e-8


def test_a_gram_spectrum():
    rng = np.random.default_rng(6)
    for n in range(3, 17):
        x = rng.standard_normal(n)
        Ga = gram(orbit(a_matrix(n), x))
        ev = np.sort(np.linalg.eigvalsh(Ga))
        want = [n * x[0] ** 2]
        want += [n / 2 * (x[j] ** 2 + x[n - j] ** 2) for j in range(1, n)]
        assert np.abs(ev - np.sort(want)).max() < 1e-8


def test_balanced_grams_equal():
    rng = np.random.default_rng(7)
    for n in range(3, 17):
        x = rng.standard_normal(n)
        x = (x + x[(-np.arange(n)) % n]) / 2  # balance it
        Gu = gram(orbit(u_matrix(n), x))
        Ga = gram(orbit(a_matrix(n), x))
        assert np.abs(Gu - Ga).max() < 1e-8


def test_u_gram_is_circulant():
    rng = np.random.default_rng(8)
    for n in range(3, 17):
        x = rng.standard_normal(n)
        G = gram(orbit(u_matrix(n), x))
        assert circulant_deviation(G) < 1e-9


def test_circulant_hermitian_check():
    herm = CirculantMatrix.from_row([2, 1 - 1j, 0, 1 + 1j])
    assert herm.is_hermitian()
    not_herm = CirculantMatrix.from_row([2, 1j, 0, 1j])
    assert not not_herm.is_hermitian()


def test_matrix_json_round_trip():
    c = CirculantMatrix.from_row([1, 0.5 + 0.25j, 0, 0.5 - 0.25j])
    again = CirculantMatrix.from_json(c.to_json())
    assert again == c


def test_tolerance_validation():
    with pytest.raises(ValueError):
        Tolerance(zero_eps=-1.0)
