"""Constructions checked against independent expansions and the verifier."""

import numpy as np
import pytest

from circrank.construct import (
    CertificateBundle,
    ConstructionFailedError,
    ParityError,
    RootSet,
    caratheodory_polynomial,
    consecutive_certificate,
    consecutive_polynomial,
    prime_certificate,
    rank_spectrum_consecutive,
    real_consecutive_certificate,
    shifted_real_polynomial,
)
from circrank.graph import UnsupportedFamilyError, new_graph
from circrank.polycert import (
    check_condition_C,
    eval_all_roots,
    is_balanced,
    ncv,
    reduce_mod,
    vanishing_exponents,
)
from circrank.search import COMPLEX, min_terms_search
from circrank.verify import verify_certificate

TWO_COS = 2 * np.cos(np.pi / 5)


def _oracle_consecutive(n, k):
    # independent expansion straight from the complex roots
    w = np.exp(2j * np.pi / n)
    roots = [w ** j for j in range(k + 1, n - k)]
    desc = np.poly(roots)
    return desc[::-1].real


def test_consecutive_polynomial_examples():
    assert np.abs(consecutive_polynomial(4, 1).coeff_array() - [1, 1, 0, 0]).max() < 1e-12
    p51 = consecutive_polynomial(5, 1)
    assert np.abs(p51.coeff_array() - [1, TWO_COS, 1, 0, 0]).max() < 1e-12
    p61 = consecutive_polynomial(6, 1)
    assert np.abs(p61.coeff_array() - [1, 2, 2, 1, 0, 0]).max() < 1e-12


def test_consecutive_polynomial_matches_oracle():
    for n in range(4, 21):
        for k in range(1, (n - 1) // 2):
            got = consecutive_polynomial(n, k).coeff_array()
            want = np.zeros(n)
            oracle = _oracle_consecutive(n, k)
            want[: len(oracle)] = oracle
            assert np.abs(got - want).max() < 1e-10, (n, k)


def test_consecutive_polynomial_positivity_and_symmetry():
    for n in range(4, 41):
        for k in range(1, (n - 1) // 2):
            p = consecutive_polynomial(n, k)
            coeffs = p.coeff_array()
            deg = n - 2 * k - 1
            assert p.term_count == n - 2 * k
            assert coeffs[: deg + 1].min() > 1e-10, (n, k)
            assert np.abs(coeffs[: deg + 1] - coeffs[deg::-1]).max() < 1e-9, (n, k)


def test_consecutive_polynomial_range_errors():
    with pytest.raises(ValueError):
        consecutive_polynomial(5, 2)  # k = floor(n/2) is the complete case
    with pytest.raises(ValueError):
        consecutive_polynomial(6, 0)
    with pytest.raises(ValueError):
        consecutive_polynomial(6, 3)


def test_shifted_real_polynomial_examples():
    q = shifted_real_polynomial(5, 1)
    assert np.abs(q.coeff_array() - [TWO_COS, 1, 0, 0, 1]).max() < 1e-12
    q72 = shifted_real_polynomial(7, 2)
    assert q72.term_count == 3
    assert is_balanced(ncv(q72))
    assert vanishing_exponents(q72) == {3, 4}
    with pytest.raises(ParityError):
        shifted_real_polynomial(4, 1)
    with pytest.raises(ValueError):
        shifted_real_polynomial(5, 2)


def test_shifted_matches_convolution_oracle():
    for n in range(5, 26, 2):
        for k in range(1, (n - 1) // 2):
            shift = k + (n + 1) // 2
            base = consecutive_polynomial(n, k).coeff_array()[: n - 2 * k]
            raw = np.concatenate([np.zeros(shift), base])
            want = reduce_mod(raw, n).coeff_array()
            got = shifted_real_polynomial(n, k).coeff_array()
            assert np.abs(got - want).max() < 1e-12


def test_shifted_balanced_sweep():
    for n in range(5, 40, 2):
        for k in range(1, (n - 1) // 2):
            q = shifted_real_polynomial(n, k)
            assert q.term_count == n - 2 * k
            assert is_balanced(ncv(q)), (n, k)


def test_root_set_validation():
    RootSet(n=6, exponents=frozenset({1, 5}))
    with pytest.raises(ValueError):
        RootSet(n=6, exponents=frozenset({1}))  # not self-conjugate
    with pytest.raises(ValueError):
        RootSet(n=6, exponents=frozenset({0, 1, 5}))


def test_caratheodory_examples():
    one = caratheodory_polynomial(RootSet(n=7, exponents=frozenset()))
    assert one.coeffs == (1, 0, 0, 0, 0, 0, 0)

    w = RootSet(n=5, exponents=frozenset({2, 3}))
    p = caratheodory_polynomial(w)
    assert p.term_count <= 3
    vals = eval_all_roots(p)
    assert max(abs(vals[j]) for j in (2, 3)) < 1e-8 * p.at_one()
    assert min(abs(vals[j]) for j in (1, 4)) > 1e-8 * p.at_one()

    w6 = RootSet(n=6, exponents=frozenset({1, 5}))
    p6 = caratheodory_polynomial(w6)
    assert p6.term_count <= 3
    assert {1, 5} <= vanishing_exponents(p6)


def test_caratheodory_random_rootsets():
    rng = np.random.default_rng(9)
    done = 0
    while done < 100:
        n = int(rng.integers(3, 21))
        reps = list(range(1, n // 2 + 1))
        picked = [j for j in reps if rng.random() < 0.5]
        if not picked:
            continue
        exps = frozenset(e for j in picked for e in (j, n - j))
        w = RootSet(n=n, exponents=exps)
        p = caratheodory_polynomial(w)
        assert p.term_count <= w.size + 1
        vals = eval_all_roots(p)
        assert max(abs(vals[j]) for j in exps) < 1e-8 * p.at_one()
        done += 1


def test_caratheodory_randomized_direction_still_valid():
    w = RootSet(n=11, exponents=frozenset({2, 9, 3, 8}))
    rng = np.random.default_rng(0)
    p = caratheodory_polynomial(w, rng=rng)
    assert p.term_count <= 5
    vals = eval_all_roots(p)
    assert max(abs(vals[j]) for j in w.exponents) < 1e-8 * p.at_one()


def test_prime_certificate_examples():
    b = prime_certificate(new_graph(5, [1]))
    assert b.claimed_rank == 3 and verify_certificate(b).verdict
    b = prime_certificate(new_graph(7, [1, 2]))
    assert b.claimed_rank == 3 and verify_certificate(b).verdict
    b = prime_certificate(new_graph(5, [1, 2]))  # K5
    assert b.claimed_rank == 1 and verify_certificate(b).verdict
    with pytest.raises(UnsupportedFamilyError):
        prime_certificate(new_graph(6, [1]))


def test_prime_certificates_all_sets_up_to_31():
    # rank formula and full verification across every valid connection
    # set on every prime order up to 31
    for p in [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]:
        reps = list(range(1, p // 2 + 1))
        for mask in range(1 << len(reps)):
            residues = [r for i, j in enumerate(reps) if mask >> i & 1
                        for r in (j, p - j)]
            g = new_graph(p, residues)
            b = prime_certificate(g, seed=0)
            assert b.claimed_rank == p - g.degree, str(g)
            assert verify_certificate(b).verdict, str(g)


def test_consecutive_certificate():
    b = consecutive_certificate(new_graph(10, [1, 2, 3]))
    assert b.claimed_rank == 4
    assert b.construction["lower_bound"] == 4
    assert verify_certificate(b).verdict
    b4 = consecutive_certificate(new_graph(4, [1]))
    assert b4.claimed_rank == 2 and verify_certificate(b4).verdict
    k6 = consecutive_certificate(new_graph(6, [1, 2, 3]))  # K6
    assert k6.claimed_rank == 1 and verify_certificate(k6).verdict
    with pytest.raises(UnsupportedFamilyError):
        consecutive_certificate(new_graph(6, [2, 3]))


def test_consecutive_certificate_c6_cycle_vs_search():
    g = new_graph(6, [1])
    b = consecutive_certificate(g)
    assert b.claimed_rank == 4
    assert verify_certificate(b).verdict
    # independent optimum from the exhaustive search
    assert min_terms_search(g, COMPLEX).k == 4


def test_real_consecutive_certificate():
    b = real_consecutive_certificate(new_graph(5, [1]))
    assert b.claimed_rank == 3 and b.mode == "R-balanced"
    assert verify_certificate(b).verdict
    b9 = real_consecutive_certificate(new_graph(9, [1, 2]))
    assert b9.claimed_rank == 5 and verify_certificate(b9).verdict
    k7 = real_consecutive_certificate(new_graph(7, [1, 2, 3]))
    assert k7.claimed_rank == 1 and verify_certificate(k7).verdict
    with pytest.raises(ParityError):
        real_consecutive_certificate(new_graph(4, [1]))


def test_rank_spectrum():
    for raw, n, expected in [
        ([1], 6, [4, 5, 6]),
        ([1], 4, [2, 3, 4]),
        ([1, 2, 3], 10, [4, 5, 6, 7, 8, 9, 10]),
    ]:
        g = new_graph(n, raw)
        bundles = rank_spectrum_consecutive(g)
        assert [b.claimed_rank for b in bundles] == expected
        for b in bundles:
            assert b.polynomial.term_count == b.claimed_rank
            assert check_condition_C(b.polynomial, g).ok
            assert verify_certificate(b).verdict
    with pytest.raises(UnsupportedFamilyError):
        rank_spectrum_consecutive(new_graph(5, [1, 2]))  # complete
    with pytest.raises(UnsupportedFamilyError):
        rank_spectrum_consecutive(new_graph(6, [2, 3]))


def test_bundle_json_round_trip(tmp_path):
    b = consecutive_certificate(new_graph(10, [1, 2, 3]))
    path = tmp_path / "bundle.json"
    b.save(path)
    again = CertificateBundle.load(path)
    assert again.graph == b.graph
    assert again.polynomial == b.polynomial
    assert again.claimed_rank == b.claimed_rank
    assert again.mode == b.mode


def test_bundle_mode_validation():
    b = consecutive_certificate(new_graph(4, [1]))
    with pytest.raises(ValueError):
        CertificateBundle(graph=b.graph, mode="X", polynomial=b.polynomial,
                          claimed_rank=2)
