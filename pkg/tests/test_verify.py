"""Verifier behavior: fixtures pass, corrupted claims fail loudly."""

import numpy as np
import pytest

from circrank.algebra import CirculantMatrix
from circrank.construct import (
    CertificateBundle,
    consecutive_certificate,
    prime_certificate,
    real_consecutive_certificate,
)
from circrank.graph import new_graph
from circrank.polycert import NonnegPolynomial
from circrank.search import COMPLEX, min_terms_search
from circrank.verify import verify_certificate, verify_matrix_claim


def test_fixture_certificates_pass():
    assert verify_certificate(consecutive_certificate(new_graph(4, [1]))).verdict
    rep = verify_certificate(real_consecutive_certificate(new_graph(5, [1])))
    assert rep.verdict
    names = [c.name for c in rep.checks]
    assert "matrix-real" in names and "coefficient-vector-balanced" in names
    assert verify_certificate(prime_certificate(new_graph(7, [1]))).verdict


def test_wrong_rank_rejected_two_sided():
    b = consecutive_certificate(new_graph(10, [1, 2, 3]))
    for wrong in (b.claimed_rank - 1, b.claimed_rank + 1):
        bad = CertificateBundle(graph=b.graph, mode=b.mode,
                                polynomial=b.polynomial, claimed_rank=wrong)
        rep = verify_certificate(bad)
        assert not rep.verdict
        assert "matrix-rank" in rep.failed()


def test_wrong_graph_rejected():
    b = consecutive_certificate(new_graph(6, [1]))
    bad = CertificateBundle(graph=new_graph(6, [2, 3]), mode="C",
                            polynomial=b.polynomial, claimed_rank=b.claimed_rank)
    rep = verify_certificate(bad)
    assert not rep.verdict
    assert "root-condition" in rep.failed()
    assert "matrix-graph" in rep.failed()


def test_perturbed_coefficient_rejected():
    b = consecutive_certificate(new_graph(10, [1, 2, 3]))
    coeffs = np.array(b.polynomial.coeff_array())
    coeffs[5] += 1e-3  # index outside the original support
    bad = CertificateBundle(graph=b.graph, mode="C",
                            polynomial=NonnegPolynomial.from_coeffs(coeffs),
                            claimed_rank=b.claimed_rank)
    assert not verify_certificate(bad).verdict


def test_unbalanced_real_bundle_rejected():
    # a valid complex certificate whose vector is not balanced must fail
    # the R-balanced mode checks
    b = consecutive_certificate(new_graph(5, [1]))
    bad = CertificateBundle(graph=b.graph, mode="R-balanced",
                            polynomial=b.polynomial, claimed_rank=b.claimed_rank)
    rep = verify_certificate(bad)
    assert not rep.verdict
    assert "coefficient-vector-balanced" in rep.failed()


def test_condition_and_pattern_checks_agree():
    # check (2) and check (7) are two routes to the same statement; on
    # any bundle they must pass or fail together
    rng = np.random.default_rng(17)
    bundles = [
        consecutive_certificate(new_graph(8, [1, 2])),
        real_consecutive_certificate(new_graph(9, [1])),
        prime_certificate(new_graph(11, [1, 3])),
    ]
    for _ in range(25):
        n = int(rng.integers(2, 10))
        coeffs = rng.random(n)
        coeffs[rng.random(n) < 0.4] = 0.0
        if coeffs.max() == 0.0:
            coeffs[0] = 1.0
        poly = NonnegPolynomial.from_coeffs(coeffs)
        graphs = all_graphs_for(n, rng)
        bundles.append(CertificateBundle(
            graph=graphs, mode="C", polynomial=poly,
            claimed_rank=poly.term_count))
    for b in bundles:
        rep = verify_certificate(b)
        by_name = {c.name: c.passed for c in rep.checks}
        assert by_name["root-condition"] == by_name["matrix-graph"], b.graph


def all_graphs_for(n, rng):
    reps = list(range(1, n // 2 + 1))
    residues = [r for j in reps if rng.random() < 0.5 for r in (j, n - j)]
    return new_graph(n, residues)


def test_search_witnesses_verify():
    for g in [new_graph(6, [2, 3]), new_graph(8, [1, 3])]:
        res = min_terms_search(g, COMPLEX)
        assert verify_certificate(res.certificate).verdict


def test_matrix_claim_worked_example():
    g = new_graph(6, [2, 3])
    m = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0]).realize()
    rep = verify_matrix_claim(m, g, {"circulant": True, "rank": 3, "graph": True,
                                     "eigenvalues": [0, 0, 0, 6, 6, -6]})
    assert rep.verdict
    assert not verify_matrix_claim(m, g, {"psd": True}).verdict


def test_matrix_claim_all_ones_and_identity():
    k5 = new_graph(5, [1, 2])
    rep = verify_matrix_claim(np.ones((5, 5)), k5,
                              {"psd": True, "circulant": True, "rank": 1, "graph": True})
    assert rep.verdict
    bad = verify_matrix_claim(np.eye(3), new_graph(3, [1]), {"graph": True})
    assert not bad.verdict


def test_matrix_claim_size_mismatch():
    with pytest.raises(ValueError):
        verify_matrix_claim(np.ones((4, 4)), new_graph(5, [1]), {"psd": True})
    with pytest.raises(ValueError):
        verify_matrix_claim(np.ones((4, 3)), None, {"psd": True})


def test_report_json():
    rep = verify_certificate(consecutive_certificate(new_graph(4, [1])))
    data = rep.to_json()
    assert data["verdict"] == "pass"
    assert all(isinstance(c["residual"], str) for c in data["checks"])
