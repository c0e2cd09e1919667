"""Built-in worked-example suite over four reference graphs.

The graphs are the 4-cycle, the 5-cycle, the complement of the 6-cycle
C(6,{2,3,4}), and the consecutive circulant C(10,{1,2,3,7,8,9}).  Each
fixture is a named check with a known integer or vector answer; the CLI
``fixtures`` command prints one pass/fail line per check and the
acceptance suite reuses the same list.
"""

import numpy as np

from .algebra import CirculantMatrix, diagonalize_circulant, is_psd
from .construct import (
    ParityError,
    consecutive_certificate,
    prime_certificate,
    rank_spectrum_consecutive,
    real_consecutive_certificate,
)
from .graph import new_graph
from .polycert import ncv
from .search import (
    BALANCED,
    COMPLEX,
    InternalInconsistencyError,
    min_terms_search,
    support_feasibility,
)
from .verify import verify_certificate, verify_matrix_claim


def _fixture_list(seed):
    c4 = new_graph(4, [1, -1])
    c5 = new_graph(5, [1, -1])
    c6c = new_graph(6, [2, -2, 3])
    c10 = new_graph(10, [1, 2, 3, -1, -2, -3])
    checks = []

    def add(name, fn):
        checks.append((name, fn))

    add("C4 mscr == 2",
        lambda: min_terms_search(c4, COMPLEX, seed=seed).k == 2)
    add("C4 mscrREAL == 3",
        lambda: min_terms_search(c4, BALANCED, seed=seed).k == 3)
    add("C4 consecutive certificate verifies at rank 2",
        lambda: (lambda b: b.claimed_rank == 2 and verify_certificate(b).verdict)(
            consecutive_certificate(c4)))
    add("C4 real-consecutive construction rejects even order",
        lambda: _raises(ParityError, lambda: real_consecutive_certificate(c4)))
    add("C4 rank spectrum covers 2,3,4 and verifies",
        lambda: _spectrum_ok(c4, [2, 3, 4]))

    add("C5 mscr == 3",
        lambda: min_terms_search(c5, COMPLEX, seed=seed).k == 3)
    add("C5 mscrREAL == 3",
        lambda: min_terms_search(c5, BALANCED, seed=seed).k == 3)
    add("C5 prime certificate verifies at rank 3",
        lambda: (lambda b: b.claimed_rank == 3 and verify_certificate(b).verdict)(
            prime_certificate(c5, seed=seed)))
    add("C5 real certificate has coefficient vector (sqrt(2cos(pi/5)),1,0,0,1)",
        lambda: _c5_vector_ok())
    add("C5 real representation matches the rotation formula",
        lambda: _c5_representation_ok())

    add("C(6,{2,3,4}) mscr == 4",
        lambda: min_terms_search(c6c, COMPLEX, seed=seed).k == 4)
    add("C(6,{2,3,4}) mscrREAL == 4",
        lambda: min_terms_search(c6c, BALANCED, seed=seed).k == 4)
    add("C(6,{2,3,4}) support {0,2,3,4} achieves",
        lambda: support_feasibility(c6c, (0, 2, 3, 4), COMPLEX, seed=seed).status == "achieves")
    add("C(6,{2,3,4}) support {0,2,4} is non-achieving",
        lambda: support_feasibility(c6c, (0, 2, 4), COMPLEX, seed=seed).status
        in ("infeasible", "forced-vanishing"))
    add("rank-3 indefinite matrix: circulant, graph, rank pass; psd fails",
        lambda: _rank3_matrix_ok(c6c))

    add("C(10,{1,2,3,7,8,9}) consecutive certificate verifies at rank 4",
        lambda: (lambda b: b.claimed_rank == 4 and verify_certificate(b).verdict)(
            consecutive_certificate(c10)))
    add("C(10,{1,2,3,7,8,9}) zero-forcing lower bound equals 4",
        lambda: c10.n - len(c10.residues) == 4)
    return checks


def _raises(exc, fn):
    try:
        fn()
    except exc:
        return True
    return False


def _spectrum_ok(g, expected_ranks):
    bundles = rank_spectrum_consecutive(g)
    if [b.claimed_rank for b in bundles] != expected_ranks:
        return False
    return all(verify_certificate(b).verdict for b in bundles)


def _c5_vector_ok():
    b = real_consecutive_certificate(new_graph(5, [1, -1]))
    x = ncv(b.polynomial).array()
    want = np.array([np.sqrt(2 * np.cos(np.pi / 5)), 1.0, 0.0, 0.0, 1.0])
    return bool(np.abs(x - want).max() < 1e-12)


def _c5_representation_ok():
    b = real_consecutive_certificate(new_graph(5, [1, -1]))
    rep = b.representation()
    i_arr = np.arange(5)
    ang = 2 * np.pi * i_arr / 5
    want_x = np.full(5, np.sqrt(2 * np.cos(np.pi / 5)))
    want_y = np.cos(ang) - np.sin(ang)
    want_z = np.cos(ang) + np.sin(ang)
    ok = (np.abs(rep[:, 0] - want_x).max() < 1e-12
          and np.abs(rep[:, 1] - want_y).max() < 1e-12
          and np.abs(rep[:, 4] - want_z).max() < 1e-12
          and np.abs(rep[:, 2:4]).max() < 1e-12)
    return bool(ok)


def _rank3_matrix_ok(g):
    m = CirculantMatrix.from_row([1, 0, -2, 3, -2, 0]).realize()
    rep = verify_matrix_claim(m, g, {"circulant": True, "rank": 3, "graph": True})
    if not rep.verdict:
        return False
    if verify_matrix_claim(m, g, {"psd": True}).verdict:
        return False
    if is_psd(m):
        return False
    lam = np.sort(np.real(diagonalize_circulant(m)))
    want = np.sort([0.0, 0.0, 0.0, 6.0, 6.0, -6.0])
    return bool(np.abs(lam - want).max() < 1e-8)


def run_fixtures(seed=0, verbose=False):
    """Run every fixture; returns (all_passed, internal_inconsistency)."""
    ok = True
    inconsistent = False
    for name, fn in _fixture_list(seed):
        try:
            passed = bool(fn())
        except InternalInconsistencyError:
            passed = False
            inconsistent = True
        except Exception as err:  # a fixture must never crash the suite
            passed = False
            if verbose:
                print("  error in %r: %s" % (name, err))
        ok = ok and passed
        if verbose:
            print("%s %s" % ("ok  " if passed else "FAIL", name))
    if verbose:
        print("fixtures:", "all passed" if ok else "FAILURES present")
    return ok, inconsistent
