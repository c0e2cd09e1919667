"""Independent re-validation of certificate bundles.

The verifier trusts nothing from the producer except the four claims in
the bundle: graph, mode, polynomial, claimed rank.  It re-derives the
orbit Gram matrix from the polynomial and checks, in order, coefficient
nonnegativity, the mode's root condition, circulant structure, positive
semidefiniteness, realness for the real modes, the zero-nonzero graph,
and the rank (two-sided: a certificate claiming rank k whose matrix has
rank k-1 is internally inconsistent and rejected).  Mathematical
failures are fail verdicts with residuals attached, never exceptions.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import (
    DEFAULT_TOL,
    CirculantMatrix,
    PatternReport,
    circulant_deviation,
    diagonalize_circulant,
    graph_of_matrix,
    is_psd,
    rank_with_tol,
)
from .graph import format_graph
from .polycert import (
    check_condition_C,
    check_condition_R_weight,
    is_balanced,
    ncv,
)


def _fmt17(x):
    return format(float(x), ".17g")


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    residual: float
    threshold: float
    detail: str = ""

    def to_json(self):
        return {
            "name": self.name,
            "passed": bool(self.passed),
            "residual": _fmt17(self.residual),
            "threshold": _fmt17(self.threshold),
            "detail": self.detail,
        }


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple

    @property
    def verdict(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.verdict

    def failed(self):
        return [c.name for c in self.checks if not c.passed]

    def to_json(self):
        return {
            "verdict": "pass" if self.verdict else "fail",
            "checks": [c.to_json() for c in self.checks],
        }


def verify_certificate(b, tol=DEFAULT_TOL):
    """Full eight-step validation of a certificate bundle."""
    checks = []
    poly = b.polynomial
    coeffs = poly.coeff_array()

    # (1) nonnegative coefficients (the dataclass enforces it on load,
    # so the residual here is informational)
    min_c = float(coeffs.min()) if coeffs.size else 0.0
    checks.append(CheckRecord(
        name="coefficients-nonnegative",
        passed=min_c >= 0.0,
        residual=max(0.0, -min_c),
        threshold=0.0,
    ))

    # (2) mode condition on the roots of unity
    if b.mode == "R-weight":
        cond = check_condition_R_weight(poly, b.graph, tol)
    else:
        cond = check_condition_C(poly, b.graph, tol)
    worst_vanish = 0.0
    worst_required = float("inf")
    for r in cond.roots:
        if r.must_vanish:
            worst_vanish = max(worst_vanish, r.magnitude)
        else:
            worst_required = min(worst_required, r.magnitude)
    detail = "" if cond.ok else "failing roots: %s" % cond.failures()
    checks.append(CheckRecord(
        name="root-condition",
        passed=cond.ok,
        residual=worst_vanish / max(poly.at_one(), 1e-300),
        threshold=tol.zero_eps,
        detail=detail,
    ))
    if b.mode == "R-balanced":
        bal = is_balanced(ncv(poly), tol)
        checks.append(CheckRecord(
            name="coefficient-vector-balanced",
            passed=bal,
            residual=0.0 if bal else 1.0,
            threshold=tol.zero_eps,
        ))

    # (3) rebuild the Gram matrix of the orbit
    M = b.matrix()
    scale = max(np.abs(M).max(), 1e-300)

    # (4) circulant structure
    dev = circulant_deviation(M)
    checks.append(CheckRecord(
        name="matrix-circulant",
        passed=dev <= tol.zero_eps,
        residual=dev,
        threshold=tol.zero_eps,
    ))

    # (5) positive semidefinite
    ev = np.linalg.eigvalsh((M + M.conj().T) / 2.0)
    top = np.abs(ev).max() if ev.size else 0.0
    neg = max(0.0, -float(ev.min())) if ev.size else 0.0
    checks.append(CheckRecord(
        name="matrix-psd",
        passed=is_psd(M, tol),
        residual=neg / max(top, 1e-300),
        threshold=tol.rank_eps,
    ))

    # (6) real entries for the real modes
    if b.mode in ("R-balanced", "R-weight"):
        imag = float(np.abs(M.imag).max()) / scale
        checks.append(CheckRecord(
            name="matrix-real",
            passed=imag <= tol.zero_eps,
            residual=imag,
            threshold=tol.zero_eps,
        ))

    # (7) zero-nonzero pattern equals the claimed graph
    got = graph_of_matrix(M, tol)
    if isinstance(got, PatternReport):
        checks.append(CheckRecord(
            name="matrix-graph",
            passed=False,
            residual=1.0,
            threshold=0.0,
            detail="pattern is not circulant",
        ))
    else:
        same = got.n == b.graph.n and got.residues == b.graph.residues
        checks.append(CheckRecord(
            name="matrix-graph",
            passed=same,
            residual=0.0 if same else 1.0,
            threshold=0.0,
            detail="" if same else "matrix has graph %s" % format_graph(got),
        ))

    # (8) rank equals the claim, two-sided
    rank = rank_with_tol(M, tol)
    checks.append(CheckRecord(
        name="matrix-rank",
        passed=rank == b.claimed_rank,
        residual=float(abs(rank - b.claimed_rank)),
        threshold=0.0,
        detail="measured rank %d, claimed %d" % (rank, b.claimed_rank),
    ))
    return VerificationReport(checks=tuple(checks))


def verify_matrix_claim(m, g, claims, tol=DEFAULT_TOL):
    """Check the requested claims about a hand-entered Hermitian matrix.

    ``claims`` may contain: "circulant" (True), "psd" (True),
    "rank" (an integer), "graph" (True, compared against g).  Each
    requested claim is checked independently.
    """
    if isinstance(m, CirculantMatrix):
        m = m.realize()
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if g is not None and m.shape[0] != g.n:
        raise ValueError("matrix size %d does not match graph order %d" % (m.shape[0], g.n))
    checks = []
    if claims.get("circulant"):
        dev = circulant_deviation(m)
        checks.append(CheckRecord(
            name="matrix-circulant",
            passed=dev <= tol.zero_eps,
            residual=dev,
            threshold=tol.zero_eps,
        ))
    if claims.get("psd"):
        ev = np.linalg.eigvalsh((m + m.conj().T) / 2.0)
        top = np.abs(ev).max() if ev.size else 0.0
        neg = max(0.0, -float(ev.min())) if ev.size else 0.0
        checks.append(CheckRecord(
            name="matrix-psd",
            passed=is_psd(m, tol),
            residual=neg / max(top, 1e-300),
            threshold=tol.rank_eps,
        ))
    if "rank" in claims and claims["rank"] is not None:
        rank = rank_with_tol(m, tol)
        checks.append(CheckRecord(
            name="matrix-rank",
            passed=rank == int(claims["rank"]),
            residual=float(abs(rank - int(claims["rank"]))),
            threshold=0.0,
            detail="measured rank %d, claimed %d" % (rank, int(claims["rank"])),
        ))
    if claims.get("graph"):
        got = graph_of_matrix(m, tol)
        if isinstance(got, PatternReport):
            checks.append(CheckRecord(
                name="matrix-graph", passed=False, residual=1.0, threshold=0.0,
                detail="pattern is not circulant",
            ))
        else:
            same = got.residues == g.residues
            checks.append(CheckRecord(
                name="matrix-graph",
                passed=same,
                residual=0.0 if same else 1.0,
                threshold=0.0,
                detail="" if same else "matrix has graph %s" % format_graph(got),
            ))
    if "eigenvalues" in claims and claims["eigenvalues"] is not None:
        lam = np.sort(np.real(diagonalize_circulant(m, tol)))
        want = np.sort(np.asarray(claims["eigenvalues"], dtype=float))
        resid = float(np.abs(lam - want).max()) if lam.shape == want.shape else float("inf")
        checks.append(CheckRecord(
            name="matrix-eigenvalues",
            passed=resid <= 1e-8,
            residual=resid,
            threshold=1e-8,
        ))
    return VerificationReport(checks=tuple(checks))
