"""Exhaustive minimum-term polynomial search via linear feasibility.

Finding a polynomial with nonnegative coefficients whose values vanish
on a prescribed set of nth roots of unity is a linear feasibility
question: the coefficient vector must be orthogonal to the real and
imaginary parts of the corresponding Vandermonde rows.  Restricting the
coefficients to a candidate support and normalizing p(1) = 1 turns the
feasible set into a compact polytope, and the support "achieves" the
graph exactly when that polytope contains a point that stays nonzero at
every connection-set root.  That last part is decided exactly (up to LP
tolerance) by optimizing the real and imaginary parts of p(w^j) over the
polytope: the value is forced to vanish iff all optima are zero.

Three modes:

  complex    terms objective; p(w^j) = 0 off S        (Hermitian orbits)
  balanced   terms objective; support symmetric, coefficients paired
  weight     weight objective; Re p(w^j) = 0 off S    (real orbits)

Only one representative of each conjugate pair {j, n-j} contributes
equality rows, since the conjugate constraint is redundant for real
coefficients.

The search enumerates supports level by level in lexicographic order;
the reported optimum is min-k and then the lexicographically first
achieving support, independent of chunking or thread count.  A support
is declared non-achieving only through LP infeasibility or the
forced-vanishing test, never through a failure to sample a witness.
"""

import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import kernels
from .algebra import DEFAULT_TOL
from .construct import CertificateBundle
from .graph import format_graph, is_consecutive, is_prime, mr_lower_bound, zero_forcing_consecutive
from .polycert import (
    NonnegPolynomial,
    check_condition_C,
    check_condition_R_weight,
    clean_coeffs,
    is_balanced,
    ncv,
    weight,
)

COMPLEX = "complex"
BALANCED = "balanced"
WEIGHT = "weight"
MODES = (COMPLEX, BALANCED, WEIGHT)

_BUNDLE_MODE = {COMPLEX: "C", BALANCED: "R-balanced", WEIGHT: "R-weight"}

_WITNESS_RETRIES = 16
_CHUNK = 64


class CapExceededError(ValueError):
    """Raised when a search is requested beyond the combinatorial cap."""


class InternalInconsistencyError(RuntimeError):
    """A theorem value and a search value disagree: a bug, not data."""


@dataclass(frozen=True)
class SupportVerdict:
    support: tuple
    status: str  # achieves | infeasible | forced-vanishing | undetermined
    witness: NonnegPolynomial = None
    diagnostics: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class SearchResult:
    graph: object
    mode: str
    k: int
    certificate: CertificateBundle
    certified_optimal: bool
    supports_examined: int

    def to_json(self):
        return {
            "graph": format_graph(self.graph),
            "mode": self.mode,
            "k": int(self.k),
            "certificate": self.certificate.to_json(),
            "certified_optimal": self.certified_optimal,
            "supports_examined": int(self.supports_examined),
        }


@lru_cache(maxsize=64)
def _trig_tables(n):
    grid = 2.0 * np.pi * np.outer(np.arange(n), np.arange(n)) / n
    cos = np.cos(grid)
    sin = np.sin(grid)
    cos.setflags(write=False)
    sin.setflags(write=False)
    return cos, sin


def _pair_reps(n):
    """One exponent per conjugate pair {j, n-j}, j = 1..floor(n/2)."""
    return list(range(1, n // 2 + 1))


def _blocks(n):
    """Index blocks closed under i -> n-i: {0}, {n/2} when even, pairs."""
    blocks = [(0,)]
    if n % 2 == 0 and n >= 2:
        blocks.append((n // 2,))
    for j in range(1, (n + 1) // 2):
        blocks.append((j, n - j))
    return blocks


def _support_rng(seed, n, mode, t):
    key = ("%d:%d:%s:%s" % (seed, n, mode, ",".join(map(str, t)))).encode()
    return np.random.default_rng([seed & 0xFFFFFFFF, zlib.crc32(key)])


def _symmetric(t, n):
    s = set(t)
    return all((n - i) % n in s for i in s)


def _balanced_reps(t, n):
    """Representative index and multiplicity for each block touched by a
    symmetric support."""
    reps = []
    seen = set()
    for i in t:
        r = min(i, (n - i) % n)
        if r not in seen:
            seen.add(r)
            reps.append((r, 1 if (2 * r) % n == 0 else 2))
    reps.sort()
    return reps


def _lp_system(g, t, mode):
    """Equality rows (vanishing + normalization) and the nonvanishing
    objective rows for one support.

    Returns (A, b, objectives) where objectives maps each connection
    pair representative j to the list of row vectors whose max/min over
    the polytope decide whether p(w^j) is forced to vanish.
    """
    n = g.n
    s = set(g.residues)
    cos, sin = _trig_tables(n)
    reps = _pair_reps(n)
    if mode == BALANCED:
        blocks = _balanced_reps(t, n)
        cols = [r for r, _ in blocks]
        mult = np.array([m for _, m in blocks], dtype=float)
        # phi_r(j): 1 for r=0, (-1)^j for r=n/2, 2cos(2 pi r j / n) else
        def row(j):
            out = np.empty(len(cols))
            for a, (r, m) in enumerate(blocks):
                out[a] = cos[r, j] * m
            return out

        rows = [row(j) for j in reps if j not in s]
        norm = mult
        objectives = {j: [row(j)] for j in reps if j in s}
    else:
        idx = np.array(t, dtype=int)

        def rows_for(j):
            out = [cos[idx, j]]
            if (2 * j) % n != 0 and mode == COMPLEX:
                out.append(sin[idx, j])
            return out

        rows = []
        for j in reps:
            if j in s:
                continue
            rows.append(cos[idx, j])
            if (2 * j) % n != 0 and mode == COMPLEX:
                rows.append(sin[idx, j])
        norm = np.ones(len(t))
        objectives = {j: rows_for(j) for j in reps if j in s}
    A = np.vstack(rows + [norm]) if rows else norm[None, :]
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    return A, b, objectives


def _coeffs_from_vars(x, t, mode, n):
    coeffs = np.zeros(n)
    if mode == BALANCED:
        for val, (r, _) in zip(x, _balanced_reps(t, n)):
            coeffs[r] = val
            coeffs[(n - r) % n] = val
    else:
        coeffs[list(t)] = x
    return clean_coeffs(coeffs)


def _witness_ok(poly, g, t, mode, tol):
    if mode == COMPLEX:
        if poly.support != tuple(t):
            return False
        return check_condition_C(poly, g, tol).ok
    if mode == BALANCED:
        if poly.support != tuple(t):
            return False
        v = ncv(poly)
        return is_balanced(v, tol) and check_condition_C(poly, g, tol).ok
    # weight mode: the witness only needs to realize the same weight
    wt = weight(ncv(poly), tol)
    target = len({i for i in range(g.n) if i in set(t) or (g.n - i) % g.n in set(t)})
    if wt != target:
        return False
    return check_condition_R_weight(poly, g, tol).ok


def support_feasibility(g, t, mode, tol=DEFAULT_TOL, seed=0):
    """Decide whether coefficients supported on t can certify C(n,S).

    Procedure: (a) LP feasibility of the vanishing equalities over the
    simplex p(1) = 1; (b) if feasible, optimize the real (and, in
    complex mode, imaginary) part of p(w^j) for each connection pair; a
    pair whose four optima all sit below zero_eps forces vanishing and
    kills the support; (c) otherwise draw a strictly positive random
    convex combination of the collected LP optimizer points until the
    mode's condition check accepts it (at most 16 draws).  LP trouble
    surfaces as status "undetermined", never as a rejection.
    """
    if mode not in MODES:
        raise ValueError("unknown mode %r" % (mode,))
    n = g.n
    t = tuple(sorted(set(int(i) for i in t)))
    if any(i < 0 or i >= n for i in t):
        raise ValueError("support indices must lie in 0..n-1")
    if mode == BALANCED and not _symmetric(t, n):
        raise ValueError("balanced mode requires a support closed under i -> n-i")
    if not t:
        return SupportVerdict(support=t, status="infeasible",
                              diagnostics={"reason": "empty support"})

    A, b, objectives = _lp_system(g, t, mode)
    status, x0 = kernels.feasible_point(A, b)
    if status == kernels.INFEASIBLE:
        return SupportVerdict(support=t, status="infeasible",
                              diagnostics={"lp_status": int(status)})
    if status != kernels.OPTIMAL:
        return SupportVerdict(support=t, status="undetermined",
                              diagnostics={"lp_status": int(status)})

    points = [x0]
    per_root = {}
    for j, obj_rows in sorted(objectives.items()):
        extremes = []
        for row in obj_rows:
            for sign in (1.0, -1.0):
                st, x, val = kernels.solve_min(A, b, sign * row)
                if st != kernels.OPTIMAL:
                    return SupportVerdict(
                        support=t, status="undetermined",
                        diagnostics={"lp_status": int(st), "at_root": j},
                    )
                extremes.append(sign * val)
                points.append(x)
        per_root[j] = [float(v) for v in extremes]
        if max(abs(v) for v in extremes) < tol.zero_eps:
            return SupportVerdict(
                support=t, status="forced-vanishing",
                diagnostics={"per_root": per_root, "forced_at": j},
            )

    rng = _support_rng(seed, n, mode, t)
    pts = np.array(points)
    for attempt in range(_WITNESS_RETRIES):
        lam = rng.dirichlet(np.ones(len(points)))
        coeffs = _coeffs_from_vars(lam @ pts, t, mode, n)
        poly = NonnegPolynomial.from_coeffs(coeffs, n=n)
        if _witness_ok(poly, g, t, mode, tol):
            return SupportVerdict(
                support=t, status="achieves", witness=poly,
                diagnostics={"per_root": per_root, "attempts": attempt + 1},
            )
    return SupportVerdict(
        support=t, status="undetermined",
        diagnostics={"per_root": per_root, "reason": "witness sampling exhausted"},
    )


def enumerate_supports(n, k, mode):
    """All candidate supports at level k, lexicographically sorted.

    complex: every index set of size k.  balanced: symmetric index sets
    of size k (unions of whole blocks).  weight: index sets of weight k,
    i.e. touching blocks of total size k, each pair block in any of its
    three touched states.
    """
    if mode == COMPLEX:
        return list(combinations(range(n), k))
    blocks = _blocks(n)
    out = []
    if mode == BALANCED:
        def rec(idx, remaining, chosen):
            if remaining == 0:
                out.append(tuple(sorted(chosen)))
                return
            if idx == len(blocks):
                return
            rec(idx + 1, remaining, chosen)
            blk = blocks[idx]
            if len(blk) <= remaining:
                rec(idx + 1, remaining - len(blk), chosen + list(blk))

        rec(0, k, [])
        return sorted(out)
    if mode == WEIGHT:
        def rec(idx, remaining, chosen):
            if remaining == 0:
                out.append(tuple(sorted(chosen)))
                return
            if idx == len(blocks):
                return
            rec(idx + 1, remaining, chosen)
            blk = blocks[idx]
            if len(blk) <= remaining:
                if len(blk) == 1:
                    rec(idx + 1, remaining - 1, chosen + list(blk))
                else:
                    for touch in ([blk[0]], [blk[1]], list(blk)):
                        rec(idx + 1, remaining - 2, chosen + touch)

        rec(0, k, [])
        return sorted(set(out))
    raise ValueError("unknown mode %r" % (mode,))


def min_terms_search(g, mode, cap=20, seed=0, jobs=1, tol=DEFAULT_TOL, progress=None):
    """Smallest k for which some level-k support achieves C(n,S).

    Enumerates k = 1, 2, ... and inside each level scans supports in
    lexicographic order (in fixed-size chunks so the result and the
    examined count do not depend on the worker count).  Returns a
    SearchResult whose certificate is the witness bundle; the result is
    flagged not certified-optimal when any lower-level support came back
    undetermined.
    """
    if mode not in MODES:
        raise ValueError("unknown mode %r" % (mode,))
    n = g.n
    if n > cap:
        raise CapExceededError("n=%d exceeds the search cap %d" % (n, cap))

    examined = 0
    undetermined_below = False
    pool = ThreadPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for k in range(1, n + 1):
            supports = enumerate_supports(n, k, mode)
            found = None
            level_undetermined = False
            for start in range(0, len(supports), _CHUNK):
                chunk = supports[start:start + _CHUNK]
                if pool is not None:
                    verdicts = list(pool.map(
                        lambda t: support_feasibility(g, t, mode, tol, seed), chunk
                    ))
                else:
                    verdicts = [support_feasibility(g, t, mode, tol, seed) for t in chunk]
                examined += len(chunk)
                for v in verdicts:
                    if v.status == "achieves" and found is None:
                        found = v
                    elif v.status == "undetermined":
                        level_undetermined = True
                if found is not None:
                    break
            if progress is not None:
                progress(k, len(supports), examined, found is not None)
            if found is not None:
                bundle = CertificateBundle(
                    graph=g,
                    mode=_BUNDLE_MODE[mode],
                    polynomial=found.witness,
                    claimed_rank=k,
                    construction={
                        "method": "search",
                        "mode": mode,
                        "support": [int(i) for i in found.support],
                        "level": k,
                    },
                    seed=seed,
                )
                return SearchResult(
                    graph=g,
                    mode=mode,
                    k=k,
                    certificate=bundle,
                    certified_optimal=not undetermined_below,
                    supports_examined=examined,
                )
            undetermined_below = undetermined_below or level_undetermined
    finally:
        if pool is not None:
            pool.shutdown()
    raise InternalInconsistencyError(
        "no achieving support found up to k=n; the full support always achieves"
    )


def sampling_oracle(g, t, mode, samples=10000, seed=0, tol=DEFAULT_TOL):
    """Independent randomized witness finder used to cross-check the LP
    path.

    Draws random combinations from the nullspace of the vanishing
    equalities restricted to t, keeps the nonnegative ones, and returns
    the first normalized draw that passes the mode's condition check.
    Absence of a witness is a legitimate outcome; this routine is never
    used as the primary decision.
    """
    if mode not in MODES:
        raise ValueError("unknown mode %r" % (mode,))
    n = g.n
    t = tuple(sorted(set(int(i) for i in t)))
    if not t:
        return None
    if mode == BALANCED and not _symmetric(t, n):
        raise ValueError("balanced mode requires a symmetric support")
    A, _, _ = _lp_system(g, t, mode)
    A = A[:-1]  # drop the normalization row: nullspace of vanishing only
    nvars = A.shape[1]
    if A.shape[0] == 0:
        basis = np.eye(nvars)
    else:
        _, sv, Vt = np.linalg.svd(A)
        rank = int(np.count_nonzero(sv > (sv[0] if sv.size else 0.0) * 1e-12))
        basis = Vt[rank:]
    if basis.shape[0] == 0:
        return None
    rng = _support_rng(seed, n, mode + "-oracle", t)
    draws = rng.standard_normal((samples, basis.shape[0])) @ basis
    sums = draws.sum(axis=1)
    ok = (draws.min(axis=1) >= 0.0) & (sums > 1e-12)
    for i in np.flatnonzero(ok):
        coeffs = _coeffs_from_vars(draws[i] / sums[i], t, mode, n)
        poly = NonnegPolynomial.from_coeffs(coeffs, n=n)
        if mode == WEIGHT:
            if check_condition_R_weight(poly, g, tol).ok:
                return poly
        elif check_condition_C(poly, g, tol).ok:
            return poly
    return None


def parameter_report(g, cap=20, seed=0, tol=DEFAULT_TOL):
    """Search both parameters, collect the theorem values that apply,
    and insist they agree.

    Raises InternalInconsistencyError when a theorem value contradicts a
    certified search value; that is a bug to surface, not a result.
    """
    n = g.n
    k_cons = is_consecutive(g)
    report = {
        "graph": format_graph(g),
        "n": n,
        "degree": g.degree,
        "consecutive_k": k_cons,
        "prime": is_prime(n),
        "complete": g.is_complete(),
        "edgeless": g.is_edgeless(),
        "bounds": {},
    }
    bounds = report["bounds"]
    if k_cons is not None:
        bounds["zero_forcing"] = zero_forcing_consecutive(g)
        bounds["mr_lower_bound"] = mr_lower_bound(g)
        bounds["theorem_mscr"] = n - g.degree
        if n % 2 == 1:
            bounds["theorem_mscr_real"] = n - g.degree
    if is_prime(n):
        bounds["theorem_mscr"] = n - g.degree

    res_c = min_terms_search(g, COMPLEX, cap=cap, seed=seed, tol=tol)
    res_r = min_terms_search(g, BALANCED, cap=cap, seed=seed, tol=tol)
    report["mscr"] = res_c.k
    report["mscr_real"] = res_r.k
    report["mscr_certified"] = res_c.certified_optimal
    report["mscr_real_certified"] = res_r.certified_optimal

    if res_c.k > res_r.k:
        raise InternalInconsistencyError(
            "mscr=%d exceeds mscrREAL=%d for %s" % (res_c.k, res_r.k, g)
        )
    theorem = bounds.get("theorem_mscr")
    if theorem is not None and res_c.certified_optimal and res_c.k != theorem:
        raise InternalInconsistencyError(
            "theorem says mscr=%d but search found %d for %s" % (theorem, res_c.k, g)
        )
    theorem_r = bounds.get("theorem_mscr_real")
    if theorem_r is not None and res_r.certified_optimal and res_r.k != theorem_r:
        raise InternalInconsistencyError(
            "theorem says mscrREAL=%d but search found %d for %s" % (theorem_r, res_r.k, g)
        )
    report["certificates"] = {
        "complex": res_c.certificate.to_json(),
        "balanced": res_r.certificate.to_json(),
    }
    return report
