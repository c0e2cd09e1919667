"""Explicit certificate constructions.

A certificate bundle packages a circulant graph, a mode ("C" for
Hermitian orbits under the unitary generator, "R-balanced"/"R-weight"
for real orbits under the rotation generator), a nonnegative polynomial
and a claimed rank.  The constructions here produce bundles whose
rebuilt Gram matrices realize the graph at the claimed rank:

* the consecutive product polynomial prod_{j=k+1}^{n-k-1} (z - w^j),
  expanded with real pairing so no imaginary round-off enters;
* its shifted variant z^{k+(n+1)/2} * p for odd n, whose coefficient
  vector is balanced and therefore certifies the real parameter;
* a convex Caratheodory reduction that prunes the uniform vanishing
  combination down to at most |W|+1 terms for any self-conjugate root
  set W;
* prime-order certificates, where the Caratheodory output provably
  cannot vanish anywhere it should not;
* a rank ladder obtained by multiplying the consecutive polynomial by
  powers of (z+2), adding one term per factor without moving any zeros
  on the unit circle.
"""

import json
from dataclasses import dataclass, field

import numpy as np

from .algebra import a_matrix, gram, orbit, u_matrix
from .graph import (
    CirculantGraph,
    UnsupportedFamilyError,
    format_graph,
    is_consecutive,
    is_prime,
    mr_lower_bound,
    parse_graph,
)
from .polycert import (
    NonnegPolynomial,
    check_condition_C,
    clean_coeffs,
    eval_all_roots,
    ncv,
    reduce_mod,
)

MODES = ("C", "R-balanced", "R-weight")


class ParityError(ValueError):
    """Raised when a construction requires odd order and n is even."""


class ConstructionFailedError(RuntimeError):
    """Raised when a construction's guaranteed property fails
    numerically; never silently accepted."""


@dataclass(frozen=True)
class RootSet:
    """Self-conjugate set of root exponents, 0 excluded (so p(1) > 0)."""

    n: int
    exponents: frozenset

    def __post_init__(self):
        object.__setattr__(self, "exponents", frozenset(int(j) for j in self.exponents))
        for j in self.exponents:
            if not 1 <= j <= self.n - 1:
                raise ValueError("exponent %r outside 1..n-1" % (j,))
            if (self.n - j) % self.n not in self.exponents:
                raise ValueError("root set is not self-conjugate at %r" % (j,))

    @property
    def size(self):
        return len(self.exponents)


@dataclass(frozen=True)
class CertificateBundle:
    graph: CirculantGraph
    mode: str
    polynomial: NonnegPolynomial
    claimed_rank: int
    construction: dict = field(compare=False, default_factory=dict)
    seed: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError("mode must be one of %r" % (MODES,))

    def generator_matrix(self):
        if self.mode == "C":
            return u_matrix(self.graph.n)
        return a_matrix(self.graph.n)

    def representation(self):
        return orbit(self.generator_matrix(), ncv(self.polynomial).array())

    def matrix(self):
        return gram(self.representation())

    def to_json(self):
        return {
            "graph": format_graph(self.graph),
            "mode": self.mode,
            "polynomial": self.polynomial.to_json(),
            "claimed_rank": int(self.claimed_rank),
            "construction": self.construction,
            "seed": self.seed,
        }

    @classmethod
    def from_json(cls, data):
        return cls(
            graph=parse_graph(data["graph"]),
            mode=data["mode"],
            polynomial=NonnegPolynomial.from_json(data["polynomial"]),
            claimed_rank=int(data["claimed_rank"]),
            construction=dict(data.get("construction", {})),
            seed=data.get("seed", 0),
        )

    def save(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=2)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))


def consecutive_polynomial(n, k):
    """Expanded prod_{j=k+1}^{n-k-1} (z - w^j), reduced mod z^n - 1.

    Requires 1 <= k < floor(n/2) (the complete-graph case k = floor(n/2)
    is covered by the all-ones certificate instead).  The product is
    expanded by convolving the real quadratics
    (z - w^j)(z - w^{n-j}) = z^2 - 2*cos(2*pi*j/n)*z + 1, with the
    unpaired middle root contributing the factor (z+1) when n is even,
    so the arithmetic stays real throughout.
    """
    if not 1 <= k < n // 2:
        raise ValueError("need 1 <= k < floor(n/2); got n=%d, k=%d" % (n, k))
    coeffs = np.array([1.0])
    for j in range(k + 1, (n + 1) // 2):
        quad = np.array([1.0, -2.0 * np.cos(2.0 * np.pi * j / n), 1.0])
        coeffs = np.convolve(coeffs, quad)
    if n % 2 == 0:
        coeffs = np.convolve(coeffs, np.array([1.0, 1.0]))
    # convolution order: index 0 is the highest degree; flip to ascending
    coeffs = coeffs[::-1]
    poly = reduce_mod(coeffs, n)
    if poly.term_count != n - 2 * k:
        raise ConstructionFailedError(
            "consecutive product lost positivity: %d terms, expected %d"
            % (poly.term_count, n - 2 * k)
        )
    return poly


def shifted_real_polynomial(n, k):
    """z^{k+(n+1)/2} times the consecutive product, for odd n.

    The shift lines the palindromic coefficients up symmetrically around
    index 0 mod n, so the normalized coefficient vector is balanced with
    support of size n - 2k.  Even n is rejected: the real parameter can
    genuinely exceed n - 2k there.
    """
    if n % 2 == 0:
        raise ParityError("shifted real construction requires odd n, got %d" % n)
    base = consecutive_polynomial(n, k)
    shift = (k + (n + 1) // 2) % n
    coeffs = np.roll(base.coeff_array(), shift)
    return NonnegPolynomial.from_coeffs(coeffs, n=n)


def _root_points(w):
    """Point list v_0..v_{n-1} in R^{|W|} for the convex reduction."""
    n = w.n
    i_arr = np.arange(n)
    cols = []
    if n % 2 == 0 and n // 2 in w.exponents:
        cols.append((-1.0) ** i_arr)
    for j in sorted(w.exponents):
        if j < n - j:
            ang = 2.0 * np.pi * j * i_arr / n
            cols.append(np.cos(ang))
            cols.append(np.sin(ang))
    if not cols:
        return np.zeros((n, 0))
    return np.column_stack(cols)


def caratheodory_polynomial(w, rng=None, pivot_tol=1e-12):
    """Nonnegative polynomial with at most |W|+1 terms vanishing on the
    root set W.

    Starts from the uniform combination (the power sums of every
    nontrivial root vanish, so sum_i v_i = 0) and repeatedly shifts the
    weights along an affine dependence of the active points until one
    weight hits zero, leaving at most |W|+1 active terms.  The kernel
    direction is the trailing right-singular vector of the stacked
    active-point matrix (deterministic); passing ``rng`` randomizes the
    direction inside the kernel, which is what the retry logic of the
    prime certificate uses.  A breakdown of the pivoting raises
    ConstructionFailedError rather than returning a bad polynomial.
    """
    n = w.n
    if not w.exponents:
        return NonnegPolynomial.from_coeffs(np.eye(1, n, 0)[0], n=n)
    V = _root_points(w)
    d = V.shape[1]
    if d != w.size:
        raise ConstructionFailedError("root-set dimension bookkeeping failed")
    b = np.ones(n)
    active = np.arange(n)
    rounds = 0
    while active.size > d + 1:
        rounds += 1
        if rounds > 4 * n:
            raise ConstructionFailedError("convex reduction failed to terminate")
        pts = V[active]
        M = np.vstack([pts.T, np.ones(active.size)])
        _, sv, Vt = np.linalg.svd(M)
        rank = int(np.count_nonzero(sv > sv[0] * 1e-12)) if sv.size else 0
        kernel = Vt[rank:]
        if kernel.shape[0] == 0:
            raise ConstructionFailedError("no affine dependence found among active points")
        if rng is None:
            gamma = kernel[-1]
        else:
            gamma = rng.standard_normal(kernel.shape[0]) @ kernel
        gmax = np.abs(gamma).max()
        if gmax <= pivot_tol:
            raise ConstructionFailedError("degenerate kernel direction")
        gamma = gamma / gmax
        if gamma.max() <= pivot_tol:
            gamma = -gamma
        pos = gamma > pivot_tol
        if not pos.any():
            raise ConstructionFailedError("kernel direction has no positive entry")
        ratios = b[active][pos] / gamma[pos]
        # argmin returns the first minimizer, i.e. the smallest index
        local = int(np.argmin(ratios))
        tau = float(ratios[local])
        b[active] = b[active] - tau * gamma
        hit = active[np.flatnonzero(pos)[local]]
        b[hit] = 0.0
        b[active] = np.where(np.abs(b[active]) < pivot_tol, 0.0, b[active])
        if b[active].min() < -pivot_tol:
            raise ConstructionFailedError("weight went negative during reduction")
        b[b < 0] = 0.0
        new_active = active[b[active] > 0]
        if new_active.size >= active.size:
            raise ConstructionFailedError("reduction step eliminated no point")
        active = new_active
    b = clean_coeffs(b)
    total = b.sum()
    if total <= 0:
        raise ConstructionFailedError("reduction collapsed to the zero polynomial")
    poly = NonnegPolynomial.from_coeffs(b / total, n=n)
    # construction guarantee: residual vanishing on W
    vals = eval_all_roots(poly)
    worst = max(abs(vals[j]) for j in w.exponents)
    if worst > 1e-8 * poly.at_one():
        raise ConstructionFailedError(
            "reduction left residual %.3e on the required root set" % worst
        )
    return poly


def prime_certificate(g, seed=0):
    """Certificate of rank p - |S| for a circulant on a prime number of
    vertices.

    The Caratheodory polynomial for W = {j not in S} has at most p - |S|
    terms, and with p prime a polynomial with k terms cannot vanish on k
    or more pth roots of unity, so the output must have exactly p - |S|
    terms and no extra zeros.  Failures of that assertion are numerical;
    the reduction is retried with randomized pivot directions up to 8
    times before erroring out.
    """
    n = g.n
    if not is_prime(n):
        raise UnsupportedFamilyError("prime certificate requires prime order, got n=%d" % n)
    target = n - g.degree
    w = RootSet(n=n, exponents=frozenset(set(range(1, n)) - set(g.residues)))
    last_err = None
    for attempt in range(9):
        rng = None if attempt == 0 else np.random.default_rng([seed, attempt])
        try:
            poly = caratheodory_polynomial(w, rng=rng)
        except ConstructionFailedError as err:
            last_err = err
            continue
        if poly.term_count == target and check_condition_C(poly, g).ok:
            return CertificateBundle(
                graph=g,
                mode="C",
                polynomial=poly,
                claimed_rank=target,
                construction={"method": "prime", "attempts": attempt},
                seed=seed,
            )
        last_err = ConstructionFailedError(
            "prime reduction produced %d terms (want %d) or extra zeros"
            % (poly.term_count, target)
        )
    raise ConstructionFailedError(
        "prime certificate failed after randomized retries: %s" % last_err
    )


def consecutive_certificate(g):
    """Hermitian-mode certificate of rank n - |S| for a consecutive
    circulant, with the matching zero-forcing lower bound recorded."""
    k = is_consecutive(g)
    if k is None:
        raise UnsupportedFamilyError("not a consecutive circulant: %s" % g)
    n = g.n
    lower = mr_lower_bound(g)
    if g.is_complete():
        poly = NonnegPolynomial.from_coeffs(np.eye(1, n, 0)[0], n=n)
        rank = 1
        info = {"method": "consecutive", "k": k, "variant": "complete", "lower_bound": lower}
    else:
        poly = consecutive_polynomial(n, k)
        rank = n - 2 * k
        info = {"method": "consecutive", "k": k, "lower_bound": lower}
    return CertificateBundle(graph=g, mode="C", polynomial=poly, claimed_rank=rank,
                             construction=info)


def real_consecutive_certificate(g):
    """Real-orbit certificate of rank n - |S| for consecutive circulants
    of odd order, carried by a balanced coefficient vector."""
    k = is_consecutive(g)
    if k is None:
        raise UnsupportedFamilyError("not a consecutive circulant: %s" % g)
    n = g.n
    if n % 2 == 0:
        raise ParityError(
            "real consecutive certificates require odd order (the even case "
            "can genuinely need rank n - |S| + 1), got n=%d" % n
        )
    if g.is_complete():
        poly = NonnegPolynomial.from_coeffs(np.eye(1, n, 0)[0], n=n)
        rank = 1
        info = {"method": "real-consecutive", "k": k, "variant": "complete"}
    else:
        poly = shifted_real_polynomial(n, k)
        rank = n - 2 * k
        info = {"method": "real-consecutive", "k": k, "shift": (k + (n + 1) // 2) % n}
    return CertificateBundle(graph=g, mode="R-balanced", polynomial=poly,
                             claimed_rank=rank, construction=info)


def rank_spectrum_consecutive(g):
    """Certificates of every rank from n - |S| up to n for a
    non-complete consecutive circulant.

    Multiplying the consecutive polynomial by (z+2) adds exactly one
    term per factor (all coefficients stay positive and the degree grows
    by one until it reaches n-1) and moves no zeros on the unit circle,
    since |w^j| = 1 != 2.
    """
    k = is_consecutive(g)
    if k is None or g.is_complete():
        raise UnsupportedFamilyError(
            "rank spectrum requires a non-complete consecutive circulant, got %s" % g
        )
    n = g.n
    coeffs = consecutive_polynomial(n, k).coeff_array()[: n - 2 * k]
    bundles = []
    for m in range(2 * k + 1):
        poly = reduce_mod(coeffs, n)
        expected = n - 2 * k + m
        if poly.term_count != expected:
            raise ConstructionFailedError(
                "(z+2)^%d product has %d terms, expected %d"
                % (m, poly.term_count, expected)
            )
        bundles.append(
            CertificateBundle(
                graph=g,
                mode="C",
                polynomial=poly,
                claimed_rank=expected,
                construction={"method": "spectrum", "k": k, "ladder_step": m},
            )
        )
        coeffs = np.convolve(coeffs, np.array([2.0, 1.0]))
    return bundles
