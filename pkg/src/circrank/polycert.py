"""Nonnegative polynomials modulo z^n - 1 and their root-of-unity
conditions.

A certificate polynomial is stored only in reduced form: a length-n
vector of nonnegative coefficients, coefficient of z^i at index i.
Folding a raw polynomial mod z^n - 1 preserves its values at every nth
root of unity, so the reduced form is canonical for everything here.
The normalized coefficient vector is the coordinatewise square root of
the coefficients; its support size is the rank of the induced U-orbit
Gram matrix and its weight the rank of the induced A-orbit one.

Vanishing thresholds are taken relative to p(1) = sum of coefficients
(positive for any nonzero polynomial in this class), which makes the
condition checks scale-free.
"""

from dataclasses import dataclass

import numpy as np

from .algebra import DEFAULT_TOL
from .graph import new_graph


class NotNonnegativeError(ValueError):
    """Raised when coefficients (or folded coefficients) are negative."""


def _fmt17(x):
    return format(float(x), ".17g")


@dataclass(frozen=True)
class NonnegPolynomial:
    n: int
    coeffs: tuple  # length n, all >= 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.coeffs) != self.n:
            raise ValueError("coefficient vector must have length n")
        if any(c < 0 for c in self.coeffs):
            raise NotNonnegativeError("negative coefficient in %r" % (self.coeffs,))

    @classmethod
    def from_coeffs(cls, coeffs, n=None):
        arr = np.asarray(coeffs, dtype=float)
        if n is None:
            n = len(arr)
        if len(arr) < n:
            arr = np.concatenate([arr, np.zeros(n - len(arr))])
        elif len(arr) > n:
            raise ValueError("use reduce_mod for coefficients of degree >= n")
        return cls(n=n, coeffs=tuple(arr.tolist()))

    def coeff_array(self):
        return np.asarray(self.coeffs, dtype=float)

    @property
    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c > 0)

    @property
    def term_count(self):
        return len(self.support)

    def at_one(self):
        return float(sum(self.coeffs))

    def to_json(self):
        return {"n": self.n, "coeffs": [_fmt17(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        coeffs = [float(s) for s in data["coeffs"]]
        return cls.from_coeffs(coeffs, n=int(data["n"]))


@dataclass(frozen=True)
class CoefficientVector:
    n: int
    x: tuple

    def array(self):
        return np.asarray(self.x, dtype=float)


def clean_coeffs(arr, rel=1e-12):
    """Zero out entries below ``rel`` times the largest coefficient.

    Coefficient vectors assembled from floating pipelines (LP vertices,
    convex-combination pivoting) can carry degenerate ~1e-15 residues; a
    residue that survives into the support would claim a rank the Gram
    spectrum cannot deliver, so it is snapped to an exact zero.
    """
    arr = np.array(arr, dtype=float)
    top = np.abs(arr).max() if arr.size else 0.0
    if top > 0.0:
        arr[np.abs(arr) < rel * top] = 0.0
    arr[arr < 0] = 0.0
    return arr


def reduce_mod(raw_coeffs, n):
    """Fold raw coefficients mod z^n - 1: coeffs[i] = sum_k raw[i + k*n].

    Values at every nth root of unity are preserved exactly.  Folded
    coefficients must come out nonnegative; tiny negative round-off is
    clamped to zero.
    """
    raw = np.asarray(raw_coeffs, dtype=float)
    folded = np.zeros(n)
    for i in range(len(raw)):
        folded[i % n] += raw[i]
    scale = max(np.abs(folded).max(), 1.0)
    if folded.min() < -1e-10 * scale:
        raise NotNonnegativeError(
            "folded coefficient %.3e is negative" % folded.min()
        )
    folded[folded < 0] = 0.0
    return NonnegPolynomial.from_coeffs(folded, n=n)


def ncv(p):
    """Normalized coefficient vector: coordinatewise square root."""
    return CoefficientVector(n=p.n, x=tuple(np.sqrt(p.coeff_array()).tolist()))


def poly_of_vector(v):
    """Inverse of ncv on nonnegative vectors: coeffs[i] = v[i]^2."""
    arr = v.array() if isinstance(v, CoefficientVector) else np.asarray(v, dtype=float)
    if arr.min() < 0:
        raise NotNonnegativeError("coefficient vector has a negative coordinate")
    return NonnegPolynomial.from_coeffs(arr ** 2)


def eval_at_root(p, j):
    """p(w^j) with w = exp(2*pi*1j/n); j is reduced mod n."""
    n = p.n
    w = np.exp(2j * np.pi * (j % n) / n)
    return complex(np.polyval(p.coeff_array()[::-1], w))


def eval_all_roots(p):
    """Vector (p(w^0), ..., p(w^{n-1})) via the root-power table."""
    n = p.n
    w = np.exp(2j * np.pi / n)
    powers = w ** (np.outer(np.arange(n), np.arange(n)) % n)
    return powers @ p.coeff_array()


def support_of(values, tol=DEFAULT_TOL):
    """Indices with magnitude above zero_eps, relative to the largest."""
    arr = np.abs(np.asarray(values, dtype=float))
    scale = max(arr.max(), 1.0) if arr.size else 1.0
    return tuple(int(i) for i in np.flatnonzero(arr > tol.zero_eps * scale))


def weight(v, tol=DEFAULT_TOL):
    """|W(x)| where W(x) = {i : i in supp(x) or n-i in supp(x)}."""
    arr = v.array() if isinstance(v, CoefficientVector) else np.asarray(v, dtype=float)
    n = len(arr)
    supp = set(support_of(arr, tol))
    w = set()
    for i in range(n):
        if i in supp or (n - i) % n in supp:
            w.add(i)
    return len(w)


def is_balanced(v, tol=DEFAULT_TOL):
    """True when x_i = x_{n-i} for i = 1..n-1 (within zero_eps)."""
    arr = v.array() if isinstance(v, CoefficientVector) else np.asarray(v, dtype=float)
    n = len(arr)
    rev = arr[(-np.arange(n)) % n]
    return bool(np.abs(arr - rev).max() <= tol.zero_eps) if n > 1 else True


@dataclass(frozen=True)
class RootCheck:
    j: int
    value: complex
    magnitude: float  # |p(w^j)| or |Re p(w^j)| depending on the mode
    threshold: float
    vanishes: bool
    must_vanish: bool

    @property
    def ok(self):
        return self.vanishes == self.must_vanish


@dataclass(frozen=True)
class ConditionReport:
    mode: str
    ok: bool
    roots: tuple

    def __bool__(self):
        return self.ok

    def failures(self):
        return [r.j for r in self.roots if not r.ok]

    def to_json(self):
        return {
            "mode": self.mode,
            "ok": self.ok,
            "roots": [
                {
                    "j": r.j,
                    "value": [_fmt17(r.value.real), _fmt17(r.value.imag)],
                    "magnitude": _fmt17(r.magnitude),
                    "threshold": _fmt17(r.threshold),
                    "vanishes": r.vanishes,
                    "must_vanish": r.must_vanish,
                    "ok": r.ok,
                }
                for r in self.roots
            ],
        }


def _condition_report(p, g, tol, mode):
    if p.n != g.n:
        raise ValueError("polynomial has n=%d but graph has n=%d" % (p.n, g.n))
    s = set(g.residues)
    vals = eval_all_roots(p)
    thr = tol.zero_eps * p.at_one()
    records = []
    for j in range(1, p.n):
        v = complex(vals[j])
        mag = abs(v) if mode == "C" else abs(v.real)
        records.append(
            RootCheck(
                j=j,
                value=v,
                magnitude=float(mag),
                threshold=float(thr),
                vanishes=bool(mag < thr),
                must_vanish=j not in s,
            )
        )
    return ConditionReport(
        mode=mode, ok=all(r.ok for r in records), roots=tuple(records)
    )


def check_condition_C(p, g, tol=DEFAULT_TOL):
    """p(w^j) = 0 exactly for j not in S, over j = 1..n-1."""
    return _condition_report(p, g, tol, "C")


def check_condition_R_weight(p, g, tol=DEFAULT_TOL):
    """Re(p(w^j)) = 0 exactly for j not in S, over j = 1..n-1."""
    return _condition_report(p, g, tol, "R-weight")


def vanishing_exponents(p, tol=DEFAULT_TOL):
    """Exponents j in 1..n-1 where p(w^j) vanishes (relative to p(1))."""
    vals = eval_all_roots(p)
    thr = tol.zero_eps * p.at_one()
    return set(int(j) for j in range(1, p.n) if abs(vals[j]) < thr)


def induced_graph(p, tol=DEFAULT_TOL):
    """The circulant graph whose edges are the non-vanishing exponents."""
    nonzero = [j for j in range(1, p.n) if j not in vanishing_exponents(p, tol)]
    return new_graph(p.n, nonzero)
