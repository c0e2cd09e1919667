"""Circulant linear algebra: Fourier matrix, orbit generators, Gram
matrices, tolerant rank and zero-pattern extraction.

Inner product convention: conjugation falls on the SECOND argument,
    <u, v> = sum_k u_k * conj(v_k),
so the Gram matrix of an orbit i -> U^i x has entries
    G[i, j] = sum_k |x_k|^2 w^{k(i-j)},   w = exp(2*pi*1j/n).
Both conventions exist in the wild; everything in this package (Gram
rows, diagonalization order, polynomial evaluations) is consistent with
this one.  Under it a U-orbit Gram factors as G = F Lambda F* with
Lambda = n*diag(x_k^2), equivalently diag(F* G F)[j] = n*x_j^2.
"""

from dataclasses import dataclass

import numpy as np

from .graph import CirculantGraph, new_graph


@dataclass(frozen=True)
class Tolerance:
    """zero_eps: magnitude below which a scalar counts as zero (after
    normalizing so the largest entry has magnitude 1); rank_eps:
    eigenvalue cutoff relative to the largest magnitude eigenvalue."""

    zero_eps: float = 1e-9
    rank_eps: float = 1e-9

    def __post_init__(self):
        if self.zero_eps < 0 or self.rank_eps < 0:
            raise ValueError("tolerances must be nonnegative")


DEFAULT_TOL = Tolerance()


@dataclass(frozen=True)
class CirculantMatrix:
    """First row of a circulant; entry (i,j) is first_row[(j-i) mod n]."""

    n: int
    first_row: tuple

    @classmethod
    def from_row(cls, row):
        row = np.asarray(row, dtype=complex)
        return cls(n=len(row), first_row=tuple(row.tolist()))

    def row_array(self):
        return np.asarray(self.first_row, dtype=complex)

    def realize(self):
        b = self.row_array()
        idx = (np.arange(self.n)[None, :] - np.arange(self.n)[:, None]) % self.n
        return b[idx]

    def is_hermitian(self, tol=DEFAULT_TOL):
        b = self.row_array()
        scale = max(np.abs(b).max(), 1.0) if self.n else 1.0
        rev = np.conj(b[(-np.arange(self.n)) % self.n])
        return np.abs(b - rev).max() <= tol.zero_eps * scale

    def to_json(self):
        return {
            "n": self.n,
            "first_row": [[float(z.real), float(z.imag)] for z in self.first_row],
        }

    @classmethod
    def from_json(cls, data):
        row = [complex(re, im) for re, im in data["first_row"]]
        if len(row) != data["n"]:
            raise ValueError("first_row length does not match n")
        return cls.from_row(row)


def fourier_matrix(n):
    """Unitary Fourier matrix F[i,j] = w^{ij} / sqrt(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w = np.exp(2j * np.pi / n)
    exps = np.outer(np.arange(n), np.arange(n)) % n
    return w ** exps / np.sqrt(n)


def u_matrix(n):
    """diag(1, w, w^2, ..., w^{n-1}); satisfies U^n = I."""
    if n < 1:
        raise ValueError("n must be >= 1")
    w = np.exp(2j * np.pi / n)
    return np.diag(w ** np.arange(n))


def a_matrix(n):
    """Real orthogonal orbit generator with A^n = I.

    Entry (0,0) is 1; for 1 <= j < n/2 the principal submatrix on
    indices {j, n-j} is the rotation by angle 2*pi*j/n; for even n the
    entry (n/2, n/2) is -1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    A = np.zeros((n, n))
    A[0, 0] = 1.0
    for j in range(1, (n + 1) // 2):
        th = 2.0 * np.pi * j / n
        A[j, j] = np.cos(th)
        A[j, n - j] = -np.sin(th)
        A[n - j, j] = np.sin(th)
        A[n - j, n - j] = np.cos(th)
    if n % 2 == 0:
        A[n // 2, n // 2] = -1.0
    return A


def orbit(gen, x):
    """Vectors (x, gen@x, gen^2@x, ..., gen^{n-1}@x) of the full orbit,
    one per row.  ``gen`` must be unitary/orthogonal with gen^n = I."""
    gen = np.asarray(gen)
    x = np.asarray(x)
    n = gen.shape[0]
    out = np.empty((n, gen.shape[1]), dtype=np.result_type(gen, x))
    v = x.astype(out.dtype)
    for i in range(n):
        out[i] = v
        v = gen @ v
    return out


def gram(rep):
    """Gram matrix G[i,j] = <v_i, v_j>, conjugating the second vector."""
    rep = np.asarray(rep)
    if rep.ndim != 2:
        raise ValueError("representation must be a 2-d array of row vectors")
    return rep @ rep.conj().T


def diagonalize_circulant(c, tol=DEFAULT_TOL):
    """Diagonal of F* C F in index order.

    For a Hermitian circulant this equals the (real) eigenvalue list
    lambda_j = p_b(w^j) with b the first row.  The off-diagonal residue
    of the conjugated matrix is required to stay below zero_eps * |C|.
    """
    if isinstance(c, CirculantMatrix):
        dense = c.realize()
    else:
        dense = np.asarray(c, dtype=complex)
    n = dense.shape[0]
    F = fourier_matrix(n)
    D = F.conj().T @ dense @ F
    scale = max(np.abs(dense).max(), 1.0)
    off = D - np.diag(np.diag(D))
    resid = np.abs(off).max() if n > 1 else 0.0
    if resid > tol.zero_eps * scale * n:
        raise ValueError(
            "matrix is not circulant: off-diagonal residue %.3e after Fourier conjugation" % resid
        )
    return np.diag(D).copy()


def rank_with_tol(m, tol=DEFAULT_TOL):
    """Number of eigenvalues with |lambda| > rank_eps * max|lambda|."""
    m = np.asarray(m)
    ev = np.linalg.eigvalsh(m)
    top = np.abs(ev).max() if ev.size else 0.0
    if top == 0.0:
        return 0
    return int(np.count_nonzero(np.abs(ev) > tol.rank_eps * top))


def is_psd(m, tol=DEFAULT_TOL):
    """True when the minimum eigenvalue is >= -rank_eps * max|lambda|."""
    ev = np.linalg.eigvalsh(np.asarray(m))
    top = np.abs(ev).max() if ev.size else 0.0
    return bool(ev.min() >= -tol.rank_eps * top) if ev.size else True


def is_hermitian(m, tol=DEFAULT_TOL):
    m = np.asarray(m)
    scale = max(np.abs(m).max(), 1.0)
    return np.abs(m - m.conj().T).max() <= tol.zero_eps * scale * m.shape[0]


@dataclass(frozen=True)
class PatternReport:
    """Zero-nonzero pattern of a matrix whose pattern is not circulant."""

    n: int
    adjacency: tuple  # row-major tuple of 0/1 tuples

    def matrix(self):
        return np.array(self.adjacency, dtype=bool)


def circulant_deviation(m):
    """Max deviation of entries along wrapped constant-difference
    diagonals, relative to the largest entry magnitude."""
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    scale = np.abs(m).max()
    if scale == 0.0:
        return 0.0
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    worst = 0.0
    for d in range(n):
        vals = m[idx == d]
        dev = np.abs(vals - vals.mean()).max()
        worst = max(worst, float(dev))
    return worst / scale


def to_circulant(m, tol=DEFAULT_TOL):
    """Average a numerically-circulant dense matrix down to its first
    row; returns None when the wrapped diagonals are not constant."""
    m = np.asarray(m, dtype=complex)
    if circulant_deviation(m) > tol.zero_eps:
        return None
    n = m.shape[0]
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    row = np.array([m[idx == d].mean() for d in range(n)])
    return CirculantMatrix.from_row(row)


def graph_of_matrix(m, tol=DEFAULT_TOL):
    """Graph of a Hermitian matrix: edge {i,j} iff |m_ij| is nonzero.

    Entries are thresholded at zero_eps after normalizing the largest
    magnitude to 1 (the definition is scale-invariant).  Returns a
    CirculantGraph when the off-diagonal pattern is circulant, otherwise
    a PatternReport with the raw pattern.
    """
    m = np.asarray(m)
    n = m.shape[0]
    scale = np.abs(m).max()
    if scale == 0.0:
        return new_graph(n, [])
    adj = np.abs(m) > tol.zero_eps * scale
    np.fill_diagonal(adj, False)
    residues = []
    for d in range(1, n):
        col = np.array([adj[i, (i + d) % n] for i in range(n)])
        if col.all():
            residues.append(d)
        elif col.any():
            return PatternReport(
                n=n, adjacency=tuple(tuple(int(v) for v in row) for row in adj)
            )
    # A non-Hermitian input can yield a circulant but asymmetric pattern;
    # that is not a graph, so report it raw rather than closing it up.
    if any((n - d) % n not in residues for d in residues):
        return PatternReport(
            n=n, adjacency=tuple(tuple(int(v) for v in row) for row in adj)
        )
    return new_graph(n, residues)


def dense_to_json(m):
    m = np.asarray(m, dtype=complex)
    return {
        "n": int(m.shape[0]),
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in m],
    }


def dense_from_json(data):
    rows = [[complex(re, im) for re, im in row] for row in data["entries"]]
    m = np.array(rows, dtype=complex)
    if m.shape != (data["n"], data["n"]):
        raise ValueError("dense matrix shape does not match n")
    return m
