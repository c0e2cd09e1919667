"""Dense two-phase simplex kernel with optional numba acceleration.

Every LP solved here is tiny (tens of variables, tens of equality rows)
but the support search solves hundreds of thousands of them, so the
solver is a single self-contained kernel written in vectorized numpy
that numba can compile.  Bland's rule is used for both the entering and
leaving choices, so the pivoting cannot cycle at these sizes.

Backend selection (env var CIRCRANK_BACKEND):

  "numba"  force the jitted kernel, raise if numba is unavailable
  "numpy"  force the plain-interpreter path
  "auto"   (default) numba when importable, numpy otherwise

``set_backend`` rebinds the kernel at runtime; the benchmark script uses
it to time both paths in one process.
"""

import os

import numpy as np

OPTIMAL = 0
INFEASIBLE = 1
UNBOUNDED = 2
STALLED = 3

PIVOT_TOL = 1e-10
FEAS_TOL = 1e-9

_RATIO_TIE = 1e-12


def _simplex_impl(A, b, c, pivot_tol, feas_tol, max_iter):
    """Minimize c@x subject to A@x == b, x >= 0.

    Standard two-phase dense tableau.  Artificial columns never re-enter
    the basis once they leave it (safe for feasibility detection: a
    feasible program keeps a zero-cost phase-1 point with all
    artificials at zero).  Returns (status, x, objective).
    """
    m, nvar = A.shape
    width = nvar + m + 1
    T = np.zeros((m + 1, width))
    basis = np.empty(m, np.int64)
    for i in range(m):
        if b[i] < 0.0:
            T[i, :nvar] = -A[i]
            T[i, width - 1] = -b[i]
        else:
            T[i, :nvar] = A[i]
            T[i, width - 1] = b[i]
        T[i, nvar + i] = 1.0
        basis[i] = nvar + i

    # Phase-1 reduced costs for min(sum of artificials): r = c1 - 1@T,
    # which is -column_sum on structural columns and 0 on artificials.
    for j in range(width):
        s = 0.0
        for i in range(m):
            s += T[i, j]
        T[m, j] = -s
    for i in range(m):
        T[m, nvar + i] += 1.0

    x = np.zeros(nvar)
    for phase in range(2):
        it = 0
        while True:
            it += 1
            if it > max_iter:
                return STALLED, x, 0.0
            # Bland entering rule: smallest structural index that improves.
            enter = -1
            for j in range(nvar):
                if T[m, j] < -pivot_tol:
                    enter = j
                    break
            if enter == -1:
                break
            # Ratio test; ties go to the smallest basis index (Bland).
            leave = -1
            best = 0.0
            for i in range(m):
                aij = T[i, enter]
                if aij > pivot_tol:
                    ratio = T[i, width - 1] / aij
                    if leave == -1 or ratio < best - _RATIO_TIE:
                        leave = i
                        best = ratio
                    elif ratio < best + _RATIO_TIE and basis[i] < basis[leave]:
                        leave = i
                        if ratio < best:
                            best = ratio
            if leave == -1:
                return UNBOUNDED, x, 0.0
            piv_row = T[leave] / T[leave, enter]
            col = T[:, enter].copy()
            col[leave] = 0.0
            T -= np.outer(col, piv_row)
            T[leave] = piv_row
            T[:, enter] = 0.0
            T[leave, enter] = 1.0
            basis[leave] = enter

        if phase == 1:
            break
        if -T[m, width - 1] > feas_tol:
            return INFEASIBLE, x, 0.0
        # Pivot leftover zero-value artificials out; a row with no
        # structural pivot is redundant and is cleared.
        for i in range(m):
            if basis[i] >= nvar:
                piv_col = -1
                for j in range(nvar):
                    if abs(T[i, j]) > pivot_tol:
                        piv_col = j
                        break
                if piv_col >= 0:
                    piv_row = T[i] / T[i, piv_col]
                    col = T[:, piv_col].copy()
                    col[i] = 0.0
                    T -= np.outer(col, piv_row)
                    T[i] = piv_row
                    T[:, piv_col] = 0.0
                    T[i, piv_col] = 1.0
                    basis[i] = piv_col
                else:
                    T[i] = 0.0
                    basis[i] = -1
        # Phase-2 objective row from the real costs.
        T[m] = 0.0
        T[m, :nvar] = c
        for i in range(m):
            bi = basis[i]
            if 0 <= bi < nvar:
                f = c[bi]
                if f != 0.0:
                    T[m] -= f * T[i]

    for i in range(m):
        bi = basis[i]
        if 0 <= bi < nvar:
            x[bi] = T[i, width - 1]
    obj = 0.0
    for j in range(nvar):
        obj += c[j] * x[j]
    return OPTIMAL, x, obj


_backend = "numpy"
_solver = _simplex_impl


def set_backend(name="auto"):
    """Select the LP kernel: "numba", "numpy" or "auto"."""
    global _backend, _solver
    if name not in ("auto", "numba", "numpy"):
        raise ValueError("unknown backend %r" % (name,))
    if name == "numpy":
        _backend, _solver = "numpy", _simplex_impl
        return _backend
    try:
        from numba import njit
    except ImportError:
        if name == "numba":
            raise
        _backend, _solver = "numpy", _simplex_impl
        return _backend
    _backend = "numba"
    _solver = njit(cache=True, nogil=True)(_simplex_impl)
    return _backend


def backend_name():
    return _backend


def solve_min(A, b, c, pivot_tol=PIVOT_TOL, feas_tol=FEAS_TOL, max_iter=None):
    """Minimize c@x over {A@x == b, x >= 0}; returns (status, x, obj)."""
    A = np.ascontiguousarray(A, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    c = np.ascontiguousarray(c, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != b.shape[0] or A.shape[1] != c.shape[0]:
        raise ValueError("inconsistent LP dimensions")
    if max_iter is None:
        max_iter = 200 * (A.shape[0] + A.shape[1] + 10)
    return _solver(A, b, c, float(pivot_tol), float(feas_tol), int(max_iter))


def feasible_point(A, b, pivot_tol=PIVOT_TOL, feas_tol=FEAS_TOL):
    """Find any x >= 0 with A@x == b; returns (status, x)."""
    status, x, _ = solve_min(A, b, np.zeros(A.shape[1]))
    return status, x


set_backend(os.environ.get("CIRCRANK_BACKEND", "auto"))
