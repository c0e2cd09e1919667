"""Circulant graphs C(n, S) and the combinatorial bounds attached to them.

A circulant graph on vertices 0..n-1 is determined by its order n and a
connection set S of residues in {1,..,n-1} closed under r -> n-r; vertex
i is adjacent to j exactly when (i - j) mod n lies in S.  Input residue
lists are reduced mod n and the negation closure is completed
automatically (users think in "+-r" generators); residues that reduce to
0 are rejected because they would be loops.
"""

import re
from dataclasses import dataclass, field


class InvalidOrderError(ValueError):
    """Raised when the vertex count is not a positive integer."""


class LoopResidueError(ValueError):
    """Raised when a connection residue is congruent to 0 mod n."""


class UnsupportedFamilyError(ValueError):
    """Raised when an operation only defined for a graph family
    (e.g. consecutive circulants) is applied outside it."""


@dataclass(frozen=True)
class ConnectionSet:
    """Order n plus a sorted, negation-closed residue tuple."""

    n: int
    residues: tuple
    closure_added: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidOrderError("vertex count must be >= 1, got %r" % (self.n,))
        for r in self.residues:
            if not 1 <= r <= self.n - 1:
                raise LoopResidueError("residue %r outside 1..n-1" % (r,))
            if (self.n - r) % self.n not in self.residues:
                raise ValueError("residue set not closed under negation: %r" % (r,))


@dataclass(frozen=True)
class CirculantGraph:
    connection: ConnectionSet

    @property
    def n(self):
        return self.connection.n

    @property
    def residues(self):
        return self.connection.residues

    @property
    def degree(self):
        return len(self.connection.residues)

    def is_edgeless(self):
        return not self.residues

    def is_complete(self):
        return self.degree == self.n - 1

    def adjacent(self, i, j):
        return (i - j) % self.n in self.connection.residues

    def __str__(self):
        return format_graph(self)


def new_graph(n, raw):
    """Build C(n, S) from any integer generators, canonicalizing mod n.

    The negation closure is completed silently; residues added this way
    are recorded in ``connection.closure_added``.
    """
    if not isinstance(n, int) or n < 1:
        raise InvalidOrderError("vertex count must be a positive integer, got %r" % (n,))
    given = set()
    for r in raw:
        rr = int(r) % n
        if rr == 0:
            raise LoopResidueError("residue %r is 0 mod %d (a loop)" % (r, n))
        given.add(rr)
    closed = set(given)
    for r in given:
        closed.add((n - r) % n)
    added = tuple(sorted(closed - given))
    conn = ConnectionSet(n=n, residues=tuple(sorted(closed)), closure_added=added)
    return CirculantGraph(conn)


def format_graph(g):
    """Canonical text form C(n,{r1,r2,...}), residues ascending."""
    inner = ",".join(str(r) for r in g.residues)
    return "C(%d,{%s})" % (g.n, inner)


_GRAPH_RE = re.compile(r"^\s*C\(\s*(\d+)\s*,\s*\{([^}]*)\}\s*\)\s*$")


def parse_graph(text):
    """Parse the canonical text form back into a graph."""
    m = _GRAPH_RE.match(text)
    if not m:
        raise ValueError("cannot parse circulant graph from %r" % (text,))
    n = int(m.group(1))
    body = m.group(2).strip()
    raw = [int(tok) for tok in body.split(",")] if body else []
    return new_graph(n, raw)


def is_consecutive(g):
    """Return k when the connection set is {+-1,...,+-k}, else None.

    The edgeless graph is not consecutive.  The complete graph is the
    case k = floor(n/2) with |S| = n-1.
    """
    s = set(g.residues)
    if not s:
        return None
    n = g.n
    expected = set()
    for k in range(1, n // 2 + 1):
        expected.add(k % n)
        expected.add((n - k) % n)
        if expected == s:
            return k
        if not expected <= s:
            return None
    return None


def zero_forcing_consecutive(g):
    """Zero forcing number of a consecutive circulant: exactly |S|."""
    if is_consecutive(g) is None:
        raise UnsupportedFamilyError(
            "zero forcing is only computed for consecutive circulants, got %s" % g
        )
    return g.degree


def mr_lower_bound(g):
    """Minimum-rank lower bound n - Z(G) for consecutive circulants."""
    if is_consecutive(g) is None:
        raise UnsupportedFamilyError(
            "the zero-forcing bound is only available for consecutive circulants, got %s" % g
        )
    return g.n - g.degree


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
