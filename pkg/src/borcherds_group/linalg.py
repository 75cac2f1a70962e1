"""Exact rational linear algebra on sparse vectors (dicts key -> Q)."""

from __future__ import annotations

from gmpy2 import mpq as Q
from typing import Hashable, Iterable, Mapping

Vec = dict  # dict[Hashable, Q]


def axpy(y: Vec, a: Q, x: Mapping) -> None:
    """In place ``y += a*x``, dropping zeros."""
    if not a:
        return
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


class EchelonBasis:
    """Incremental row-echelon basis with optional tracking of combinations.

    Each stored row is normalised so its pivot coefficient is 1.  When
    ``track`` is set, every row remembers which inserted vectors (by tag) it
    is a combination of, so membership tests can return coordinates.
    """

    def __init__(self, key=None):
        self.rows: dict[Hashable, tuple[Vec, Vec]] = {}  # pivot -> (vector, tag combo)
        self._key = key or (lambda k: k)

    def __len__(self) -> int:
        return len(self.rows)

    def _pivot(self, v: Mapping) -> Hashable:
        return min(v, key=self._key)

    def reduce(self, v: Mapping, tag: Mapping | None = None) -> tuple[Vec, Vec]:
        v = dict(v)
        t = dict(tag or {})
        while v:
            # eliminate every pivot present, smallest first
            hit = [k for k in v if k in self.rows]
            if not hit:
                break
            k = min(hit, key=self._key)
            c = v[k]
            row, rtag = self.rows[k]
            axpy(v, -c, row)
            axpy(t, -c, rtag)
        return v, t

    def add(self, v: Mapping, tag: Hashable | None = None) -> bool:
        """Insert ``v``; returns False when it was already in the span."""
        r, t = self.reduce(v, {tag: Q(1)} if tag is not None else None)
        if not r:
            return False
        p = self._pivot(r)
        c = r[p]
        r = {k: x / c for k, x in r.items()}
        t = {k: x / c for k, x in t.items()}
        # keep fully reduced: clear the new pivot from the existing rows
        for q, (row, rtag) in list(self.rows.items()):
            a = row.get(p)
            if a:
                row = dict(row)
                rtag = dict(rtag)
                axpy(row, -a, r)
                axpy(rtag, -a, t)
                self.rows[q] = (row, rtag)
        self.rows[p] = (r, t)
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)[0]

    def coordinates(self, v: Mapping) -> Vec | None:
        """Coefficients on the inserted tags expressing ``v``, or None."""
        r, t = self.reduce(v)
        if r:
            return None
        return {k: -x for k, x in t.items() if x}


def rank(vectors: Iterable[Mapping]) -> int:
    e = EchelonBasis()
    for v in vectors:
        e.add(v)
    return len(e)


def matrix_rank(rows: list[list[Q]]) -> int:
    return rank({j: x for j, x in enumerate(r) if x} for r in rows)


def nullspace(rows: list[list[Q]]) -> list[list[Q]]:
    """Basis of {x : M x = 0} for a dense rational matrix ``M``."""
    if not rows:
        return []
    m = [[Q(x) for x in r] for r in rows]
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Q(0)] * ncols
        x[f] = Q(1)
        for i, pc in enumerate(pivots):
            x[pc] = -m[i][f]
        basis.append(x)
    return basis


def solve(rows: list[list[Q]], rhs: list[Q]) -> list[Q]:
    """Unique solution of a square nonsingular system."""
    n = len(rows)
    m = [[Q(x) for x in r] + [Q(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            raise ZeroDivisionError("singular system")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]
