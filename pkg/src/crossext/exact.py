"""Exact rational row reduction on sparse rows.

Rows are dicts ``{column: Fraction}``; everything here is deterministic and
free of floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Row = dict


def to_row(vec: Sequence) -> Row:
    return {j: Fraction(v) for j, v in enumerate(vec) if v != 0}


def to_dense(row: Row, n: int) -> list[Fraction]:
    out = [Fraction(0)] * n
    for j, v in row.items():
        out[j] = v
    return out


def _axpy(target: Row, coef: Fraction, src: Row) -> None:
    # target -= coef * src
    for j, v in src.items():
        w = target.get(j, 0) - coef * v
        if w:
            target[j] = w
        else:
            target.pop(j, None)


class Subspace:
    """Span of rational vectors in Q^n kept in reduced row echelon form."""

    def __init__(self, n: int, vectors: Iterable = ()):
        self.n = n
        self.rows: list[Row] = []
        self.pivots: list[int] = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> Row:
        r = dict(vec) if isinstance(vec, dict) else to_row(vec)
        for p, row in zip(self.pivots, self.rows):
            c = r.get(p)
            if c:
                _axpy(r, c, row)
        return r

    def add(self, vec) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = 1 / r[p]
        r = {j: v * inv for j, v in r.items()}
        for row in self.rows:
            c = row.get(p)
            if c:
                _axpy(row, c, r)
        # keep pivots sorted so the echelon form is canonical
        k = 0
        while k < len(self.pivots) and self.pivots[k] < p:
            k += 1
        self.pivots.insert(k, p)
        self.rows.insert(k, r)
        return True

    def contains(self, vec) -> bool:
        return not self.reduce(vec)

    def coords(self, vec) -> list[Fraction]:
        """Coordinates against the echelon basis; raises if ``vec`` is outside."""
        r = dict(vec) if isinstance(vec, dict) else to_row(vec)
        if self.reduce(r):
            raise ValueError("vector not in subspace")
        return [r.get(p, Fraction(0)) for p in self.pivots]

    def basis(self) -> list[list[Fraction]]:
        return [to_dense(r, self.n) for r in self.rows]

    def __eq__(self, other) -> bool:
        return isinstance(other, Subspace) and self.n == other.n and \
            self.pivots == other.pivots and self.rows == other.rows

    def issubset(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.rows)


def rref(rows: Iterable, n: int) -> tuple[list[Row], list[int]]:
    S = Subspace(n, rows)
    return S.rows, S.pivots


def nullspace(rows: Iterable, n: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} for the matrix with the given rows."""
    R, piv = rref(rows, n)
    free = [j for j in range(n) if j not in set(piv)]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for p, row in zip(piv, R):
            c = row.get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def rank(rows: Iterable, n: int) -> int:
    return Subspace(n, rows).dim
