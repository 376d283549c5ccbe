"""Exact sparse Gaussian elimination over the scalar fields.

Rows are dictionaries ``{column: value}`` with no stored zeros.  Pivots
are chosen as the first nonzero column of each incoming row, so results
are deterministic for a fixed row order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional

Row = Dict[int, object]


class Echelon:
    """Incrementally maintained reduced row echelon form."""

    def __init__(self):
        self.pivots: Dict[int, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = {c: v for c, v in row.items() if v != 0}
        for col in sorted(c for c in row if c in self.pivots):
            coef = row.get(col)
            if not coef:
                continue
            for c, v in self.pivots[col].items():
                nv = row.get(c, 0) - coef * v
                if nv == 0:
                    row.pop(c, None)
                else:
                    row[c] = nv
        return row

    def add(self, row: Row) -> Optional[int]:
        """Insert a row; return its pivot column, or None if it was dependent."""
        # pivot rows are kept fully reduced, so one pass clears every pivot column
        row = self.reduce(row)
        if not row:
            return None
        col = min(row)
        lead = row[col]
        row = {c: v / lead for c, v in row.items()}
        for other in self.pivots.values():
            coef = other.get(col)
            if coef:
                for c, v in row.items():
                    nv = other.get(c, 0) - coef * v
                    if nv == 0:
                        other.pop(c, None)
                    else:
                        other[c] = nv
        self.pivots[col] = row
        return col

    @property
    def rank(self) -> int:
        return len(self.pivots)


def echelon(rows: Iterable[Row]) -> Echelon:
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech


def nullspace(rows: Iterable[Row], ncols: int) -> List[List]:
    """Basis of ``{x : row . x = 0 for every row}`` as dense vectors."""
    ech = echelon(rows)
    basis = []
    for free in range(ncols):
        if free in ech.pivots:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for p, row in ech.pivots.items():
            coef = row.get(free)
            if coef:
                v[p] = -coef
        basis.append(v)
    return basis


def solve(rows: Iterable[Row], rhs: Iterable, ncols: int) -> Optional[List]:
    """One solution of ``A x = b`` (free variables set to zero), or None."""
    ech = Echelon()
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b != 0:
            r[ncols] = b
        ech.add(r)
    if ncols in ech.pivots:
        return None
    x = [Fraction(0)] * ncols
    for p, row in ech.pivots.items():
        x[p] = row.get(ncols, Fraction(0))
    return x
