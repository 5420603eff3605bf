"""Sparse exact row echelon over Q(q).

Rows are dicts ``{column_key: RationalFunction}``.  The leading column of a
row is the one that is largest under ``key``; pivots are normalized to 1, so
reducing by a pivot row only ever introduces strictly smaller columns and
reduction terminates.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable

from .scalars import ONE, ZERO, RationalFunction


class InconsistentSystem(ValueError):
    pass


class SingularSystem(ValueError):
    pass


def _lead(row: dict, key) -> Hashable:
    return max(row, key=key) if key is not None else max(row)


def axpy(row: dict, c: RationalFunction, other: dict) -> None:
    """row -= c * other, in place, dropping zeros."""
    for col, v in other.items():
        x = row.get(col)
        if x is None:
            row[col] = -(c * v)
        else:
            y = x - c * v
            if y:
                row[col] = y
            else:
                del row[col]


class Echelon:
    """Incrementally built echelon basis of a row space."""

    def __init__(self, key: Callable | None = None):
        self.key = key
        self.pivots: dict[Hashable, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict, full: bool = True) -> dict:
        """Residual of ``row`` modulo the row space (a new dict).

        With ``full=False`` stop at the first non-pivot leading term; the
        result is zero iff the row lies in the span either way.
        """
        row = dict(row)
        if not full:
            while row:
                lead = _lead(row, self.key)
                piv = self.pivots.get(lead)
                if piv is None:
                    return row
                axpy(row, row[lead], piv)
            return row
        residual: dict = {}
        while row:
            lead = _lead(row, self.key)
            piv = self.pivots.get(lead)
            c = row[lead]
            if piv is None:
                residual[lead] = c
                del row[lead]
            else:
                axpy(row, c, piv)
        return residual

    def add(self, row: dict) -> bool:
        """Insert a row; returns True if it enlarged the span."""
        row = {k: v for k, v in row.items() if v}
        while row:
            lead = _lead(row, self.key)
            piv = self.pivots.get(lead)
            if piv is None:
                c = row[lead]
                if c != ONE:
                    inv = c.inverse()
                    row = {k: v * inv for k, v in row.items()}
                self.pivots[lead] = row
                return True
            axpy(row, row[lead], piv)
        return False

    def add_all(self, rows: Iterable[dict]) -> int:
        return sum(1 for r in rows if self.add(r))

    def contains(self, row: dict) -> bool:
        return not self.reduce(row, full=False)

    def reduced_basis(self) -> dict[Hashable, dict]:
        """Fully reduced (RREF) rows keyed by pivot column."""
        order = sorted(self.pivots, key=self.key)
        out: dict = {}
        for col in order:  # ascending: lower pivots are already reduced
            row = dict(self.pivots[col])
            changed = True
            while changed:
                changed = False
                for c in list(row):
                    if c != col and c in out:
                        axpy(row, row[c], out[c])
                        changed = True
                        break
            out[col] = row
        return out


def solve_unique(equations: list[tuple[dict, RationalFunction]], unknowns: list) -> dict:
    """Solve sum_j a_ij x_j = b_i exactly; requires a unique solution."""
    rhs = object()
    pos = {u: i for i, u in enumerate(unknowns)}
    # rhs column is the smallest, so it is never a pivot unless inconsistent
    key = lambda c: -1 if c is rhs else pos[c]
    ech = Echelon(key=key)
    for coeffs, b in equations:
        row = {k: v for k, v in coeffs.items() if v}
        if b:
            row[rhs] = -b
        ech.add(row)
    if rhs in ech.pivots:
        raise InconsistentSystem("linear system has no solution")
    if ech.rank < len(unknowns):
        raise SingularSystem(f"solution not unique (rank {ech.rank} < {len(unknowns)})")
    rref = ech.reduced_basis()
    return {u: -rref[u].get(rhs, ZERO) for u in unknowns}
