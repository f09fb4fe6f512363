"""Exact sparse linear algebra over the rationals and Gaussian rationals.

Rows are dicts column->value.  Everything here is plumbing for nullspace
(harmonic bases, monogenics) and consistent-system solving (psi-span
expansion); coefficients stay Fraction or QQi throughout.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import QQi


class SparseRREF:
    """Incremental reduced echelon form; rows are sparse dicts."""

    def __init__(self):
        self.pivots = {}          # pivot column -> reduced row dict

    def reduce(self, row):
        """Reduce `row` (destructively) against the current pivots."""
        changed = True
        while changed:
            changed = False
            for col in list(row):
                piv = self.pivots.get(col)
                if piv is None:
                    continue
                factor = row[col]
                for c, v in piv.items():
                    cur = row.get(c)
                    nv = (-factor * v) if cur is None else cur - factor * v
                    if nv:
                        row[c] = nv
                    elif c in row:
                        del row[c]
                changed = True
        return row

    def insert(self, row):
        """Reduce and, if nonzero, normalize and adopt as a new pivot row.

        Returns the pivot column, or None if the row reduced to zero.
        """
        row = self.reduce(row)
        if not row:
            return None
        col = min(row)
        inv = 1 / row[col] if isinstance(row[col], Fraction) \
            else row[col].inverse()
        row = {c: v * inv for c, v in row.items()}
        for pcol, prow in self.pivots.items():
            f = prow.get(col)
            if f is None:
                continue
            for c, v in row.items():
                cur = prow.get(c)
                nv = (-f * v) if cur is None else cur - f * v
                if nv:
                    prow[c] = nv
                elif c in prow:
                    del prow[c]
        self.pivots[col] = row
        return col

    @property
    def rank(self):
        return len(self.pivots)


def nullspace(columns, rows_of):
    """Nullspace of a linear map given column-wise.

    `columns` is the ordered list of column keys; `rows_of(key)` returns
    the sparse image dict of that basis column.  Returns a list of sparse
    dicts column_index -> Fraction spanning the kernel, echelon-normalized
    deterministically (free column gets coefficient 1).
    """
    rref = SparseRREF()
    # transpose: build matrix rows indexed by image coordinates
    mat_rows = {}
    for ci, key in enumerate(columns):
        for rkey, val in rows_of(key).items():
            mat_rows.setdefault(rkey, {})[ci] = Fraction(val)
    for rkey in sorted(mat_rows):
        rref.insert(mat_rows[rkey])
    pivot_cols = set(rref.pivots)
    null = []
    for ci in range(len(columns)):
        if ci in pivot_cols:
            continue
        vec = {ci: Fraction(1)}
        for pcol, prow in rref.pivots.items():
            v = prow.get(ci)
            if v:
                vec[pcol] = -v
        null.append(vec)
    return null


def solve_rational(columns_rows, rhs, ncols):
    """Solve A*x = rhs for one particular solution over QQi.

    `columns_rows[j]` is the sparse dict (row -> Fraction) of column j;
    `rhs` is a sparse dict row -> QQi.  Returns a list of QQi of length
    ncols (free variables zero) or None if the system is inconsistent.
    The rhs is carried as an extra column with index ncols, so a pivot
    landing there means 0 = nonzero.
    """
    aug = ncols
    rows = {}
    for j in range(ncols):
        for rkey, val in columns_rows[j].items():
            rows.setdefault(rkey, {})[j] = QQi(val)
    for rkey, val in rhs.items():
        if val:
            rows.setdefault(rkey, {})[aug] = val
    rref = SparseRREF()
    for rkey in sorted(rows):
        if rref.insert(rows[rkey]) == aug:
            return None
    sol = [QQi(0)] * ncols
    for pcol, prow in rref.pivots.items():
        sol[pcol] = prow.get(aug, QQi(0))
    return sol
