"""Exact linear algebra over Q used by span solves, restrictions and
eigenvector extraction."""

from __future__ import annotations

from fractions import Fraction


class LinearSolver:
    """Row-reduced basis of a list of vectors keyed by arbitrary hashables.

    Supports exact membership tests and coordinate recovery: each input vector
    is a dict key -> Fraction.
    """

    def __init__(self, vectors):
        self.vectors = [dict(v) for v in vectors]
        self._rows = []  # (pivot_key, row_dict, coords) with coords in input basis
        for idx, v in enumerate(self.vectors):
            row = dict(v)
            coords = {idx: Fraction(1)}
            row, coords = self._reduce(row, coords)
            if row:
                pivot = self._pick_pivot(row)
                scale = row[pivot]
                row = {k: c / scale for k, c in row.items()}
                coords = {k: c / scale for k, c in coords.items()}
                self._rows.append((pivot, row, coords))

    @staticmethod
    def _pick_pivot(row):
        return min(row.keys(), key=repr)

    def _reduce(self, row, coords):
        for pivot, prow, pcoords in self._rows:
            c = row.get(pivot)
            if c:
                for k, v in prow.items():
                    s = row.get(k, Fraction(0)) - c * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                for k, v in pcoords.items():
                    s = coords.get(k, Fraction(0)) - c * v
                    if s:
                        coords[k] = s
                    else:
                        coords.pop(k, None)
        return row, coords

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, target):
        """Return (residual, coefficients) with target = sum coeff_i * v_i + residual."""
        row = dict(target)
        coords = {}
        for pivot, prow, pcoords in self._rows:
            c = row.get(pivot)
            if c:
                for k, v in prow.items():
                    s = row.get(k, Fraction(0)) - c * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                for k, v in pcoords.items():
                    coords[k] = coords.get(k, Fraction(0)) + c * v
        coeffs = [coords.get(i, Fraction(0)) for i in range(len(self.vectors))]
        return row, coeffs

    def solve(self, target):
        """Coefficients expressing target in the span, or None."""
        residual, coeffs = self.reduce(target)
        return None if residual else coeffs


def solve_linear_system(rows, rhs):
    """Solve A c = b exactly; rows is a list of dicts unknown -> Fraction.

    Returns dict unknown -> Fraction (free unknowns set to 0), or None when
    the system is inconsistent.
    """
    pivots = {}  # unknown -> (row_dict, rhs_value), row normalized to pivot 1
    for raw_row, raw_b in zip(rows, rhs):
        row = dict(raw_row)
        b = Fraction(raw_b)
        for var, (prow, pb) in pivots.items():
            c = row.get(var)
            if c:
                for k, v in prow.items():
                    s = row.get(k, Fraction(0)) - c * v
                    if s:
                        row[k] = s
                    else:
                        row.pop(k, None)
                b -= c * pb
        if not row:
            if b:
                return None
            continue
        var = min(row, key=repr)
        c = row[var]
        row = {k: v / c for k, v in row.items()}
        b = b / c
        # eliminate the new pivot from existing rows
        for pvar in list(pivots):
            prow, pb = pivots[pvar]
            cc = prow.get(var)
            if cc:
                for k, v in row.items():
                    s = prow.get(k, Fraction(0)) - cc * v
                    if s:
                        prow[k] = s
                    else:
                        prow.pop(k, None)
                pivots[pvar] = (prow, pb - cc * b)
        pivots[var] = (row, b)
    solved = {}
    for var, (row, b) in pivots.items():
        # after full elimination each pivot row involves only free unknowns
        val = b
        for k, v in row.items():
            if k != var:
                val -= v * solved.get(k, Fraction(0))  # free unknowns are 0
        solved[var] = val
    return solved


def nullspace(matrix):
    """Exact nullspace basis of an r x c matrix (list of list of Fraction).

    Returns a list of length-c Fraction vectors.
    """
    r = len(matrix)
    c = len(matrix[0]) if r else 0
    m = [[Fraction(v) for v in row] for row in matrix]
    pivots = []
    row_i = 0
    for col in range(c):
        sel = None
        for i in range(row_i, r):
            if m[i][col]:
                sel = i
                break
        if sel is None:
            continue
        m[row_i], m[sel] = m[sel], m[row_i]
        pv = m[row_i][col]
        m[row_i] = [v / pv for v in m[row_i]]
        for i in range(r):
            if i != row_i and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[row_i])]
        pivots.append(col)
        row_i += 1
        if row_i == r:
            break
    free = [j for j in range(c) if j not in pivots]
    basis = []
    for fcol in free:
        vec = [Fraction(0)] * c
        vec[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            vec[pcol] = -m[i][fcol]
        basis.append(vec)
    return basis


def mat_vec(matrix, vec):
    return [sum((a * b for a, b in zip(row, vec)), Fraction(0)) for row in matrix]
