"""Exact sparse linear algebra over Q by fraction-free Gauss-Jordan elimination.

Rows are dicts ``column -> int``.  Rational input is cleared of denominators
row by row, and each row is kept primitive (content 1, positive pivot), so
nothing but Python integers ever enters the elimination.  Pivots are taken
in increasing column order, which makes the reduced form and every derived
basis deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

Row = dict  # dict[int, int]


def _integral(row: Mapping[int, object]) -> Row:
    vals = {k: Fraction(v) for k, v in row.items() if v}
    den = reduce(lcm, (v.denominator for v in vals.values()), 1)
    return {k: int(v * den) for k, v in vals.items()}


def _primitive(row: Row, pivot: int | None = None) -> Row:
    g = reduce(gcd, row.values(), 0)
    if g == 0:
        return {}
    if pivot is not None and row[pivot] < 0:
        g = -g
    return {k: v // g for k, v in row.items()}


def rref(rows: Iterable[Mapping[int, object]]) -> list[tuple[int, Row]]:
    """Reduced row echelon form as a list of ``(pivot_column, row)`` sorted by
    pivot.  Each row vanishes on every other row's pivot column."""
    pending = [r for r in (_integral(r) for r in rows) if r]
    reduced: dict[int, Row] = {}
    for row in pending:
        # eliminate known pivots from the incoming row
        for pc in sorted(set(row) & reduced.keys()):
            if pc not in row:
                continue
            prow = reduced[pc]
            a, b = prow[pc], row[pc]
            new = {k: a * v for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            row = _primitive(new)
            if not row:
                break
            # new pivots may have been introduced only from prow's non-pivot
            # columns, which never hold another pivot, so one pass suffices
        if not row:
            continue
        pc = min(row)
        row = _primitive(row, pc)
        # back-eliminate the new pivot from the existing rows
        for opc, orow in list(reduced.items()):
            b = orow.get(pc)
            if not b:
                continue
            a = row[pc]
            new = {k: a * v for k, v in orow.items()}
            for k, v in row.items():
                s = new.get(k, 0) - b * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            reduced[opc] = _primitive(new, opc)
        reduced[pc] = row
    return sorted(reduced.items())


def rank(rows: Iterable[Mapping[int, object]]) -> int:
    return len(rref(rows))


def columns_to_rows(columns: Sequence[Mapping[object, object]]) -> tuple[list[Row], list]:
    """Transpose sparse columns (keyed by arbitrary row labels) into rows.
    Returns the rows and the row labels in first-seen order."""
    labels: dict[object, int] = {}
    rows: list[dict] = []
    for j, col in enumerate(columns):
        for lab, v in col.items():
            if not v:
                continue
            i = labels.get(lab)
            if i is None:
                i = labels[lab] = len(rows)
                rows.append({})
            rows[i][j] = v
    return rows, list(labels)


def nullspace(columns: Sequence[Mapping[object, object]]) -> list[dict[int, int]]:
    """Integer basis of {c : sum_j c_j * columns[j] = 0}.

    One primitive vector per free column, in increasing free-column order;
    each vector has a 1-like (positive) entry on its free column and zeros on
    every other free column.
    """
    ncols = len(columns)
    rows, _ = columns_to_rows(columns)
    red = rref(rows)
    pivots = {pc for pc, _ in red}
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        # x_f = L, x_pc = -b_f * L / a for each pivot row a*x_pc + b_f*x_f + ... = 0
        L = reduce(lcm, (r[pc] for pc, r in red if r.get(f)), 1)
        vec = {f: L}
        for pc, r in red:
            b = r.get(f)
            if b:
                vec[pc] = -b * L // r[pc]
        basis.append(_primitive(vec, f))
    return basis


def solve(columns: Sequence[Mapping[object, object]], target: Mapping[object, object]) -> list[Fraction] | None:
    """A solution c of sum_j c_j * columns[j] = target, or None if inconsistent.

    Free variables are set to zero, so the solution is supported on the
    earliest linearly independent columns.
    """
    ncols = len(columns)
    aug = list(columns) + [target]
    rows, _ = columns_to_rows(aug)
    red = rref(rows)
    sol = [Fraction(0)] * ncols
    for pc, r in red:
        if pc == ncols:
            return None
        rhs = r.get(ncols, 0)
        sol[pc] = Fraction(rhs, r[pc])
    return sol


def in_span(columns: Sequence[Mapping[object, object]], target: Mapping[object, object]) -> bool:
    return solve(columns, target) is not None
