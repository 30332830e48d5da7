import random
from fractions import Fraction

import pytest
import sympy

from lndforge import linalg


def random_columns(rng, ncols, nrows, density=0.4):
    cols = []
    for _ in range(ncols):
        col = {}
        for r in range(nrows):
            if rng.random() < density:
                col[r] = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
        cols.append(col)
    return cols


def dense(cols, nrows):
    return sympy.Matrix(nrows, len(cols), lambda r, c: sympy.Rational(str(cols[c].get(r, 0))))


@pytest.mark.parametrize("seed", range(25))
def test_nullspace_against_sympy(seed):
    rng = random.Random(seed)
    nrows, ncols = rng.randint(1, 7), rng.randint(1, 8)
    cols = random_columns(rng, ncols, nrows)
    if rng.random() < 0.3 and ncols > 2:
        # force a dependency
        cols[-1] = {r: 2 * cols[0].get(r, 0) - cols[1].get(r, 0) for r in range(nrows)}
    M = dense(cols, nrows)
    basis = linalg.nullspace(cols)
    assert len(basis) == ncols - M.rank()
    for vec in basis:
        v = sympy.Matrix([vec.get(j, 0) for j in range(ncols)])
        assert M * v == sympy.zeros(nrows, 1)
    if basis:
        B = sympy.Matrix([[vec.get(j, 0) for j in range(ncols)] for vec in basis])
        assert B.rank() == len(basis)


@pytest.mark.parametrize("seed", range(25))
def test_solve_against_sympy(seed):
    rng = random.Random(100 + seed)
    nrows, ncols = rng.randint(1, 6), rng.randint(1, 6)
    cols = random_columns(rng, ncols, nrows)
    if rng.random() < 0.5:
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in range(ncols)]
        target = {r: sum(c * col.get(r, 0) for c, col in zip(coeffs, cols)) for r in range(nrows)}
    else:
        target = {r: Fraction(rng.randint(-3, 3)) for r in range(nrows)}
    M = dense(cols, nrows)
    t = sympy.Matrix([sympy.Rational(str(target.get(r, 0))) for r in range(nrows)])
    consistent = M.rank() == M.row_join(t).rank()
    sol = linalg.solve(cols, target)
    assert (sol is not None) == consistent
    if sol is not None:
        v = sympy.Matrix([sympy.Rational(str(c)) for c in sol])
        assert M * v == t


def test_solve_prefers_earlier_columns():
    cols = [{0: 1}, {0: 2}, {1: 1}]
    assert linalg.solve(cols, {0: 4, 1: 1}) == [4, 0, 1]


def test_rref_is_integral_and_reduced():
    red = linalg.rref([{0: Fraction(1, 2), 1: 1}, {0: 1, 2: Fraction(-1, 3)}])
    pivots = [pc for pc, _ in red]
    assert pivots == [0, 1]
    for pc, row in red:
        assert all(isinstance(v, int) for v in row.values())
        assert row[pc] > 0
        assert all(row.get(other, 0) == 0 for other in pivots if other != pc)


def test_empty_inputs():
    assert linalg.nullspace([]) == []
    assert linalg.nullspace([{}, {}]) == [{0: 1}, {1: 1}]
    assert linalg.solve([], {}) == []
    assert linalg.solve([], {0: 1}) is None
