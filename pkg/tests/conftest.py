import sys
import random
from fractions import Fraction

import pytest
import sympy

from lndforge.poly import Polynomial, nvars


def symbols(n):
    xs = sympy.symbols(f"x1:{n + 1}")
    ys = sympy.symbols(f"y1:{n + 2}")
    return xs + ys


def P(n, text):
    """Build a Polynomial from a human-written expression, via sympy."""
    gens = symbols(n)
    expr = sympy.sympify(text.replace("^", "**"), locals={str(g): g for g in gens})
    poly = sympy.Poly(sympy.expand(expr), *gens)
    return Polynomial(n, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})


def to_sympy(p):
    gens = symbols(p.n)
    return sum(
        (sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[g**a for g, a in zip(gens, e)])
         for e, c in p.terms.items()),
        sympy.Integer(0),
    )


def random_poly(rng, n, max_terms=4, max_deg=3, variables=None, coeff_range=3):
    width = nvars(n)
    variables = list(range(width)) if variables is None else list(variables)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        e = [0] * width
        for _ in range(rng.randint(0, max_deg)):
            e[rng.choice(variables)] += 1
        c = rng.randint(-coeff_range, coeff_range)
        terms[tuple(e)] = terms.get(tuple(e), 0) + c
    return Polynomial(n, terms)


@pytest.fixture
def rng():
    return random.Random(20261019)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in mod.RESULTS:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        terminalreporter.write_line(f"{line}  ({detail})" if detail else line)
