from fractions import Fraction

import pytest

from conftest import P
from lndforge.derivation import in_kernel, kuroda_delta, mask_from_names, truncated_kernel_basis
from lndforge.errors import NotInKernel, UnsupportedVariables
from lndforge.kernel_gens import (
    KernelCombination,
    KernelSummand,
    combination_from_json,
    combination_to_json,
    expand,
    f_gen,
    f_top,
    generator_products,
    km_decompose,
)
from lndforge.poly import Polynomial

N = 4
INNER = ["x2", "x3", "x4", "y2", "y3", "y4"]


def test_f_gen():
    assert f_gen(N, 2, 1) == P(N, "x2^2*y1 - x1^2*y2")
    assert f_gen(N, 2, 3) == P(N, "x2^2*y3 - x3^2*y2")
    with pytest.raises(ValueError):
        f_gen(N, 3, 3)
    with pytest.raises(IndexError):
        f_gen(N, 0, 2)
    with pytest.raises(IndexError):
        f_gen(N, 2, 5)


def test_f_top():
    assert f_top(4) == P(4, "x1*y5 - x2*x3*x4*y1")
    assert in_kernel(kuroda_delta(4), f_top(4))
    assert f_top(2) == P(2, "x1*y3 - x2*y1")
    with pytest.raises(ValueError):
        f_top(1)


def summ(c, d, t):
    return KernelSummand(Fraction(c), tuple(d), tuple(sorted(t.items())))


def test_decompose_examples():
    assert km_decompose(P(N, "x2^2*y3 - x3^2*y2")).summands == (summ(1, (0, 0, 0), {(2, 3): 1}),)
    sq = P(N, "x2^4*y3^2 - 2*x2^2*x3^2*y2*y3 + x3^4*y2^2")
    assert km_decompose(sq).summands == (summ(1, (0, 0, 0), {(2, 3): 2}),)
    assert km_decompose(P(N, "x2^2*x3^2*x4^2")).summands == (summ(1, (2, 2, 2), {}),)
    with pytest.raises(NotInKernel):
        km_decompose(P(N, "y2"))
    with pytest.raises(UnsupportedVariables):
        km_decompose(P(N, "x1*x2"))
    with pytest.raises(UnsupportedVariables):
        km_decompose(P(N, "y1"))


def test_expand_examples():
    kc = KernelCombination(N, (summ(1, (0, 0, 0), {(2, 3): 1}),))
    assert expand(kc) == P(N, "x2^2*y3 - x3^2*y2")
    assert expand(KernelCombination(N, ())) == Polynomial.zero(N)


def test_decompose_rational_and_mixed():
    h = P(N, "1/3*x2*x3^3*x4*(x2^2*y4 - x4^2*y2) - 5*x2*x3*x4^3 + 7/2")
    kc = km_decompose(h)
    assert expand(kc) == h
    assert all(s.c != 0 for s in kc.summands)


def test_roundtrip_on_oracle_basis():
    delta = kuroda_delta(N)
    kb = truncated_kernel_basis(delta, 6, mask_from_names(N, INNER))
    for h in kb.elements:
        kc = km_decompose(h)
        assert expand(kc) == h
        assert in_kernel(delta, expand(kc))


def test_parity_transport():
    delta = kuroda_delta(N)
    kb = truncated_kernel_basis(delta, 6, mask_from_names(N, INNER))
    for h in kb.elements:
        parities = {tuple(a % 2 for a in e[1:N]) for e in h.terms}
        if len(parities) != 1:
            continue
        kc = km_decompose(h)
        assert {tuple(a % 2 for a in s.d) for s in kc.summands} == parities


def test_decompose_is_deterministic():
    h = f_gen(N, 2, 3) * f_gen(N, 2, 4) * P(N, "x3^2") + f_gen(N, 3, 4) * f_gen(N, 2, 3) * P(N, "x2^2")
    a = km_decompose(h)
    b = km_decompose(Polynomial(N, list(reversed(list(h.terms.items())))))
    assert a == b
    assert expand(a) == h


def test_generator_products_count():
    # degree <= 3 in x2, x3, x4, f23, f24, f34: 20 x-monomials + 3 single f's
    assert len(generator_products(N, 3)) == 23


def test_json_roundtrip():
    kc = km_decompose(P(N, "x2^2*y3 - x3^2*y2 + 1/2*x4^2"))
    obj = combination_to_json(kc)
    assert obj["summands"][0]["t"] in ([], [[2, 3, 1]])
    assert combination_from_json(obj) == kc
