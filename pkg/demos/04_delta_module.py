"""The module of differentials with the induced derivation D, where
D(dp) = d(delta p)."""

from lndforge import (
    Polynomial,
    apply_md,
    commutes_check,
    differential,
    in_m0,
    invariant_differential,
    kuroda_delta,
    omega_derivation,
    truncated_m0_basis,
)
from lndforge.delta_module import basis_name

n = 4
delta, D = kuroda_delta(n), omega_derivation(n)
dy1 = differential(Polynomial.y(n, 1))
print("D(dy1) =", {basis_name(n, k): str(v) for k, v in apply_md(D, dy1).coeffs.items()})
print("commutes on y1*y5:", commutes_check(delta, D, Polynomial.y(n, 1) * Polynomial.y(n, 5)))

for ell in range(1, 4):
    rep = in_m0(D, invariant_differential(n, ell))
    print(f"d(invariant, ell={ell}) lies in the kernel of D: {rep.in_m0}")

for bound in range(3):
    print(f"kernel of D with coefficient degree <= {bound}: dimension {len(truncated_m0_basis(D, bound))}")
