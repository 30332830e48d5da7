"""Compare the kernel computed by brute-force linear algebra with the span of
products of the explicit generators."""

from lndforge import f_gen, km_decompose, kuroda_delta, truncated_kernel_basis
from lndforge.derivation import mask_from_names
from lndforge.kernel_gens import generator_products

n, bound = 4, 4
mask = mask_from_names(n, ["x2", "x3", "x4", "y2", "y3", "y4"])
kb = truncated_kernel_basis(kuroda_delta(n), bound, mask)
products = generator_products(n, bound)
print(f"kernel of degree <= {bound} on x2..x4, y2..y4: dimension {len(kb)}")
print(f"generator products of degree <= {bound}: {len(products)}")
print("every product in the oracle span:", all(kb.contains(p) for p in products))

h = f_gen(n, 2, 3) * f_gen(n, 3, 4) + f_gen(n, 2, 4) * f_gen(n, 2, 4)
print("\nh =", h)
for s in km_decompose(h).summands:
    print(f"  coefficient {s.c}, x-exponents {s.d}, generator powers {s.t}")
