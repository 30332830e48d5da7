"""Polynomials in x1..xn, y1..y_{n+1} and the Kuroda derivation acting on them."""

from lndforge import Polynomial, apply, kuroda_delta, nilpotency_index, tau

n = 4
x1, y1, y5 = Polynomial.x(n, 1), Polynomial.y(n, 1), Polynomial.y(n, 5)
delta = kuroda_delta(n)

print("images of the derivation:")
for j in range(1, n + 2):
    print(f"  delta(y{j}) = {delta(Polynomial.y(n, j))}")

p = x1 * y5 - y1 * Polynomial.x(n, 2) * Polynomial.x(n, 3) * Polynomial.x(n, 4)
print("\np        =", p)
print("delta(p) =", apply(delta, p), "(so p is an invariant)")

q = y1**2 * y5
print("\nq =", q)
k = nilpotency_index(delta, q)
print(f"delta kills q after {k} applications")

m = (0, 2, 0, 0, 0, 1, 0, 0, 0)  # x2^2 y2
print("\ntau(x2^2*y2) =", tau(m, n), " tau(1) =", tau((0,) * 9, n))
