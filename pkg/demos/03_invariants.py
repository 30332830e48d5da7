"""Build the kernel elements with top coefficient x1 by successive elimination,
then replay and verify the recorded trace."""

import time

from lndforge import build_invariant, check_conditions, verify_certificate
from lndforge.poly import coeff_in_y_last

n = 4
for ell in range(1, 6):
    t0 = time.perf_counter()
    cert = build_invariant(n, ell)
    dt = time.perf_counter() - t0
    top = coeff_in_y_last(cert.divided, ell)
    print(f"ell={ell}: {len(cert.steps)} steps, {len(cert.divided)} terms, "
          f"top coefficient {top}, {dt * 1000:.1f} ms, violations {verify_certificate(cert)}")

cert = build_invariant(n, 2)
print("\nell=2 divided form:\n ", cert.divided)
step = cert.steps[0]
print(f"its single step: r={step.r} p={step.p} d={step.summand.d} q_split={step.q_split}")
print("conditions hold on G:", check_conditions(cert.G, n, 2).ok)
