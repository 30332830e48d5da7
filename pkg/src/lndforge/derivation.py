"""k-derivations of B = Q[x1..xn, y1..y(n+1)] and a brute-force kernel oracle."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Collection, Sequence

from . import linalg
from .errors import FormatError, IterationCapExceeded, RingMismatch
from .poly import Polynomial, nvars, parse_var_name, poly_from_json, poly_to_json


@dataclass(frozen=True)
class Derivation:
    """A derivation given by the images of the 2n+1 variables."""

    n: int
    images: tuple[Polynomial, ...]

    def __post_init__(self):
        if len(self.images) != nvars(self.n):
            raise ValueError(f"need {nvars(self.n)} images, got {len(self.images)}")
        for im in self.images:
            if im.n != self.n:
                raise RingMismatch("image lives in a different ring")

    def image(self, k: int) -> Polynomial:
        return self.images[k]

    def __call__(self, p: Polynomial) -> Polynomial:
        return apply(self, p)


def kuroda_delta(n: int) -> Derivation:
    """delta(xi) = 0, delta(yi) = xi^2 (i <= n), delta(y(n+1)) = x1*...*xn."""
    if n < 2:
        raise ValueError("kuroda_delta needs n >= 2")
    images = [Polynomial.zero(n)] * n
    images += [Polynomial.x(n, i) ** 2 for i in range(1, n + 1)]
    images.append(Polynomial.monomial(n, (1,) * n + (0,) * (n + 1)))
    return Derivation(n, tuple(images))


def is_kuroda(d: Derivation) -> bool:
    return d.n >= 2 and d.images == kuroda_delta(d.n).images


def apply(d: Derivation, p: Polynomial) -> Polynomial:
    if p.n != d.n:
        raise RingMismatch(f"derivation on n={d.n}, polynomial on n={p.n}")
    n = d.n
    acc: dict[tuple, Fraction] = {}
    images = [im.terms for im in d.images]
    for e, c in p.terms.items():
        for k, a in enumerate(e):
            if not a or not images[k]:
                continue
            # c * a * (m / v_k) * delta(v_k)
            base = list(e)
            base[k] -= 1
            coef = c * a
            for ei, ci in images[k].items():
                key = tuple([u + v for u, v in zip(base, ei)])
                acc[key] = acc.get(key, 0) + coef * ci
    return Polynomial(n, acc)


def in_kernel(d: Derivation, p: Polynomial) -> bool:
    return apply(d, p).is_zero()


def nilpotency_index(d: Derivation, p: Polynomial, cap: int | None = None) -> int:
    """Least N with d^N(p) = 0.

    For the Kuroda derivation every image is y-free, so each application
    lowers the y-degree and N <= ydeg(p) + 1; that is the default cap.  Other
    derivations need an explicit ``cap``.
    """
    if cap is None:
        if not is_kuroda(d):
            raise ValueError("an iteration cap is required for non-Kuroda derivations")
        cap = max(p.y_degree(), 0) + 1
    q = p
    for N in range(cap + 1):
        if q.is_zero():
            return N
        q = apply(d, q)
    raise IterationCapExceeded(f"d^N(p) != 0 for all N <= {cap}")


# -- kernel oracle --------------------------------------------------------


def grading_key(e: Sequence[int], n: int) -> tuple[int, ...]:
    """A multidegree under which the Kuroda derivation is homogeneous.

    Component i (1 <= i <= n) weighs xi by 1, yi by 2, y(n+1) by 1; the last
    component is the total y-degree.  delta preserves the first n components
    and lowers the last by one, so its kernel splits along these pieces.
    """
    last = e[2 * n]
    return tuple(e[i] + 2 * e[n + i] + last for i in range(n)) + (sum(e[n:]),)


def monomials_up_to(variables: Sequence[int], width: int, degree_bound: int) -> list[tuple]:
    out = []
    for deg in range(degree_bound + 1):
        for combo in combinations_with_replacement(variables, deg):
            e = [0] * width
            for k in combo:
                e[k] += 1
            out.append(tuple(e))
    return out


@dataclass(frozen=True)
class KernelBasis:
    degree_bound: int
    elements: tuple[Polynomial, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def contains(self, p: Polynomial) -> bool:
        """Whether ``p`` lies in the Q-span of the basis."""
        return linalg.in_span([e.terms for e in self.elements], p.terms)


def truncated_kernel_basis(
    d: Derivation, degree_bound: int, variable_mask: Collection[int] | None = None
) -> KernelBasis:
    """Basis of {p : deg p <= bound, p supported on the mask, d(p) = 0}.

    ``variable_mask`` holds variable indices (see ``poly.x_index``/``y_index``);
    None means all variables.  For the Kuroda derivation the monomial basis is
    first split by ``grading_key`` and each block is solved on its own.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    n = d.n
    variables = sorted(range(nvars(n)) if variable_mask is None else set(variable_mask))
    monos = monomials_up_to(variables, nvars(n), degree_bound)
    if is_kuroda(d):
        blocks: dict[tuple, list] = {}
        for e in monos:
            blocks.setdefault(grading_key(e, n), []).append(e)
        groups = [blocks[k] for k in sorted(blocks)]
    else:
        groups = [monos]
    elements = []
    for group in groups:
        images = [apply(d, Polynomial._raw(n, {e: Fraction(1)})).terms for e in group]
        for vec in linalg.nullspace(images):
            elements.append(Polynomial(n, {group[j]: c for j, c in vec.items()}))
    return KernelBasis(degree_bound, tuple(elements))


def kernel_basis_to_json(kb: KernelBasis) -> dict:
    return {"degree_bound": kb.degree_bound, "elements": [poly_to_json(p) for p in kb.elements]}


def kernel_basis_from_json(obj) -> KernelBasis:
    try:
        return KernelBasis(int(obj["degree_bound"]), tuple(poly_from_json(p) for p in obj["elements"]))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed kernel basis: {exc}") from exc


def mask_from_names(n: int, names: Sequence[str]) -> list[int]:
    return [parse_var_name(n, s) for s in names]

