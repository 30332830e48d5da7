"""The differential module Omega_{B/k} as a delta-module.

Elements are B-linear combinations of dx1..dxn, dy1..dy(n+1); basis symbols
share their index with the corresponding variable (dxi at i-1, dyj at n+j-1).
A module derivation is given by the images of the basis symbols and extended
by  D(b*e) = delta(b)*e + b*D(e).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping

from . import linalg
from .derivation import Derivation, apply, grading_key, is_kuroda, kuroda_delta, monomials_up_to
from .errors import FormatError, IterationCapExceeded, RingMismatch
from .invariant import build_invariant
from .poly import Polynomial, nvars, poly_from_json, poly_to_json, var_name


def basis_name(n: int, k: int) -> str:
    return "d" + var_name(n, k)


class FreeModuleElement:
    """An immutable element sum_k coeffs[k] * d(v_k) of the free module."""

    __slots__ = ("n", "_coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, Polynomial] = ()):
        self.n = n
        out = {}
        for k, p in dict(coeffs).items():
            if not 0 <= k < nvars(n):
                raise IndexError(f"basis index {k} out of range for n={n}")
            if p.n != n:
                raise RingMismatch("coefficient lives in a different ring")
            if p:
                out[k] = p
        self._coeffs = out

    @classmethod
    def basis(cls, n: int, k: int) -> "FreeModuleElement":
        return cls(n, {k: Polynomial.constant(n, 1)})

    @property
    def coeffs(self) -> Mapping[int, Polynomial]:
        return MappingProxyType(self._coeffs)

    def coeff(self, k: int) -> Polynomial:
        return self._coeffs.get(k, Polynomial.zero(self.n))

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def _check(self, other: "FreeModuleElement"):
        if other.n != self.n:
            raise RingMismatch(f"n={self.n} vs n={other.n}")

    def __add__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        self._check(other)
        out = dict(self._coeffs)
        for k, p in other._coeffs.items():
            out[k] = out[k] + p if k in out else p
        return FreeModuleElement(self.n, out)

    def __neg__(self) -> "FreeModuleElement":
        return FreeModuleElement(self.n, {k: -p for k, p in self._coeffs.items()})

    def __sub__(self, other: "FreeModuleElement") -> "FreeModuleElement":
        return self + (-other)

    def __rmul__(self, b) -> "FreeModuleElement":
        if isinstance(b, (int, Fraction)):
            b = Polynomial.constant(self.n, b)
        if not isinstance(b, Polynomial):
            return NotImplemented
        if b.n != self.n:
            raise RingMismatch(f"n={self.n} vs n={b.n}")
        return FreeModuleElement(self.n, {k: b * p for k, p in self._coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.n == other.n and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self._coeffs.items())))

    def y_degree(self) -> int:
        """Largest y-degree of a coefficient, counting a dy basis symbol as one more."""
        n = self.n
        return max((p.y_degree() + (k >= n) for k, p in self._coeffs.items()), default=-1)

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        return " + ".join(f"({p})*{basis_name(self.n, k)}" for k, p in sorted(self._coeffs.items()))

    def __repr__(self) -> str:
        return f"FreeModuleElement(n={self.n}, {self})"


def differential(p: Polynomial) -> FreeModuleElement:
    """d(p) = sum over variables v of (dp/dv) dv."""
    n = p.n
    parts: dict[int, dict] = {}
    for e, c in p.terms.items():
        for k, a in enumerate(e):
            if a:
                lowered = e[:k] + (a - 1,) + e[k + 1 :]
                bucket = parts.setdefault(k, {})
                bucket[lowered] = bucket.get(lowered, 0) + a * c
    return FreeModuleElement(n, {k: Polynomial(n, t) for k, t in parts.items()})


@dataclass(frozen=True)
class ModuleDerivation:
    base: Derivation
    basis_images: tuple[FreeModuleElement, ...]

    @property
    def n(self) -> int:
        return self.base.n

    def __post_init__(self):
        if len(self.basis_images) != nvars(self.base.n):
            raise ValueError("one image per basis symbol is required")


def omega_derivation(n: int) -> ModuleDerivation:
    """D(dxi) = 0, D(dyi) = 2 xi dxi, D(dy(n+1)) = sum_i (x1...xn / xi) dxi."""
    if n < 2:
        raise ValueError("omega_derivation needs n >= 2")
    images = [FreeModuleElement(n)] * n
    for i in range(n):
        images.append(FreeModuleElement(n, {i: Polynomial.var(n, i).scale(2)}))
    last = {}
    for i in range(n):
        e = [1] * n + [0] * (n + 1)
        e[i] = 0
        last[i] = Polynomial.monomial(n, e)
    images.append(FreeModuleElement(n, last))
    return ModuleDerivation(kuroda_delta(n), tuple(images))


def omega_of(d: Derivation) -> ModuleDerivation:
    """The natural module derivation D(dv) = d(delta(v)) for any derivation."""
    return ModuleDerivation(d, tuple(differential(im) for im in d.images))


def apply_md(dm: ModuleDerivation, e: FreeModuleElement) -> FreeModuleElement:
    if e.n != dm.n:
        raise RingMismatch(f"module derivation on n={dm.n}, element on n={e.n}")
    out = FreeModuleElement(e.n)
    for k, c in e.coeffs.items():
        out = out + FreeModuleElement(e.n, {k: apply(dm.base, c)})
        image = dm.basis_images[k]
        if image:
            out = out + c * image
    return out


@dataclass(frozen=True)
class M0Report:
    element: FreeModuleElement
    image: FreeModuleElement
    in_m0: bool


def in_m0(dm: ModuleDerivation, e: FreeModuleElement) -> M0Report:
    image = apply_md(dm, e)
    return M0Report(e, image, image.is_zero())


def commutes_check(d: Derivation, dm: ModuleDerivation, p: Polynomial) -> bool:
    return apply_md(dm, differential(p)) == differential(apply(d, p))


def md_nilpotency_index(dm: ModuleDerivation, e: FreeModuleElement, cap: int | None = None) -> int:
    """Least N with D^N(e) = 0.  Default cap y_degree(e) + 1 (every image in the
    Omega construction lowers the y-degree by one)."""
    if cap is None:
        cap = max(e.y_degree(), 0) + 1
    cur = e
    for N in range(cap + 1):
        if cur.is_zero():
            return N
        cur = apply_md(dm, cur)
    raise IterationCapExceeded(f"D^N(e) != 0 for all N <= {cap}")


def invariant_differential(n: int, ell: int) -> FreeModuleElement:
    return differential(build_invariant(n, ell).divided)


def truncated_m0_basis(dm: ModuleDerivation, degree_bound: int) -> list[FreeModuleElement]:
    """Basis of {e : every coefficient has degree <= bound, D(e) = 0}.

    Unknowns are pairs (monomial, basis symbol).  Giving dv the weight of v
    makes the Omega derivation homogeneous for ``grading_key``, so for the
    Kuroda base the system is solved block by block.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be non-negative")
    n = dm.n
    width = nvars(n)
    monos = monomials_up_to(range(width), width, degree_bound)
    unknowns = [(e, k) for k in range(width) for e in monos]
    if is_kuroda(dm.base) and dm.basis_images == omega_derivation(n).basis_images:
        blocks: dict[tuple, list] = {}
        for e, k in unknowns:
            shifted = e[:k] + (e[k] + 1,) + e[k + 1 :]
            blocks.setdefault(grading_key(shifted, n), []).append((e, k))
        groups = [blocks[key] for key in sorted(blocks)]
    else:
        groups = [unknowns]
    out = []
    for group in groups:
        cols = []
        for e, k in group:
            img = apply_md(dm, FreeModuleElement(n, {k: Polynomial._raw(n, {e: Fraction(1)})}))
            cols.append({(kk, m): c for kk, p in img.coeffs.items() for m, c in p.terms.items()})
        for vec in linalg.nullspace(cols):
            parts: dict[int, dict] = {}
            for j, c in vec.items():
                e, k = group[j]
                parts.setdefault(k, {})[e] = c
            out.append(FreeModuleElement(n, {k: Polynomial(n, t) for k, t in parts.items()}))
    return out


# -- JSON -----------------------------------------------------------------


def element_to_json(e: FreeModuleElement) -> dict:
    """Map from basis symbol to polynomial record, in basis order, zeros omitted."""
    return {basis_name(e.n, k): poly_to_json(p) for k, p in sorted(e.coeffs.items())}


def element_from_json(obj, n: int | None = None) -> FreeModuleElement:
    """Inverse of ``element_to_json``.  ``n`` is needed only for the empty map."""
    try:
        coeffs_raw = {name: poly_from_json(p) for name, p in obj.items()}
    except (AttributeError, TypeError) as exc:
        raise FormatError(f"malformed module element: {exc}") from exc
    ns = {p.n for p in coeffs_raw.values()}
    if n is not None:
        ns.add(n)
    if len(ns) != 1:
        raise FormatError("cannot determine a single n for the module element")
    n = ns.pop()
    names = {basis_name(n, k): k for k in range(nvars(n))}
    coeffs = {}
    for name, p in coeffs_raw.items():
        if name not in names:
            raise FormatError(f"unknown basis symbol {name!r}")
        coeffs[names[name]] = p
    return FreeModuleElement(n, coeffs)
