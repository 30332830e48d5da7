"""Sparse multivariate polynomials over Q in the variables x1..xn, y1..y(n+1).

A polynomial is stored as a dict mapping exponent tuples to nonzero
``Fraction`` coefficients.  Exponent tuples have length ``2n + 1`` and list the
x-exponents first, then the y-exponents::

    (a1, ..., an, b1, ..., bn, b(n+1))

so variable ``xi`` lives at index ``i - 1`` and ``yj`` at index ``n + j - 1``.
Polynomials are immutable; every operation returns a new instance.

The canonical monomial order is graded lexicographic with
x1 > x2 > ... > xn > y1 > ... > y(n+1), listed in descending order.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import ContainsYLast, FormatError, MixedY1Powers, NotDivisible, RingMismatch

Exps = tuple  # tuple[int, ...] of length 2n+1


def nvars(n: int) -> int:
    return 2 * n + 1


def x_index(n: int, i: int) -> int:
    if not 1 <= i <= n:
        raise IndexError(f"x{i} out of range for n={n}")
    return i - 1


def y_index(n: int, j: int) -> int:
    if not 1 <= j <= n + 1:
        raise IndexError(f"y{j} out of range for n={n}")
    return n + j - 1


def var_name(n: int, k: int) -> str:
    return f"x{k + 1}" if k < n else f"y{k - n + 1}"


def parse_var_name(n: int, name: str) -> int:
    name = name.strip()
    if len(name) < 2 or name[0] not in "xy" or not name[1:].isdigit():
        raise FormatError(f"bad variable name {name!r}")
    idx = int(name[1:])
    return x_index(n, idx) if name[0] == "x" else y_index(n, idx)


def monomial_key(exps: Exps) -> tuple:
    """Sort key; sorting with ``reverse=True`` gives the canonical order."""
    return (sum(exps), exps)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"coefficient must be exact, got {type(c).__name__}")


class Polynomial:
    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exps, object] | Iterable[tuple[Exps, object]] = ()):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        width = nvars(n)
        acc: dict[Exps, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = tuple(int(e) for e in exps)
            if len(exps) != width or min(exps, default=0) < 0:
                raise ValueError(f"exponent vector {exps} invalid for n={n}")
            acc[exps] = acc.get(exps, 0) + _as_fraction(c)
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, n: int, terms: dict) -> "Polynomial":
        # trusted constructor: terms already canonical (no zeros, Fractions)
        obj = cls.__new__(cls)
        obj.n = n
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._raw(n, {})

    @classmethod
    def constant(cls, n: int, c=1) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw(n, {(0,) * nvars(n): c} if c else {})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], c=1) -> "Polynomial":
        return cls(n, {tuple(exps): c})

    @classmethod
    def var(cls, n: int, k: int) -> "Polynomial":
        exps = [0] * nvars(n)
        exps[k] = 1
        return cls._raw(n, {tuple(exps): Fraction(1)})

    @classmethod
    def x(cls, n: int, i: int) -> "Polynomial":
        return cls.var(n, x_index(n, i))

    @classmethod
    def y(cls, n: int, j: int) -> "Polynomial":
        return cls.var(n, y_index(n, j))

    # -- accessors --------------------------------------------------------

    @property
    def terms(self) -> Mapping[Exps, Fraction]:
        return MappingProxyType(self._terms)

    def sorted_terms(self) -> list[tuple[Exps, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: monomial_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_in(self, k: int) -> int:
        """Degree in variable index ``k``; -1 for the zero polynomial."""
        return max((e[k] for e in self._terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def y_degree(self) -> int:
        n = self.n
        return max((sum(e[n:]) for e in self._terms), default=-1)

    def support(self) -> set[int]:
        return {k for e in self._terms for k, a in enumerate(e) if a}

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Exps, Fraction]]:
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.n == other.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.n, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.n != self.n:
                raise RingMismatch(f"n={self.n} vs n={other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.n, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = _as_fraction(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._raw(self.n, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exps, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple([u + v for u, v in zip(ea, eb)])
                out[e] = get(e, 0) + ca * cb
        return Polynomial._raw(self.n, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        if len(self._terms) == 2 and e > 1:
            return self._binomial_pow(e)
        result = Polynomial.constant(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def _binomial_pow(self, e: int) -> "Polynomial":
        (m1, c1), (m2, c2) = self._terms.items()
        out = {}
        for k in range(e + 1):
            exps = tuple(e_ * (e - k) + f * k for e_, f in zip(m1, m2))
            out[exps] = comb(e, k) * c1 ** (e - k) * c2**k
        return Polynomial._raw(self.n, out)

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                var_name(self.n, k) + (f"^{a}" if a > 1 else "") for k, a in enumerate(exps) if a
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" if head_sign == "-" else "") + head
        return text + "".join(f" {s} {b}" for s, b in parts[1:])

    def __repr__(self) -> str:
        return f"Polynomial(n={self.n}, {self})"


# -- functional surface ---------------------------------------------------


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def power(p: Polynomial, e: int) -> Polynomial:
    return p**e


def coeff_in_y_last(p: Polynomial, i: int) -> Polynomial:
    """The coefficient g_i of y(n+1)^i, as a polynomial free of y(n+1)."""
    last = nvars(p.n) - 1
    out = {}
    for e, c in p._terms.items():
        if e[last] == i:
            out[e[:last] + (0,)] = c
    return Polynomial._raw(p.n, out)


def y_last_coefficients(p: Polynomial) -> dict[int, Polynomial]:
    last = nvars(p.n) - 1
    buckets: dict[int, dict] = {}
    for e, c in p._terms.items():
        buckets.setdefault(e[last], {})[e[:last] + (0,)] = c
    return {i: Polynomial._raw(p.n, t) for i, t in sorted(buckets.items())}


def split_by_x1(g: Polynomial) -> list[tuple[int, int, Polynomial]]:
    """Write ``g = sum_j x1^j * y1^q_j * h_j`` with h_j free of x1, y1.

    Returns ``(j, q_j, h_j)`` sorted by ``j``; empty slices are omitted.
    """
    n = g.n
    ix1, iy1, last = 0, y_index(n, 1), nvars(n) - 1
    slices: dict[int, dict] = {}
    qs: dict[int, int] = {}
    for e, c in g._terms.items():
        if e[last]:
            raise ContainsYLast("polynomial involves y%d" % (n + 1))
        j, q = e[ix1], e[iy1]
        if qs.setdefault(j, q) != q:
            raise MixedY1Powers(f"x1^{j} slice has y1 exponents {qs[j]} and {q}")
        h = list(e)
        h[ix1] = h[iy1] = 0
        slices.setdefault(j, {})[tuple(h)] = c
    return [(j, qs[j], Polynomial._raw(n, slices[j])) for j in sorted(slices)]


def tau(m: Exps, n: int) -> int:
    """floor(a2/2) + ... + floor(an/2) - (b1 + ... + bn)."""
    return sum(a // 2 for a in m[1:n]) - sum(m[n : 2 * n])


def condition_weight(n: int) -> tuple[int, ...]:
    """x1 -> 1, y1 -> 2, y(n+1) -> 1, every other variable -> 0."""
    w = [0] * nvars(n)
    w[0] = 1
    w[y_index(n, 1)] = 2
    w[y_index(n, n + 1)] = 1
    return tuple(w)


def weight(m: Exps, w: Sequence[int]) -> int:
    if len(m) != len(w):
        raise ValueError("weight vector length mismatch")
    return sum(a * b for a, b in zip(m, w))


def is_homogeneous(p: Polynomial, w: Sequence[int]) -> int | None:
    """Common weight of all monomials of ``p``, or None.  The zero polynomial
    is homogeneous of every weight; we report 0 for it."""
    weights = {weight(e, w) for e in p._terms}
    if len(weights) > 1:
        return None
    return weights.pop() if weights else 0


def exact_div_x1(p: Polynomial, k: int) -> Polynomial:
    out = {}
    for e, c in p._terms.items():
        if e[0] < k:
            raise NotDivisible(f"monomial with x1-exponent {e[0]} not divisible by x1^{k}")
        out[(e[0] - k,) + e[1:]] = c
    return Polynomial._raw(p.n, out)


def mono_mul(a: Exps, b: Exps) -> Exps:
    return tuple([u + v for u, v in zip(a, b)])


# -- JSON -----------------------------------------------------------------


def fraction_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise FormatError(f"coefficient must be a 'num/den' string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad coefficient {s!r}") from exc


def poly_to_json(p: Polynomial) -> dict:
    n = p.n
    return {
        "n": n,
        "terms": [
            {"c": fraction_str(c), "x": list(e[:n]), "y": list(e[n:])} for e, c in p.sorted_terms()
        ],
    }


def poly_from_json(obj: Mapping) -> Polynomial:
    try:
        n = int(obj["n"])
        terms = []
        for t in obj["terms"]:
            x, y = list(t["x"]), list(t["y"])
            if len(x) != n or len(y) != n + 1:
                raise FormatError(f"exponent lengths {len(x)}/{len(y)} do not match n={n}")
            terms.append((tuple(x + y), parse_fraction(t["c"])))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed polynomial record: {exc}") from exc
    return Polynomial(n, terms)
