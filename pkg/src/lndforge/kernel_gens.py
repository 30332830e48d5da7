"""Named kernel generators and decomposition of kernel elements of
Q[x2..xn, y2..yn] into polynomials in x2..xn and the f(i,j)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import linalg
from .derivation import in_kernel, kuroda_delta
from .errors import DecompositionFailed, FormatError, NotInKernel, UnsupportedVariables
from .poly import Polynomial, fraction_str, nvars, parse_fraction, x_index, y_index


@lru_cache(maxsize=None)
def f_gen(n: int, i: int, j: int) -> Polynomial:
    """f(i,j) = xi^2 yj - xj^2 yi for 1 <= i, j <= n, i != j."""
    if i == j:
        raise ValueError("f_gen needs i != j")
    if not (1 <= i <= n and 1 <= j <= n):
        raise IndexError(f"f_gen({i},{j}) out of range for n={n}")
    a = [0] * nvars(n)
    a[x_index(n, i)] = 2
    a[y_index(n, j)] = 1
    b = [0] * nvars(n)
    b[x_index(n, j)] = 2
    b[y_index(n, i)] = 1
    return Polynomial(n, {tuple(a): 1, tuple(b): -1})


@lru_cache(maxsize=None)
def f_top(n: int) -> Polynomial:
    """f(1,n+1) = x1 y(n+1) - x2...xn y1."""
    if n < 2:
        raise ValueError("f_top needs n >= 2")
    a = [0] * nvars(n)
    a[x_index(n, 1)] = 1
    a[y_index(n, n + 1)] = 1
    b = [0] * nvars(n)
    for i in range(2, n + 1):
        b[x_index(n, i)] = 1
    b[y_index(n, 1)] = 1
    return Polynomial(n, {tuple(a): 1, tuple(b): -1})


def inner_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(2, n + 1), 2))


@dataclass(frozen=True)
class KernelSummand:
    c: Fraction
    d: tuple[int, ...]  # exponents of x2..xn
    t: tuple[tuple[tuple[int, int], int], ...]  # ((i, j), t_ij), i < j, sorted, t_ij > 0

    def t_map(self) -> dict[tuple[int, int], int]:
        return dict(self.t)


@dataclass(frozen=True)
class KernelCombination:
    n: int
    summands: tuple[KernelSummand, ...]

    def __len__(self) -> int:
        return len(self.summands)


def x_monomial(n: int, d) -> Polynomial:
    e = [0] * nvars(n)
    for i, a in enumerate(d, start=2):
        e[x_index(n, i)] = a
    return Polynomial.monomial(n, e)


def f_product(n: int, t) -> Polynomial:
    """prod f(i,j)^t_ij for a mapping or item sequence of ((i, j), t_ij)."""
    items = t.items() if isinstance(t, dict) else t
    out = Polynomial.constant(n, 1)
    for (i, j), k in sorted(items):
        if k:
            out = out * _f_power(n, i, j, k)
    return out


@lru_cache(maxsize=4096)
def _f_power(n: int, i: int, j: int, k: int) -> Polynomial:
    return f_gen(n, i, j) ** k


def expand_summand(n: int, s: KernelSummand) -> Polynomial:
    return (x_monomial(n, s.d) * f_product(n, s.t)).scale(s.c)


def expand(kc: KernelCombination) -> Polynomial:
    out = Polynomial.zero(kc.n)
    for s in kc.summands:
        out = out + expand_summand(kc.n, s)
    return out


# -- decomposition --------------------------------------------------------


def _block_key(e, n: int) -> tuple:
    # (a_i + 2 b_i for i = 2..n, total y-degree): every f(i,j) and x_i is
    # homogeneous for it, and so is the derivation
    return tuple(e[i - 1] + 2 * e[n + i - 1] for i in range(2, n + 1)) + (sum(e[n:]),)


def _candidates(n: int, key: tuple) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (d, t) with x^d * prod f^t in the block ``key``, sorted by (d, t)."""
    pairs = inner_pairs(n)
    K, Y = list(key[:-1]), key[-1]
    out = []

    def rec(idx: int, remaining: int, cap: list[int], t: list[int]):
        if idx == len(pairs):
            if remaining == 0:
                # whatever x-degree the f's did not use is the cofactor
                out.append((tuple(cap), tuple(t)))
            return
        i, j = pairs[idx]
        top = min(remaining, cap[i - 2] // 2, cap[j - 2] // 2)
        for k in range(top + 1):
            cap[i - 2] -= 2 * k
            cap[j - 2] -= 2 * k
            t.append(k)
            rec(idx + 1, remaining - k, cap, t)
            t.pop()
            cap[i - 2] += 2 * k
            cap[j - 2] += 2 * k

    rec(0, Y, K, [])
    out.sort()
    return out


def km_decompose(h: Polynomial) -> KernelCombination:
    """Express a kernel element of Q[x2..xn, y2..yn] as
    sum c * x2^d2...xn^dn * prod f(i,j)^t_ij.

    Each homogeneous block of ``h`` (see ``_block_key``) is matched against
    every generator product landing in that block; the coefficients come from
    an exact linear solve that prefers earlier candidates in (d, t) order.
    """
    n = h.n
    allowed = {x_index(n, i) for i in range(2, n + 1)} | {y_index(n, i) for i in range(2, n + 1)}
    bad = h.support() - allowed
    if bad:
        raise UnsupportedVariables(f"variables outside x2..x{n}, y2..y{n}: {sorted(bad)}")
    if n < 2 or not in_kernel(kuroda_delta(n), h):
        raise NotInKernel("input is not annihilated by the derivation")
    pairs = inner_pairs(n)
    blocks: dict[tuple, dict] = {}
    for e, c in h.terms.items():
        blocks.setdefault(_block_key(e, n), {})[e] = c
    summands = []
    for key in sorted(blocks):
        cands = _candidates(n, key)
        cols = []
        for d, t in cands:
            tt = tuple((p, k) for p, k in zip(pairs, t) if k)
            cols.append((x_monomial(n, d) * f_product(n, tt)).terms)
        sol = linalg.solve(cols, blocks[key])
        if sol is None:
            raise DecompositionFailed(f"block {key} is not spanned by generator products")
        for (d, t), c in zip(cands, sol):
            if c:
                tt = tuple((p, k) for p, k in zip(pairs, t) if k)
                summands.append(KernelSummand(c, d, tt))
    return KernelCombination(n, tuple(summands))


def generator_products(n: int, degree_bound: int) -> list[Polynomial]:
    """Every x2^d2...xn^dn * prod f(i,j)^t_ij (2 <= i < j <= n) of total
    degree <= degree_bound, unexpanded duplicates included."""
    pairs = inner_pairs(n)
    out = []
    for total in range(degree_bound + 1):
        for Y in range(total // 3 + 1):
            xdeg = total - 3 * Y
            for t in _compositions(Y, len(pairs)):
                for d in _compositions(xdeg, n - 1):
                    tt = tuple((p, k) for p, k in zip(pairs, t) if k)
                    out.append(x_monomial(n, d) * f_product(n, tt))
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


# -- JSON -----------------------------------------------------------------


def combination_to_json(kc: KernelCombination) -> dict:
    return {
        "n": kc.n,
        "summands": [
            {"c": fraction_str(s.c), "d": list(s.d), "t": [[i, j, k] for (i, j), k in s.t]}
            for s in kc.summands
        ],
    }


def combination_from_json(obj) -> KernelCombination:
    try:
        n = int(obj["n"])
        summands = []
        for s in obj["summands"]:
            t = tuple(sorted(((int(i), int(j)), int(k)) for i, j, k in s["t"]))
            summands.append(KernelSummand(parse_fraction(s["c"]), tuple(int(a) for a in s["d"]), t))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed kernel combination: {exc}") from exc
    return KernelCombination(n, tuple(summands))
