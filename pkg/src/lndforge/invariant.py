"""Construction of kernel elements x1*y(n+1)^l + (lower terms in y(n+1)).

Start from G = f(1,n+1)^l.  For r = l-2 down to 0, write the y(n+1)^r
coefficient of G as sum_j x1^j y1^q h_j and take the least p with h_p != 0
and p <= l-2.  h_p is a kernel element of Q[x2..xn, y2..yn]; decompose it as
sum c x^d H and subtract, for every summand, F*H where

    F = c x1^(p-r) f(1,n+1)^r f(2,1)^q2 ... f(n,1)^qn x2^(d2-2q2) ... xn^(dn-2qn).

F*H agrees with c x1^p y1^q y(n+1)^r x^d H at x1-degree p and y(n+1)-degree r
and otherwise only contributes higher x1-degree or lower y(n+1)-degree, so
h_p disappears.  When every g_r is divisible by x1^(l-1), so is G - x1^l y^l,
and G / x1^(l-1) is the requested kernel element.

The structural conditions carried through the induction are re-checked after
each subtraction; a certificate is only returned if every check held.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .derivation import apply, in_kernel, kuroda_delta
from .errors import FormatError, Infeasible, InvariantViolation, NotDivisible, NRequirement
from .kernel_gens import KernelSummand, expand_summand, f_gen, f_product, f_top, km_decompose
from .poly import (
    Polynomial,
    coeff_in_y_last,
    condition_weight,
    exact_div_x1,
    fraction_str,
    is_homogeneous,
    nvars,
    parse_fraction,
    poly_from_json,
    poly_to_json,
    split_by_x1,
    tau,
    x_index,
    y_last_coefficients,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class EliminationStep:
    r: int
    p: int
    summand: KernelSummand
    q_total: int
    q_split: tuple[int, ...]
    F: Polynomial
    H: Polynomial
    subtracted: Polynomial


@dataclass(frozen=True)
class InvariantCertificate:
    n: int
    ell: int
    G: Polynomial
    steps: tuple[EliminationStep, ...]
    divided: Polynomial


@dataclass(frozen=True)
class SliceRecord:
    i: int  # y(n+1)-degree
    j: int  # x1-degree
    q: int  # y1-degree
    condition1_ok: bool
    condition2_ok: bool
    condition3: tuple[tuple[int, str, int, bool], ...]  # (tau, parity class, bound, ok) per monomial

    @property
    def condition3_ok(self) -> bool:
        return all(rec[3] for rec in self.condition3)

    @property
    def ok(self) -> bool:
        return self.condition1_ok and self.condition2_ok and self.condition3_ok


@dataclass(frozen=True)
class ConditionReport:
    ell: int
    slices: tuple[SliceRecord, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.slices)

    def violations(self) -> list[str]:
        out = []
        for s in self.slices:
            if not s.condition1_ok:
                out.append(f"condition1 at (i={s.i}, j={s.j}, q={s.q})")
            if not s.condition2_ok:
                out.append(f"condition2 at (i={s.i}, j={s.j})")
            if not s.condition3_ok:
                out.append(f"condition3 at (i={s.i}, j={s.j})")
        return out


def check_conditions(G: Polynomial, n: int, ell: int) -> ConditionReport:
    """Evaluate the three structural conditions on every y(n+1)^i slice,
    i < ell, of ``G``.

    (1) i + j + 2q = 2*ell for each x1^j y1^q part of g_i.
    (2) j >= i.
    (3) with a = exponents of x2..xn in a monomial m:
        j = ell - 1 (mod 2): 2*tau(m) >= ell - j - 3 and every a odd;
        j = ell     (mod 2): 2*tau(m) >= ell - j     and every a even.
    Monomials are grouped by (i, j, q), so a slice with mixed y1-powers shows
    up as several records rather than raising.
    """
    groups: dict[tuple[int, int, int], list] = {}
    last = nvars(n) - 1
    iy1 = n
    for e in G.terms:
        i = e[last]
        if i >= ell:
            continue
        groups.setdefault((i, e[0], e[iy1]), []).append(e)
    slices = []
    for (i, j, q), monos in sorted(groups.items()):
        recs = []
        odd_class = (j - (ell - 1)) % 2 == 0
        bound = ell - j - 3 if odd_class else ell - j
        want = 1 if odd_class else 0
        for e in sorted(monos, reverse=True):
            t = tau(e, n)
            ok = 2 * t >= bound and all(a % 2 == want for a in e[1:n])
            recs.append((t, "odd" if odd_class else "even", bound, ok))
        slices.append(SliceRecord(i, j, q, i + j + 2 * q == 2 * ell, j >= i, tuple(recs)))
    return ConditionReport(ell, tuple(slices))


def choose_q_split(d, q_total: int) -> tuple[int, ...]:
    """Greedy q2, ..., qn with sum q_total and 2*qi <= di, in index order."""
    remaining = q_total
    out = []
    for di in d:
        qi = min(di // 2, remaining)
        out.append(qi)
        remaining -= qi
    if remaining:
        raise Infeasible(f"cannot split q={q_total} under d={tuple(d)}")
    return tuple(out)


def make_F(n: int, p: int, r: int, c, d, q_split) -> Polynomial:
    if p < r or r < 0:
        raise ValueError(f"need 0 <= r <= p, got r={r}, p={p}")
    if len(d) != n - 1 or len(q_split) != n - 1:
        raise ValueError("d and q_split must have n-1 entries")
    if any(q < 0 or 2 * q > di for q, di in zip(q_split, d)):
        raise ValueError(f"q_split {tuple(q_split)} incompatible with d {tuple(d)}")
    e = [0] * nvars(n)
    e[x_index(n, 1)] = p - r
    for i, (di, qi) in enumerate(zip(d, q_split), start=2):
        e[x_index(n, i)] = di - 2 * qi
    F = Polynomial.monomial(n, e, c) * f_top(n) ** r
    for i, qi in enumerate(q_split, start=2):
        if qi:
            F = F * f_gen(n, i, 1) ** qi
    return F


def _require(cond: bool, what: str):
    if not cond:
        raise InvariantViolation(what)


def _check_state(G: Polynomial, n: int, ell: int, r: int, delta, w1) -> None:
    _require(in_kernel(delta, G), "kernel: delta(G) != 0")
    _require(is_homogeneous(G, w1) == 2 * ell, "condition1: G is not w1-homogeneous of weight 2*ell")
    report = check_conditions(G, n, ell)
    _require(report.ok, "; ".join(report.violations()))
    for i in range(r + 1, ell):
        gi = coeff_in_y_last(G, i)
        _require(
            all(e[0] >= ell - 1 for e in gi.terms), f"frame: g_{i} lost divisibility by x1^{ell - 1}"
        )


def _lowest_slice(G: Polynomial, r: int, ell: int):
    for j, q, h in split_by_x1(coeff_in_y_last(G, r)):
        _require(j >= r, f"condition2: g_{r} has x1-degree {j} < {r}")
        if j <= ell - 2:
            return j, q, h
        return None
    return None


def build_invariant(n: int, ell: int, check: bool = True) -> InvariantCertificate:
    """Run the elimination for the Kuroda derivation on n >= 4 variables.

    With ``check`` (the default) every intermediate G is verified: kernel
    membership, conditions (1)-(3), and untouched higher y(n+1)-levels.
    """
    if n < 4:
        raise NRequirement(f"the construction needs n >= 4, got n={n}")
    if ell < 1:
        raise ValueError("ell must be at least 1")
    delta = kuroda_delta(n)
    w1 = condition_weight(n)
    G = f_top(n) ** ell
    if check:
        _check_state(G, n, ell, ell - 1, delta, w1)
    steps: list[EliminationStep] = []
    for r in range(ell - 2, -1, -1):
        while True:
            found = _lowest_slice(G, r, ell)
            if found is None:
                break
            p, q, h = found
            _require(in_kernel(delta, h), f"h_({r},{p}) is not in the kernel")
            kc = km_decompose(h)
            log.info("r=%d p=%d q=%d: %d term(s), %d summand(s)", r, p, q, len(h), len(kc))
            for k, s in enumerate(kc.summands):
                try:
                    q_split = choose_q_split(s.d, q)
                except Infeasible as exc:
                    raise InvariantViolation(f"q-split infeasible at r={r}, p={p}: {exc}") from exc
                F = make_F(n, p, r, s.c, s.d, q_split)
                H = f_product(n, s.t)
                sub = F * H
                G = G - sub
                steps.append(EliminationStep(r, p, s, q, q_split, F, H, sub))
                if check:
                    _check_state(G, n, ell, r, delta, w1)
                    rest = Polynomial.zero(n)
                    for s2 in kc.summands[k + 1 :]:
                        rest = rest + expand_summand(n, s2)
                    now = {jj: (qq, hh) for jj, qq, hh in split_by_x1(coeff_in_y_last(G, r))}
                    _require(all(jj >= p for jj in now), f"step at ({r},{p}) disturbed a lower x1-level")
                    _require(
                        now.get(p, (q, Polynomial.zero(n)))[1] == rest,
                        f"step at ({r},{p}) did not remove exactly its summand",
                    )
    top = coeff_in_y_last(G, ell)
    _require(top == Polynomial.x(n, 1) ** ell, "top coefficient of G is not x1^ell")
    _require(G.degree_in(nvars(n) - 1) == ell, "G has y(n+1)-degree above ell")
    try:
        divided = exact_div_x1(G, ell - 1)
    except NotDivisible as exc:
        raise InvariantViolation(f"divisibility: {exc}") from exc
    _require(coeff_in_y_last(divided, ell) == Polynomial.x(n, 1), "divided top coefficient is not x1")
    _require(in_kernel(delta, divided), "divided form is not in the kernel")
    return InvariantCertificate(n, ell, G, tuple(steps), divided)


def divided_form(cert: InvariantCertificate) -> Polynomial:
    try:
        out = exact_div_x1(cert.G, cert.ell - 1)
    except NotDivisible as exc:
        raise InvariantViolation(f"divisibility: {exc}") from exc
    _require(in_kernel(kuroda_delta(cert.n), out), "divided form is not in the kernel")
    return out


def verify_certificate(cert: InvariantCertificate) -> list[str]:
    """Recheck a (possibly deserialized) certificate from scratch.

    Returns the names of violated invariants; an empty list means valid.
    """
    n, ell, G = cert.n, cert.ell, cert.G
    bad = []
    if n < 4:
        return ["n_requirement"]
    if ell < 1:
        return ["ell_requirement"]
    delta = kuroda_delta(n)
    if not apply(delta, G).is_zero():
        bad.append("kernel")
    coeffs = y_last_coefficients(G)
    if coeffs.get(ell) != Polynomial.x(n, 1) ** ell or max(coeffs, default=-1) != ell:
        bad.append("top_coefficient")
    if any(e[0] < ell - 1 for i, g in coeffs.items() if i < ell for e in g.terms):
        bad.append("divisibility")
    if is_homogeneous(G, condition_weight(n)) != 2 * ell:
        bad.append("condition1")
    report = check_conditions(G, n, ell)
    if not all(s.condition1_ok for s in report.slices) and "condition1" not in bad:
        bad.append("condition1")
    if not all(s.condition2_ok for s in report.slices):
        bad.append("condition2")
    if not all(s.condition3_ok for s in report.slices):
        bad.append("condition3")
    total = Polynomial.zero(n)
    for k, st in enumerate(cert.steps):
        try:
            F = make_F(n, st.p, st.r, st.summand.c, st.summand.d, st.q_split)
        except ValueError:
            bad.append(f"step{k}_parameters")
            continue
        if sum(st.q_split) != st.q_total or not (st.r <= st.p <= ell - 2):
            bad.append(f"step{k}_parameters")
        if F != st.F:
            bad.append(f"step{k}_F")
        if f_product(n, st.summand.t) != st.H:
            bad.append(f"step{k}_H")
        if st.F * st.H != st.subtracted:
            bad.append(f"step{k}_subtracted")
        total = total + st.subtracted
    if f_top(n) ** ell - total != G:
        bad.append("trace")
    try:
        if exact_div_x1(G, ell - 1) != cert.divided:
            bad.append("divided")
    except NotDivisible:
        if "divided" not in bad:
            bad.append("divided")
    if coeff_in_y_last(cert.divided, ell) != Polynomial.x(n, 1):
        bad.append("divided_top")
    if not apply(delta, cert.divided).is_zero():
        bad.append("divided_kernel")
    return bad


# -- JSON -----------------------------------------------------------------


def step_to_json(st: EliminationStep) -> dict:
    s = st.summand
    return {
        "r": st.r,
        "p": st.p,
        "summand": {"c": fraction_str(s.c), "d": list(s.d), "t": [[i, j, k] for (i, j), k in s.t]},
        "q_total": st.q_total,
        "q_split": list(st.q_split),
        "F": poly_to_json(st.F),
        "H": poly_to_json(st.H),
        "subtracted": poly_to_json(st.subtracted),
    }


def certificate_to_json(cert: InvariantCertificate) -> dict:
    return {
        "n": cert.n,
        "ell": cert.ell,
        "G": poly_to_json(cert.G),
        "divided": poly_to_json(cert.divided),
        "steps": [step_to_json(st) for st in cert.steps],
    }


def certificate_from_json(obj) -> InvariantCertificate:
    try:
        steps = []
        for st in obj["steps"]:
            s = st["summand"]
            t = tuple(sorted(((int(i), int(j)), int(k)) for i, j, k in s["t"]))
            summand = KernelSummand(parse_fraction(s["c"]), tuple(int(a) for a in s["d"]), t)
            steps.append(
                EliminationStep(
                    int(st["r"]),
                    int(st["p"]),
                    summand,
                    int(st["q_total"]),
                    tuple(int(q) for q in st["q_split"]),
                    poly_from_json(st["F"]),
                    poly_from_json(st["H"]),
                    poly_from_json(st["subtracted"]),
                )
            )
        return InvariantCertificate(
            int(obj["n"]),
            int(obj["ell"]),
            poly_from_json(obj["G"]),
            tuple(steps),
            poly_from_json(obj["divided"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed certificate: {exc}") from exc


__all__ = [
    "ConditionReport",
    "EliminationStep",
    "InvariantCertificate",
    "SliceRecord",
    "build_invariant",
    "certificate_from_json",
    "certificate_to_json",
    "check_conditions",
    "choose_q_split",
    "divided_form",
    "make_F",
    "verify_certificate",
]
