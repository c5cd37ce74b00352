"""Closed-form homology of B_n with one-dimensional coefficients.

V = W = k, sigma = q, tau = p.  The answer depends on the multiplicative
order m of -q and on whether p is a suitable power of -q:

* ``generic_generic``: -q of infinite order, p not a power of -1/q.
* ``generic_power(r)``: -q of infinite order, p = (-q)^-(r-1), r >= 1.
* ``unity_generic(m)``: -q primitive m-th root, p not a power of -q.
* ``unity_r1(m)``: p = -q.
* ``unity_r(m, r)``: p = (-q)^r with 2 <= r <= m.

All tables include H_0(B_0) = k at n = 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactfield import FieldElement, multiplicative_order
from .shufflealg import gamma_product


@dataclass(frozen=True)
class CaseTag:
    kind: str
    m: int | None = None
    r: int | None = None

    def __str__(self):
        args = ", ".join(f"{k}={v}" for k, v in (("m", self.m), ("r", self.r)) if v is not None)
        return f"{self.kind}({args})" if args else self.kind


@dataclass(frozen=True)
class ExpectedTable:
    n: int
    dims: dict  # j -> dimension for j = 0..n

    def as_tuple(self):
        return tuple(self.dims[j] for j in range(self.n + 1))


def classify(q: FieldElement, p: FieldElement, n_max: int) -> CaseTag:
    if not q or not p:
        raise ValueError("q and p must be nonzero")
    mq = -q
    bound = 2 if q.ctx.kind == "rationals" else 2 * q.ctx.m
    m = multiplicative_order(mq, bound)
    if m is None:
        power = q.ctx.one()
        for r in range(1, n_max + 2):
            if p == power:
                return CaseTag("generic_power", r=r)
            power = power / mq
        return CaseTag("generic_generic")
    power = mq
    for r in range(1, m + 1):
        if p == power:
            return CaseTag("unity_r1", m=m) if r == 1 else CaseTag("unity_r", m=m, r=r)
        power = power * mq
    return CaseTag("unity_generic", m=m)


def expected_homology(tag: CaseTag, n: int) -> ExpectedTable:
    if n < 0:
        raise ValueError("n must be nonnegative")
    dims = {j: 0 for j in range(n + 1)}
    if n == 0:
        dims[0] = 1
        return ExpectedTable(0, dims)
    kind, m, r = tag.kind, tag.m, tag.r
    if kind == "generic_power" and n == r:
        dims[r - 1] = dims[r] = 1
    elif kind == "unity_r1" and n % m == 0:
        dims[n - 1] = dims[n] = 1
    elif kind == "unity_r":
        if n % m == 0:
            k = n // m
            for j in range(n - 2 * k + 1, n):
                dims[j] = 2
            dims[n - 2 * k] = dims[n] = 1
        elif (n - (m - r + 1)) % m == 0 and n >= m - r + 1:
            k = (n - (m - r + 1)) // m
            for j in range(n - 2 * k, n):
                dims[j] = 2
            dims[n - 2 * k - 1] = dims[n] = 1
    elif kind not in ("generic_generic", "generic_power", "unity_generic", "unity_r1"):
        raise ValueError(f"unknown case {tag}")
    return ExpectedTable(n, dims)


def vanishing_line(tag: CaseTag, n: int) -> Fraction:
    """Largest degree j0 such that H_j = 0 is guaranteed for all j <= j0."""
    if tag.kind == "unity_r1":
        return Fraction(n - 2)
    if tag.kind == "unity_r":
        return Fraction((tag.m - 2) * n, tag.m) - 1
    raise ValueError(f"no vanishing line is stated for case {tag}")


@dataclass(frozen=True)
class GammaReport:
    polynomial: bool
    truncation_degree: int | None  # smallest m with x_1^m = 0, if any
    powers: tuple  # coefficient of x_n in x_1^n, n = 1..probe


def gamma_presentation(q, probe_degree: int) -> GammaReport:
    """How the divided power algebra with parameter q is generated, up to a degree."""
    coeff = q ** 0
    powers = []
    first_zero = None
    for n in range(1, probe_degree + 1):
        coeff = coeff * gamma_product(n - 1, 1, q)
        powers.append(coeff)
        if not coeff and first_zero is None:
            first_zero = n
    return GammaReport(first_zero is None, first_zero, tuple(powers))

