"""Exact scalars: the rationals and cyclotomic fields Q(zeta_m).

A cyclotomic element is stored as its reduced residue modulo the m-th
cyclotomic polynomial, so equality is plain coefficient comparison.
Over Q (and over Q(zeta_1) = Q(zeta_2) = Q) the residue has length one.
"""
from __future__ import annotations

import ast
import json
import math
from fractions import Fraction
from functools import lru_cache


# -- integer polynomials, ascending coefficient lists ----------------------

def _poly_divmod(num, den):
    num = list(num)
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = Fraction(num[k + len(den) - 1]) / lead
        out[k] = c
        if c:
            for t, d in enumerate(den):
                num[k + t] -= c * d
    rem = num[: len(den) - 1]
    return out, rem


def _trim(poly):
    poly = list(poly)
    while len(poly) > 1 and not poly[-1]:
        poly.pop()
    return poly


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Phi_m as ascending integer coefficients."""
    if m < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            quot, rem = _poly_divmod(poly, cyclotomic_poly(d))
            assert not any(rem)
            poly = [int(c) for c in _trim(quot)]
    return tuple(poly)


class FieldCtx:
    """A number field Q(zeta_m); m = 1 means the rationals."""

    __slots__ = ("kind", "m", "modulus", "degree")

    def __init__(self, m: int):
        self.m = m
        self.kind = "rationals" if m == 1 else "cyclotomic"
        self.modulus = cyclotomic_poly(m)
        self.degree = len(self.modulus) - 1

    def __repr__(self):
        return "Q" if self.kind == "rationals" else f"Q(zeta_{self.m})"

    def __reduce__(self):
        return (field, (self.m,))

    def describe(self) -> dict:
        if self.kind == "rationals":
            return {"kind": "rationals"}
        return {"kind": "cyclotomic", "m": self.m}

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.ctx is not self:
                raise ValueError(f"field mismatch: {value.ctx!r} vs {self!r}")
            return value
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def zero(self) -> FieldElement:
        return self.coerce(0)

    def one(self) -> FieldElement:
        return self.coerce(1)

    def gen(self) -> FieldElement:
        """The canonical primitive m-th root of unity."""
        if self.m == 1:
            return self.one()
        if self.m == 2:
            return self.coerce(-1)
        return FieldElement(self, _reduce([0, 1], self.modulus))

    def from_coeffs(self, coeffs) -> FieldElement:
        return FieldElement(self, _reduce([Fraction(c) for c in coeffs], self.modulus))


@lru_cache(maxsize=None)
def _shared(m: int) -> FieldCtx:
    return FieldCtx(m)


def field(m: int = 1) -> FieldCtx:
    """Shared context for Q(zeta_m); conductors 1 and 2 both give Q."""
    if m < 1:
        raise ValueError("conductor must be positive")
    return _shared(1 if m == 2 else m)


QQ = field(1)


def primitive_root(m: int) -> "FieldElement":
    """A primitive m-th root of unity in field(m)."""
    return QQ(-1) if m == 2 else field(m).gen()


def _reduce(poly, modulus):
    d = len(modulus) - 1
    poly = list(poly) + [Fraction(0)] * max(0, d - len(poly))
    for k in range(len(poly) - 1, d - 1, -1):
        c = poly[k]
        if c:
            base = k - d
            for t in range(d):
                if modulus[t]:
                    poly[base + t] -= c * modulus[t]
            poly[k] = Fraction(0)
    return tuple(poly[:d])


class FieldElement:
    """Immutable element of a FieldCtx."""

    __slots__ = ("ctx", "coeffs", "_hash")

    def __init__(self, ctx: FieldCtx, coeffs: tuple):
        self.ctx = ctx
        self.coeffs = coeffs
        self._hash = None

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise ValueError(f"field mismatch: {self.ctx!r} vs {other.ctx!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.coerce(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.ctx, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.ctx, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.ctx, tuple(a * other for a in self.coeffs))
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.ctx.degree == 1:
            return FieldElement(self.ctx, (self.coeffs[0] * other.coeffs[0],))
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return FieldElement(self.ctx, _reduce(prod, self.ctx.modulus))

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        if self.ctx.degree == 1:
            return FieldElement(self.ctx, (1 / self.coeffs[0],))
        # extended Euclid: find s with s*a = 1 mod Phi_m
        r0, r1 = [Fraction(c) for c in self.ctx.modulus], _trim(self.coeffs)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0]:
            quot, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, _trim(rem) if rem else [Fraction(0)]
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1))
        # r0 is a nonzero constant
        c = r0[0]
        return FieldElement(self.ctx, _reduce([x / c for x in s0], self.ctx.modulus))

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.ctx.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inv()
        k = abs(k)
        out = self.ctx.one()
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash((self.ctx.m, self.coeffs))
        return self._hash

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __repr__(self):
        return f"FieldElement({format_expr(self)!s} in {self.ctx!r})"

    def __str__(self):
        return format_expr(self)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def inv(a: FieldElement) -> FieldElement:
    return a.inv()


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def multiplicative_order(a: FieldElement, bound: int) -> int | None:
    """Smallest d <= bound with a**d == 1, or None."""
    if not a:
        raise ZeroDivisionError("zero has no multiplicative order")
    if a.is_rational():
        c = a.coeffs[0]
        order = 1 if c == 1 else 2 if c == -1 else None
        return order if order is not None and order <= bound else None
    # roots of unity in Q(zeta_m) have order dividing lcm(2, m)
    for d in _divisors(math.lcm(2, a.ctx.m)):
        if d > bound:
            break
        if a ** d == 1:
            return d
    return None


# -- text formats ------------------------------------------------------------

def _render_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render(a: FieldElement) -> str:
    """Canonical text: "a/b" over Q, a JSON object over Q(zeta_m)."""
    if a.ctx.kind == "rationals":
        return _render_fraction(a.coeffs[0])
    return json.dumps({"m": a.ctx.m, "coeffs": [_render_fraction(c) for c in a.coeffs]},
                      separators=(",", ":"))


def parse(text: str, ctx: FieldCtx | None = None) -> FieldElement:
    """Inverse of render."""
    text = text.strip()
    if text.startswith("{"):
        data = json.loads(text)
        return from_json(data, ctx)
    ctx = ctx or QQ
    return ctx.coerce(Fraction(text))


def from_json(data, ctx: FieldCtx | None = None) -> FieldElement:
    if isinstance(data, dict):
        target = field(int(data["m"]))
        if ctx is not None and ctx is not target:
            raise ValueError(f"element of {target!r} given where {ctx!r} expected")
        return target.from_coeffs(Fraction(c) for c in data["coeffs"])
    if isinstance(data, (int, str)):
        return parse_expr(str(data), ctx or QQ)
    raise TypeError(f"cannot read a field element from {data!r}")


def format_expr(a: FieldElement) -> str:
    """Human-readable form in the variable z = zeta_m, readable by parse_expr."""
    terms = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        mono = "" if k == 0 else "z" if k == 1 else f"z^{k}"
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{_render_fraction(mag)}*{mono}"
        else:
            body = _render_fraction(mag)
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for s, body in terms[1:]:
        out += f" {s} {body}"
    return out


_BINOPS = {ast.Add: lambda a, b: a + b, ast.Sub: lambda a, b: a - b,
           ast.Mult: lambda a, b: a * b, ast.Div: lambda a, b: a / b}


def parse_expr(text: str, ctx: FieldCtx = QQ) -> FieldElement:
    """Evaluate an arithmetic expression in integers, fractions and z = zeta_m.

    Accepts + - * / ^ ** and parentheses, e.g. "-z", "2*z^2", "-1/2".
    """
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ValueError(f"cannot parse scalar {text!r}") from exc

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return ctx.coerce(node.value)
        if isinstance(node, ast.Name) and node.id in ("z", "zeta"):
            return ctx.gen()
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            val = ev(node.operand)
            return -val if isinstance(node.op, ast.USub) else val
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                exp = node.right
                sign = 1
                if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                    sign, exp = -1, exp.operand
                if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                    raise ValueError(f"exponent must be an integer literal in {text!r}")
                return ev(node.left) ** (sign * exp.value)
            op = _BINOPS.get(type(node.op))
            if op is not None:
                return op(ev(node.left), ev(node.right))
        raise ValueError(f"unsupported syntax in scalar {text!r}")

    return ev(tree)
