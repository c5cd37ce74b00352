"""The quantum shuffle algebra, its bimodule, and the one-dimensional formulas.

Algebra elements are keyed by tensor tuples (their length is the
internal degree).  Bimodule elements are keyed by ``(i, tuple)`` where
``i`` is the 1-based position of the W factor.

In one dimension ``x_n`` is the bar element [1|...|1] of degree n and
``y_{i,n}`` is the degree-n bimodule element with W in position i;
``y_n = y_{n,n}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import ceil

from .braidrep import LeftBraidedSpace, SeparableInduced, tensor_action
from .exactfield import FieldCtx, FieldElement, multiplicative_order
from .linalg import add_into
from .shuffles import enumerate_shuffles, quantum_binomial, word_of


class _Sparse:
    __slots__ = ("terms", "ctx")

    def __init__(self, terms: dict, ctx: FieldCtx):
        self.ctx = ctx
        self.terms = {k: ctx.coerce(v) for k, v in terms.items() if v}

    def __add__(self, other):
        self._same(other)
        return type(self)(add_into(dict(self.terms), other.terms), self.ctx)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return type(self)({k: v * c for k, v in self.terms.items()}, self.ctx)

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.ctx is not self.ctx:
            raise ValueError("field mismatch")

    def __eq__(self, other):
        return type(other) is type(self) and self.ctx is other.ctx and self.terms == other.terms

    def coefficient(self, key):
        return self.terms.get(key, self.ctx.zero())


def _v(k):
    return str(k + 1)


def _w(k):
    return "w" if k == 0 else f"w{k + 1}"


class AlgebraElement(_Sparse):
    """Element of the quantum shuffle algebra."""

    @classmethod
    def unit(cls, ctx):
        return cls({(): ctx.one()}, ctx)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})[{'|'.join(map(_v, k))}]" for k, c in sorted(self.terms.items()))


class BimoduleElement(_Sparse):
    """Element of the bimodule; keys are (W position, tensor tuple)."""

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, k), c in sorted(self.terms.items()):
            labels = [_w(x) if pos == i else _v(x) for pos, x in enumerate(k, start=1)]
            parts.append(f"({c})[{'|'.join(labels)}]")
        return " + ".join(parts)


@dataclass(frozen=True)
class OneDimParams:
    q: FieldElement
    p: FieldElement
    u: FieldElement

    def __post_init__(self):
        if not (self.q and self.p and self.u):
            raise ValueError("q, p and u must be units")


def x(m: int, ctx: FieldCtx) -> AlgebraElement:
    return AlgebraElement({(0,) * m: ctx.one()}, ctx)


def y(i: int, n: int, ctx: FieldCtx) -> BimoduleElement:
    if not 1 <= i <= n:
        raise ValueError(f"y_{{{i},{n}}} needs 1 <= i <= n")
    return BimoduleElement({(i, (0,) * n): ctx.one()}, ctx)


def shuffle_product(a: AlgebraElement, b: AlgebraElement, space) -> AlgebraElement:
    if a.ctx is not b.ctx or a.ctx is not space.ctx:
        raise ValueError("field mismatch")
    out: dict = {}
    for ka, ca in a.terms.items():
        for kb, cb in b.terms.items():
            p, q = len(ka), len(kb)
            layout = "V" * (p + q)
            for s in enumerate_shuffles(p, q):
                add_into(out, tensor_action(space, word_of(s), {ka + kb: ca * cb}, layout))
    return AlgebraElement(out, a.ctx)


@lru_cache(maxsize=256)
def _model(space: LeftBraidedSpace, n: int) -> SeparableInduced:
    return SeparableInduced(space, n)


def _bimodule_product(left_key, right_key, slot, coeff, space) -> dict:
    p, q = len(left_key), len(right_key)
    model = _model(space, p + q - 1)
    out: dict = {}
    for s in enumerate_shuffles(p, q):
        add_into(out, model.apply_basis_word(word_of(s), (slot, left_key + right_key)), coeff)
    return out


def _needs_phi(space):
    if not isinstance(space, LeftBraidedSpace) or not space.separable:
        raise ValueError("bimodule multiplication needs a separated braiding phi")


def bimodule_left_mult(a: AlgebraElement, mu: BimoduleElement, space: LeftBraidedSpace) -> BimoduleElement:
    _needs_phi(space)
    out: dict = {}
    for ka, ca in a.terms.items():
        for (i, kb), cb in mu.terms.items():
            add_into(out, _bimodule_product(ka, kb, len(ka) + i, ca * cb, space))
    return BimoduleElement(out, mu.ctx)


def bimodule_right_mult(mu: BimoduleElement, b: AlgebraElement, space: LeftBraidedSpace) -> BimoduleElement:
    _needs_phi(space)
    out: dict = {}
    for (i, ka), ca in mu.terms.items():
        for kb, cb in b.terms.items():
            add_into(out, _bimodule_product(ka, kb, i, ca * cb, space))
    return BimoduleElement(out, mu.ctx)


# -- one-dimensional closed forms ------------------------------------------------

def gamma_product(n: int, m: int, q):
    """Coefficient of x_{n+m} in x_n * x_m."""
    return quantum_binomial(n + m, m, q)


def closed_form_xy(n: int, m: int, params: OneDimParams) -> BimoduleElement:
    """x_m * y_n expanded in the y_{i, n+m}."""
    q, u = params.q, params.u
    ctx = q.ctx
    terms = {}
    for h in range(m + 1):
        coeff = u ** (m - h) * q ** ((n - 1) * (m - h)) * quantum_binomial(n - 1 + h, h, q)
        terms[(n + h, (0,) * (n + m))] = coeff
    return BimoduleElement(terms, ctx)


def closed_form_yx(n: int, m: int, params: OneDimParams) -> BimoduleElement:
    """y_n * x_m expanded in the y_{i, n+m}."""
    q, p, u = params.q, params.p, params.u
    terms = {}
    for h in range(m + 1):
        terms[(n + h, (0,) * (n + m))] = (p / u) ** h * quantum_binomial(n - 1 + h, h, q)
    return BimoduleElement(terms, q.ctx)


def change_of_basis_yx(n: int, m: int, params: OneDimParams) -> dict:
    """{h: coefficient of x_{m-h} y_{n+h}} in y_n * x_m."""
    q, p, u = params.q, params.p, params.u
    order = multiplicative_order(q, n + m)
    if order is not None:
        raise ValueError(f"q has order {order} <= n+m; use root_of_unity_leading_coeff")
    out = {}
    for h in range(m + 1):
        prod = q.ctx.one()
        for k in range(h):
            prod = prod * (p - q ** (-(n - 1 + k)))
        out[h] = u ** (-m) * q ** (-(m - h) * (n - 1 + h)) * quantum_binomial(n - 1 + h, h, q) * prod
    return out


def root_of_unity_leading_coeff(n: int, m: int, params: OneDimParams) -> FieldElement:
    """The y_{n+m} coefficient of y_n * x_m modulo left multiples, q of exact order m."""
    q, p, u = params.q, params.p, params.u
    if multiplicative_order(q, m) != m:
        raise ValueError(f"q is not a primitive {m}-th root of unity")
    prod = q.ctx.one()
    for k in range(m):
        prod = prod * (p - q ** (-(n - 1 + k)))
    return u ** (-m) * ceil(n / m) * prod


# -- freeness -------------------------------------------------------------------

def one_dim_basis_product(kind: str, n: int, k: int, space: LeftBraidedSpace) -> BimoduleElement:
    """x_{n-k} * y_k (kind 'left') or y_k * x_{n-k} (kind 'right'), brute force."""
    ctx = space.ctx
    if kind == "left":
        return bimodule_left_mult(x(n - k, ctx), y(k, k, ctx), space)
    return bimodule_right_mult(y(k, k, ctx), x(n - k, ctx), space)


def change_of_basis_matrix(kind: str, n: int, space: LeftBraidedSpace):
    """M[i-1][k-1] = coefficient of y_{i,n} in the k-th basis product."""
    zero = space.ctx.zero()
    mat = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        prod = one_dim_basis_product(kind, n, k, space)
        for (i, _), c in prod.terms.items():
            mat[i - 1][k - 1] = c
    return mat


def express_in_left_basis(mu: BimoduleElement, n: int, space: LeftBraidedSpace) -> dict:
    """{k: a_k} with mu = sum_k a_k x_{n-k} y_k, solved against brute-force products."""
    mat = change_of_basis_matrix("left", n, space)
    rest = [mu.coefficient((i, (0,) * n)) for i in range(1, n + 1)]
    out = {}
    for k in range(1, n + 1):
        # column k is supported on rows i >= k
        a = rest[k - 1] / mat[k - 1][k - 1]
        out[k] = a
        for i in range(k, n + 1):
            rest[i - 1] = rest[i - 1] - a * mat[i - 1][k - 1]
    if any(rest):
        raise ArithmeticError("left basis expansion left a remainder")
    return out
