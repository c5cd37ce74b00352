"""Property suites behind ``artinhom verify``.

Each property returns ``(ok, detail)``; suites run them at caller-chosen
size bounds and report one line per property.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable

from . import shuffles as sh
from .braidrep import one_dim_space
from .complexes import (artin_homology, build_C_induced, build_D, build_F, check_d_squared,
                        epsilon_twist, iso_check_D_vs_C, iso_check_F_vs_C)
from .exactfield import QQ, field, primitive_root
from .fixtures import hecke_space
from .oracle import classify, expected_homology
from .shufflealg import (OneDimParams, bimodule_left_mult, bimodule_right_mult, change_of_basis_matrix,
                         change_of_basis_yx, closed_form_xy, closed_form_yx, quantum_binomial, x, y)


@dataclass
class Outcome:
    suite: str
    tag: str
    description: str
    ok: bool
    detail: str = ""


# -- parameter sets ---------------------------------------------------------------

def parameter_sets():
    """(label, q, p) for every one-dimensional case exercised by the acceptance suite."""
    z = field(3).gen()
    return [
        ("q=1,p=1", QQ(1), QQ(1)),
        ("q=1,p=-1", QQ(1), QQ(-1)),
        ("q=2,p=3", QQ(2), QQ(3)),
        ("q=2,p=-1/2", QQ(2), QQ(Fraction(-1, 2))),
        ("q=-z,p=2z [m=3]", -z, 2 * z),
        ("q=-z,p=z [m=3]", -z, z),
        ("q=-z,p=z^2 [m=3]", -z, z * z),
    ]


def algebra_parameters():
    """(q, p, u) triples for the multiplication formulas, including roots of unity."""
    z3, z5 = field(3).gen(), field(5).gen()
    return [
        (QQ(Fraction(2, 3)), QQ(5), QQ(7)),
        (QQ(-3), QQ(Fraction(1, 2)), QQ(-2)),
        (QQ(-1), QQ(3), QQ(2)),
        (z3, 2 * z3 + 1, z3 * z3),
        (z5, z5 - 3, 1 + z5 ** 3),
    ]


# -- combinatorics -----------------------------------------------------------------

def prop_c_is_qbinomial(bound):
    for total in range(bound + 1):
        for p in range(total + 1):
            if sh.c_constant(p, total - p) != quantum_binomial(total, total - p, -1):
                return False, f"c_{{{p},{total - p}}}"
            if sum(sh.sign(s) for s in sh.enumerate_shuffles(p, total - p)) != sh.c_constant(p, total - p):
                return False, f"signed enumeration ({p},{total - p})"
    return True, f"p+q <= {bound}"


def prop_c_recurrences(bound):
    c = sh.c_constant
    for p in range(1, bound + 1):
        for q in range(1, bound + 1):
            if c(p, q) != (-1) ** p * c(p, q - 1) + c(p - 1, q) or c(p, q) != (-1) ** q * c(p - 1, q) + c(p, q - 1):
                return False, f"({p},{q})"
    return True, f"p, q <= {bound}"


def prop_convolution(bound):
    c = sh.c_constant
    for p in range(bound + 1):
        for q in range(bound + 1):
            for h in range(min(p, q) + 1):
                rhs = sum((-1) ** (s * (p - h + s)) * c(h - s, s) * c(p - h + s, q - s) for s in range(h + 1))
                if c(p, q) != rhs:
                    return False, f"p={p}, q={q}, h={h}"
    return True, f"p, q <= {bound}"


def _marked_types(bound):
    for total in range(1, bound + 1):
        for p in range(total + 1):
            q = total - p
            for j in range(p):
                for h in range(q + 1):
                    yield sh.RIGHT, p, q, h, j
            for j in range(q):
                for h in range(p + 1):
                    yield sh.LEFT, p, q, h, j


def prop_marked_closed_forms(bound):
    for t in _marked_types(bound):
        if sh.c_marked(*t) != sh.c_marked_closed(*t):
            return False, str(t)
    return True, f"p+q <= {bound}"


def prop_marked_bijection(bound):
    for kind, p, q, h, j in _marked_types(bound):
        listed = sh.enumerate_marked(kind, p, q, h, j)
        direct = [s for s in sh.enumerate_shuffles(p, q) if sh.is_marked(s, kind, h, j)]
        if sorted(s.base.perm for s in listed) != sorted(s.perm for s in direct):
            return False, f"{kind} {(p, q, h, j)}: enumeration"
        if len(listed) != sh.marked_count(kind, p, q, h, j):
            return False, f"{kind} {(p, q, h, j)}: count"
        for s in listed:
            w, beta, delta = sh.decompose_marked(s)
            lo, hi = sh._windows(kind, p, q, h, j)
            back = sh.compose(sh.shift(delta, hi[0], p + q), sh.shift(beta, lo[0], p + q), w)
            if back != s.base.perm:
                return False, f"{kind} {(p, q, h, j)}: recomposition"
    return True, f"p+q <= {bound}"


def prop_word_lengths(bound):
    for total in range(bound + 1):
        for p in range(total + 1):
            for s in sh.enumerate_shuffles(p, total - p):
                w = sh.word_of(s)
                if len(w) != sh.inversions(s) or sh.perm_of_word(w, total) != s.perm:
                    return False, str(s.perm)
    return True, f"p+q <= {bound}"


# -- algebra ------------------------------------------------------------------------

def prop_lemma_xy_yx(bound):
    for q, p, u in algebra_parameters():
        space, params = one_dim_space(q, p, u, q.ctx), OneDimParams(q, p, u)
        ctx = q.ctx
        for n in range(1, bound):
            for m in range(1, bound - n + 1):
                if bimodule_left_mult(x(m, ctx), y(n, n, ctx), space) != closed_form_xy(n, m, params):
                    return False, f"x_{m} y_{n} at q={q}"
                if bimodule_right_mult(y(n, n, ctx), x(m, ctx), space) != closed_form_yx(n, m, params):
                    return False, f"y_{n} x_{m} at q={q}"
    return True, f"n+m <= {bound}, {len(algebra_parameters())} parameter triples"


def prop_change_of_basis(bound):
    ctx = QQ
    for q, p, u in [(QQ(Fraction(3, 2)), QQ(5), QQ(-2)), (QQ(2), QQ(Fraction(-1, 3)), QQ(3))]:
        params = OneDimParams(q, p, u)
        for n in range(1, bound):
            for m in range(1, bound - n + 1):
                total = None
                for h, c in change_of_basis_yx(n, m, params).items():
                    term = closed_form_xy(n + h, m - h, params) if m - h else y(n + m, n + m, ctx)
                    term = term.scale(c)
                    total = term if total is None else total + term
                if total != closed_form_yx(n, m, params):
                    return False, f"n={n}, m={m}, q={q}"
    return True, f"n+m <= {bound}"


def prop_ceiling_identity(nmax=12, mmax=6):
    for m in range(1, mmax + 1):
        q = primitive_root(m)
        for n in range(1, nmax + 1):
            if quantum_binomial(n - 1 + m, m, q) != ceil(n / m):
                return False, f"n={n}, m={m}"
    return True, f"n <= {nmax}, m <= {mmax}"


def prop_freeness(bound):
    for q, p, u in [(QQ(2), 3, 5), (field(4).gen(), 2, -1)]:
        space = one_dim_space(q, p, u, q.ctx)
        for n in range(1, bound + 1):
            left = change_of_basis_matrix("left", n, space)
            right = change_of_basis_matrix("right", n, space)
            for i in range(1, n + 1):
                for k in range(1, n + 1):
                    if i < k and (left[i - 1][k - 1] or right[i - 1][k - 1]):
                        return False, f"n={n}: entry ({i},{k}) below the triangle"
                if left[i - 1][i - 1] != u ** (n - i) * q ** ((i - 1) * (n - i)) or right[i - 1][i - 1] != 1:
                    return False, f"n={n}: diagonal entry {i}"
    return True, f"n <= {bound}"


# -- complexes and routes -------------------------------------------------------------

def prop_d_squared(nmax):
    for label, q, p in parameter_sets():
        space = one_dim_space(q, p, 2, q.ctx)
        for n in range(nmax + 1):
            for c in (build_D(n, space), build_C_induced(n + 1, space), build_F(epsilon_twist(space), n + 1)):
                if not check_d_squared(c):
                    return False, f"{label}, n={n}, {c.meta.get('complex')}"
    fixture = hecke_space(2)
    for n in range(min(nmax, 3) + 1):
        for c in (build_D(n, fixture), build_C_induced(n + 1, fixture), build_F(epsilon_twist(fixture), n + 1)):
            if not check_d_squared(c):
                return False, f"2-dim fixture, n={n}, {c.meta.get('complex')}"
    return True, f"n <= {nmax}; 2-dim fixture n <= {min(nmax, 3)}"


def prop_isomorphisms(nmax):
    cases = [(label, one_dim_space(q, p, 2, q.ctx), nmax) for label, q, p in parameter_sets()]
    cases.append(("2-dim fixture", hecke_space(2), min(nmax, 3)))
    for label, space, top in cases:
        for n in range(top + 1):
            for name, check in (("D~C", iso_check_D_vs_C(n, space)), ("F~C", iso_check_F_vs_C(n, space))):
                if not check:
                    return False, f"{label}, n={n}, {name}: {check.mismatch}"
    return True, f"n <= {nmax}"


def route_agreement(label, q, p, nmax):
    """(ok, detail) comparing all routes, all u, and the oracle for one (q, p)."""
    tag = classify(q, p, nmax)
    for n in range(1, nmax + 1):
        expected = expected_homology(tag, n).as_tuple()
        for u in (1, -1, 2):
            space = one_dim_space(q, p, u, q.ctx)
            for route in ("C", "D", "F"):
                got = artin_homology("B", n, space, route).as_tuple()
                if got != expected:
                    return False, f"{label} [{tag}] n={n} u={u} route {route}: {got} != {expected}"
    return True, f"{label} [{tag}]: routes C, D, F agree with the oracle for n <= {nmax}, u in 1,-1,2"


# -- registry -----------------------------------------------------------------------------

def _props(max_size: int, nmax: int):
    small = min(max_size, 7)
    return [
        ("combinatorics", "shuffle-sign-sum", "c_{p,q} equals the quantum binomial at -1",
         lambda: prop_c_is_qbinomial(max(max_size, 2))),
        ("combinatorics", "shuffle-recurrence", "both Pascal recurrences for c_{p,q}",
         lambda: prop_c_recurrences(max_size)),
        ("combinatorics", "shuffle-convolution", "convolution identity behind d^2 = 0",
         lambda: prop_convolution(min(max_size, 6))),
        ("combinatorics", "marked-sign-sum", "marked sign sums equal their closed forms",
         lambda: prop_marked_closed_forms(small)),
        ("combinatorics", "marked-decomposition", "marked shuffles biject with pairs of window shuffles",
         lambda: prop_marked_bijection(small)),
        ("combinatorics", "lift-length", "lifted words are reduced and realize the shuffle",
         lambda: prop_word_lengths(min(max_size, 6))),
        ("algebra", "left-product", "x_m y_n and y_n x_m match their closed forms",
         lambda: prop_lemma_xy_yx(max_size)),
        ("algebra", "right-to-left-basis", "y_n x_m rewritten in the left basis",
         lambda: prop_change_of_basis(small)),
        ("algebra", "ceiling-binomial", "binom(n-1+m, m) = ceil(n/m) at primitive m-th roots",
         lambda: prop_ceiling_identity()),
        ("algebra", "freeness", "left and right change of basis are triangular",
         lambda: prop_freeness(max_size)),
        ("complexes", "d-squared", "d o d = 0 for every construction",
         lambda: prop_d_squared(nmax)),
        ("complexes", "chain-isomorphisms", "D and F match C (x) Ind entry by entry",
         lambda: prop_isomorphisms(nmax)),
    ] + [
        ("routes", f"routes[{label}]", "routes and oracle agree",
         (lambda label=label, q=q, p=p: route_agreement(label, q, p, nmax)))
        for label, q, p in parameter_sets()
    ]


def run(suite: str, max_size: int = 8, nmax: int = 5,
        on_result: Callable[[Outcome], None] | None = None) -> list[Outcome]:
    chosen = [t for t in _props(max_size, nmax) if suite in ("all", t[0])]
    if not chosen:
        raise ValueError(f"unknown suite {suite!r}")
    out = []
    for name, tag, desc, fn in chosen:
        try:
            ok, detail = fn()
        except Exception as exc:  # a crashing property is a failing property
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        res = Outcome(name, tag, desc, ok, detail)
        out.append(res)
        if on_result:
            on_result(res)
    return out


def corrupted_control():
    """Corrupt one boundary entry of a small complex and locate the failure."""
    c = build_D(2, one_dim_space(2, 3, 1))
    lower = c.boundaries[3]
    r = next(k for k, col in enumerate(lower) if col)
    top = c.boundaries[4][0]
    top[r] = top.get(r, c.ctx.zero()) + 1
    if not top[r]:
        del top[r]
    return c.d_squared_failure()


SUITES = ("combinatorics", "algebra", "complexes", "routes", "all")
