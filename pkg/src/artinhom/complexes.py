"""Chain complexes computing Artin group homology, and their homology.

Three constructions are provided for a B_n-representation L:

* ``build_C_induced``: the Fox-Neuwirth complex of A_{n+1} twisted by the
  induced representation; cells are compositions of n+1.
* ``build_D``: the complex of cells (lambda, i, j) for configurations with
  a puncture, the puncture sitting in column i with j points below it.
* ``build_F``: the bar-type complex of the bimodule over the augmentation
  ideal of the quantum shuffle algebra, in a fixed internal degree.

``artin_homology`` dualizes the coefficients, picks a construction and
converts complex degrees into group homology degrees.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

from .braidrep import (BraidedSpace, GenRep, GenericInduced, LeftBraidedSpace, RepAction,
                       SeparableInduced, dualize, epsilon_twist, one_dim_params, tensor_basis)
from .exactfield import FieldCtx, format_expr, render
from .linalg import add_into, rank
from .shuffles import (LEFT, RIGHT, coarsen, compositions, enumerate_marked, enumerate_shuffles,
                       sign, word_of)
from .shufflealg import AlgebraElement, BimoduleElement, bimodule_left_mult, bimodule_right_mult, shuffle_product


# -- labels ---------------------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    lam: tuple
    b: object

    def __str__(self):
        return f"{list(self.lam)}|{_key_str(self.b)}"


@dataclass(frozen=True)
class MarkedCell:
    lam: tuple
    i: int
    j: int
    b: object

    def __str__(self):
        return f"{list(self.lam)};i={self.i};j={self.j}|{_key_str(self.b)}"


@dataclass(frozen=True)
class FChain:
    lam: tuple
    i: int
    j: int
    b: tuple

    def __str__(self):
        return f"{list(self.lam)};M={self.i};w={self.j + 1}|{_key_str(self.b)}"


def _key_str(b):
    if isinstance(b, tuple):
        return "(" + ",".join(_key_str(x) for x in b) + ")"
    return str(b)


def _iota(lam, i, j):
    """Overall position of the marked point: j+1 plus the parts left of column i."""
    return j + 1 + sum(lam[: i - 1])


# -- complexes -------------------------------------------------------------------

@dataclass
class GradedComplex:
    """Bases per degree and boundary columns d_q: C_q -> C_{q-1}.

    ``boundaries[q][c]`` is a sparse column ``{row index: scalar}``.
    """

    bases: dict
    boundaries: dict
    ctx: FieldCtx
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self.index = {q: {lab: k for k, lab in enumerate(basis)} for q, basis in self.bases.items()}

    @property
    def degrees(self) -> list[int]:
        return sorted(self.bases)

    def dim(self, q: int) -> int:
        return len(self.bases.get(q, ()))

    def columns(self, q: int) -> list:
        return self.boundaries.get(q, [{} for _ in range(self.dim(q))])

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * self.dim(q) for q in self.degrees)

    def d_squared_failure(self):
        """First (degree, column, row) where d o d is nonzero, or None."""
        for q in self.degrees:
            if q - 1 not in self.bases:
                continue
            lower = self.columns(q - 1)
            for c, col in enumerate(self.columns(q)):
                acc: dict = {}
                for r, v in col.items():
                    add_into(acc, lower[r], v)
                if acc:
                    r = min(acc)
                    return q, c, r
        return None

    def to_json(self) -> dict:
        return {
            "degrees": self.degrees,
            "bases": {str(q): [str(lab) for lab in self.bases[q]] for q in self.degrees},
            "boundaries": {str(q): [[r, c, render(v)] for c, col in enumerate(self.columns(q))
                                     for r, v in sorted(col.items())]
                           for q in self.degrees if self.boundaries.get(q)},
        }


def check_d_squared(c: GradedComplex) -> bool:
    return c.d_squared_failure() is None


def _assemble(bases: dict, column_fn, ctx: FieldCtx, meta: dict) -> GradedComplex:
    """Build boundary columns from ``column_fn(label) -> {target label: scalar}``."""
    index = {q: {lab: k for k, lab in enumerate(b)} for q, b in bases.items()}
    boundaries = {}
    for q, basis in bases.items():
        if q - 1 not in bases:
            continue
        rows = index[q - 1]
        cols = []
        for lab in basis:
            col = {}
            for target, v in column_fn(lab).items():
                col[rows[target]] = v
            cols.append(col)
        boundaries[q] = cols
    return GradedComplex(bases, boundaries, ctx, meta)


# -- builders ---------------------------------------------------------------------

def build_C(n: int, action) -> GradedComplex:
    """C(n) (x) T for an A_n action provider (see braidrep._Action)."""
    if action.strands != n:
        raise ValueError(f"action is on {action.strands} strands, expected {n}")
    keys = action.basis()
    bases = {n + l: [Cell(lam, b) for lam in compositions(n, l) for b in keys] for l in range(1, n + 1)}

    def column(cell: Cell):
        lam, out = cell.lam, {}
        for i in range(1, len(lam)):
            offset = sum(lam[: i - 1])
            target = coarsen(lam, i)
            for s in enumerate_shuffles(lam[i - 1], lam[i]):
                coeff = (-1) ** (i - 1) * sign(s)
                img = action.apply_basis_word(word_of(s, offset), cell.b)
                add_into(out, {Cell(target, k): v for k, v in img.items()}, coeff)
        return out

    return _assemble(bases, column, action.ctx, {"complex": "C", "n": n})


def induced_model(coefficients, n: int, model: str | None = None):
    """The A_{n+1} action on Ind of L = V^n (x) W (or of an abstract B_n-rep)."""
    if isinstance(coefficients, GenRep):
        if model == "separable":
            raise ValueError("an abstract representation has no separable model")
        if coefficients.family != "B" or coefficients.n != n:
            raise ValueError(f"need a B_{n} representation")
        return GenericInduced(coefficients)
    if not isinstance(coefficients, LeftBraidedSpace):
        raise TypeError("coefficients must be a LeftBraidedSpace or a family-B GenRep")
    if model is None:
        model = "separable" if coefficients.separable else "generic"
    if model == "separable":
        return SeparableInduced(coefficients, n)
    if model == "generic":
        return GenericInduced(GenRep.from_space(coefficients, n))
    raise ValueError(f"unknown model {model!r}")


def build_C_induced(n_plus_1: int, coefficients, model: str | None = None) -> GradedComplex:
    action = induced_model(coefficients, n_plus_1 - 1, model)
    c = build_C(n_plus_1, action)
    c.meta.update({"complex": "C-induced", "model": type(action).__name__})
    return c


def build_D(n: int, coefficients, model: str | None = None) -> GradedComplex:
    action = induced_model(coefficients, n, model)
    slot_keys: dict = {}
    for i, k in action.basis():
        slot_keys.setdefault(i, []).append(k)
    bases = {}
    for l in range(1, n + 2):
        bases[n + l - 1] = [MarkedCell(lam, i, j, b)
                            for lam in compositions(n + 1, l)
                            for i in range(1, l + 1)
                            for j in range(lam[i - 1])
                            for b in slot_keys[_iota(lam, i, j)]]

    def transport(word, slot, b, target_lam, target_i, target_j, coeff, out):
        img = action.apply_basis_word(word, (slot, b))
        expect = _iota(target_lam, target_i, target_j)
        for (landed, k), v in img.items():
            if landed != expect:
                raise AssertionError(f"word {word} moved slot {slot} to {landed}, expected {expect}")
            add_into(out, {MarkedCell(target_lam, target_i, target_j, k): v}, coeff)

    def column(cell: MarkedCell):
        lam, i, j = cell.lam, cell.i, cell.j
        slot = _iota(lam, i, j)
        out: dict = {}
        for m in range(1, len(lam)):
            offset = sum(lam[: m - 1])
            target = coarsen(lam, m)
            sgn = (-1) ** (m - 1)
            if m == i - 1:
                p, q = lam[m - 1], lam[m]
                for h in range(p + 1):
                    for s in enumerate_marked(LEFT, p, q, h, j):
                        transport(word_of(s, offset), slot, cell.b, target, i - 1, j + h,
                                  sgn * sign(s.base), out)
            elif m == i:
                p, q = lam[m - 1], lam[m]
                for h in range(q + 1):
                    for s in enumerate_marked(RIGHT, p, q, h, j):
                        transport(word_of(s, offset), slot, cell.b, target, i, j + h,
                                  sgn * sign(s.base), out)
            else:
                new_i = i - 1 if m < i else i
                for s in enumerate_shuffles(lam[m - 1], lam[m]):
                    transport(word_of(s, offset), slot, cell.b, target, new_i, j, sgn * sign(s), out)
        return out

    c = _assemble(bases, column, action.ctx, {"complex": "D", "n": n, "model": type(action).__name__})
    return c


def build_F(space: LeftBraidedSpace, N: int) -> GradedComplex:
    """Reduced bar complex of the bimodule in internal degree N.

    Degree q has q tensor factors of positive degree; factor i is the
    bimodule factor, the others lie in the augmentation ideal.
    """
    if not isinstance(space, LeftBraidedSpace) or not space.separable:
        raise ValueError("the bimodule complex needs a separated braiding phi")
    if N < 1:
        raise ValueError("internal degree must be positive")
    dv, dw = space.dim_v, space.dim_w
    ctx = space.ctx
    one = ctx.one()
    bases = {}
    for qd in range(1, N + 1):
        labels = []
        for lam in compositions(N, qd):
            for i in range(1, qd + 1):
                for j in range(lam[i - 1]):
                    pos = _iota(lam, i, j)
                    dims = (dv,) * (pos - 1) + (dw,) + (dv,) * (N - pos)
                    labels.extend(FChain(lam, i, j, key) for key in tensor_basis(dims))
        bases[qd] = labels

    def column(ch: FChain):
        lam, i, j, key = ch.lam, ch.i, ch.j, ch.b
        starts = [sum(lam[:k]) for k in range(len(lam) + 1)]
        factor = lambda k: key[starts[k - 1]: starts[k]]
        out: dict = {}
        for m in range(1, len(lam)):
            sgn = (-1) ** (m - 1)
            target = coarsen(lam, m)
            head, tail = key[: starts[m - 1]], key[starts[m + 1]:]
            if m == i - 1:
                prod = bimodule_left_mult(AlgebraElement({factor(m): one}, ctx),
                                          BimoduleElement({(j + 1, factor(i)): one}, ctx), space)
                for (w, merged), v in prod.terms.items():
                    add_into(out, {FChain(target, i - 1, w - 1, head + merged + tail): v}, sgn)
            elif m == i:
                prod = bimodule_right_mult(BimoduleElement({(j + 1, factor(i)): one}, ctx),
                                           AlgebraElement({factor(i + 1): one}, ctx), space)
                for (w, merged), v in prod.terms.items():
                    add_into(out, {FChain(target, i, w - 1, head + merged + tail): v}, sgn)
            else:
                prod = shuffle_product(AlgebraElement({factor(m): one}, ctx),
                                       AlgebraElement({factor(m + 1): one}, ctx), space)
                new_i = i - 1 if m < i else i
                for merged, v in prod.terms.items():
                    add_into(out, {FChain(target, new_i, j, head + merged + tail): v}, sgn)
        return out

    return _assemble(bases, column, ctx, {"complex": "F", "N": N})


# -- homology ------------------------------------------------------------------------

@dataclass
class HomologyTable:
    dims: dict
    meta: dict = dc_field(default_factory=dict)

    def euler_characteristic(self) -> int:
        return sum((-1) ** q * d for q, d in self.dims.items())

    def as_tuple(self) -> tuple:
        return tuple(self.dims[q] for q in sorted(self.dims))

    def to_json(self) -> dict:
        return {"dims": {str(q): d for q, d in sorted(self.dims.items())}, "meta": self.meta}


def homology_dims(c: GradedComplex, workers: int | None = None,
                  fraction_free: bool = False, check: bool = True) -> HomologyTable:
    """dim H_q = dim C_q - rank d_q - rank d_{q+1}."""
    if check:
        bad = c.d_squared_failure()
        if bad is not None:
            raise ValueError(f"d^2 != 0 at degree {bad[0]}, column {bad[1]}, row {bad[2]}")
    degrees = c.degrees
    todo = [q for q in degrees if c.boundaries.get(q)]
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ranks = dict(zip(todo, pool.map(lambda q: rank(c.boundaries[q], fraction_free), todo)))
    else:
        ranks = {q: rank(c.boundaries[q], fraction_free) for q in todo}
    dims = {q: c.dim(q) - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in degrees}
    return HomologyTable(dims, dict(c.meta))


# -- explicit isomorphisms -------------------------------------------------------------

@dataclass
class IsoCheck:
    ok: bool
    mismatch: str | None = None

    def __bool__(self):
        return self.ok


def _compare(src: GradedComplex, dst: GradedComplex, shift: int, relabel) -> IsoCheck:
    """Check that ``relabel`` maps src onto dst (degree q -> q+shift) intertwining d."""
    for q in src.degrees:
        if src.dim(q) != dst.dim(q + shift):
            return IsoCheck(False, f"degree {q}: {src.dim(q)} vs {dst.dim(q + shift)} basis elements")
    if len(src.degrees) != len(dst.degrees):
        return IsoCheck(False, f"degree ranges differ: {src.degrees} vs {dst.degrees}")
    for q in src.degrees:
        mapped = [dst.index[q + shift].get(relabel(lab)) for lab in src.bases[q]]
        if None in mapped or len(set(mapped)) != len(mapped):
            return IsoCheck(False, f"degree {q}: label correspondence is not a bijection")
        if q - 1 not in src.bases:
            continue
        rows = [dst.index[q - 1 + shift][relabel(lab)] for lab in src.bases[q - 1]]
        target_cols = dst.columns(q + shift)
        for c, col in enumerate(src.columns(q)):
            moved = {rows[r]: v for r, v in col.items()}
            if moved != target_cols[mapped[c]]:
                diff = sorted(set(moved.items()) ^ set(target_cols[mapped[c]].items()), key=str)[0]
                return IsoCheck(False, f"degree {q}, source {src.bases[q][c]}: entry {diff} differs")
    return IsoCheck(True)


def iso_check_D_vs_C(n: int, coefficients, model: str | None = None) -> IsoCheck:
    d = build_D(n, coefficients, model)
    c = build_C_induced(n + 1, coefficients, model)
    return _compare(d, c, 2, lambda lab: Cell(lab.lam, (_iota(lab.lam, lab.i, lab.j), lab.b)))


def iso_check_F_vs_C(n: int, space: LeftBraidedSpace) -> IsoCheck:
    """F built from the sign-twisted space against C (x) Ind built from ``space``."""
    f = build_F(epsilon_twist(space), n + 1)
    c = build_C_induced(n + 1, space, "separable")
    return _compare(f, c, n + 1, lambda lab: Cell(lab.lam, (_iota(lab.lam, lab.i, lab.j), lab.b)))


# -- Artin group homology ----------------------------------------------------------------

ROUTES = ("C", "D", "F")


def _normalize_route(route: str) -> str:
    r = route.upper().replace("-INDUCED", "")
    if r not in ROUTES:
        raise ValueError(f"unknown route {route!r}; choose from C, D, F")
    return r


def describe_coefficients(coefficients) -> dict:
    if isinstance(coefficients, LeftBraidedSpace) and coefficients.dim_v == coefficients.dim_w == 1:
        q, p, u = one_dim_params(coefficients)
        out = {"q": format_expr(q), "p": format_expr(p)}
        if u is not None:
            out["u"] = format_expr(u)
        return out
    if isinstance(coefficients, BraidedSpace) and coefficients.dim_v == 1:
        return {"q": format_expr(coefficients.sigma.entries.get((0, 0), coefficients.ctx.zero()))}
    if isinstance(coefficients, GenRep):
        return {"rep": f"family {coefficients.family}, dim {coefficients.dim}"}
    return {"dim_v": coefficients.dim_v, "dim_w": getattr(coefficients, "dim_w", None)}


def artin_homology(family: str, n: int, coefficients, route: str = "D", model: str | None = None,
                   workers: int | None = None) -> HomologyTable:
    """dim H_j of A_n or B_n with coefficients in V^n (or V^n (x) W), j = 0..n."""
    route = _normalize_route(route)
    if n < 0:
        raise ValueError("n must be nonnegative")
    if family == "A":
        if route != "C":
            raise ValueError("type A homology is computed on route C only")
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        if isinstance(coefficients, GenRep):
            rep = dualize(coefficients)
        else:
            base = coefficients.braided_part() if isinstance(coefficients, LeftBraidedSpace) else coefficients
            rep = GenRep.from_space(dualize(base), n)
        table = homology_dims(build_C(n, RepAction(rep)), workers)
        top = 2 * n
    elif family == "B":
        dual = dualize(coefficients)
        if route == "F":
            if not isinstance(dual, LeftBraidedSpace) or not dual.separable:
                raise ValueError("route F needs separable left-braided coefficients (a separated braiding phi)")
            table = homology_dims(build_F(epsilon_twist(dual), n + 1), workers)
            top = n + 1
        elif route == "C":
            table = homology_dims(build_C_induced(n + 1, dual, model), workers)
            top = 2 * n + 2
        else:
            table = homology_dims(build_D(n, dual, model), workers)
            top = 2 * n
    else:
        raise ValueError("family must be 'A' or 'B'")
    dims = {j: table.dims.get(top - j, 0) for j in range(n + 1)}
    meta = {"family": family, "n": n, "route": route, "coefficients": describe_coefficients(coefficients),
            "field": coefficients.ctx.describe(), "complex_degree_of_H0": top,
            "complex": table.meta.get("complex")}
    return HomologyTable(dims, meta)
