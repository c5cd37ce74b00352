"""Braided and left-braided vector spaces and the braid actions they induce.

Conventions
-----------
* Tensor basis vectors are tuples of factor indices.  Flat indices are
  mixed-radix little-endian: ``(a, b)`` in ``X (x) Y`` has index
  ``a + dim(X) * b``.  Every structure map is stored in that convention,
  including ``phi: V (x) W -> W (x) V``.
* A braid word is a sequence of generators in order of application.
  ``i`` is sigma_i, ``-i`` its inverse, :data:`TAU` / :data:`TAU_INV` the
  type-B generator acting on the last two factors of ``V^n (x) W``.
* Slots of an induced representation are numbered ``1 .. n+1``; in the
  separable model slot ``i`` is ``V^(i-1) (x) W (x) V^(n+1-i)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from itertools import product

from .exactfield import QQ, FieldCtx, field, from_json, render, format_expr
from .linalg import LinearMap, add_into

TAU = "tau"
TAU_INV = "tau^-1"


# -- tensor bookkeeping ------------------------------------------------------

def tensor_basis(dims) -> list[tuple[int, ...]]:
    """All basis tuples, first factor varying fastest."""
    return [tuple(reversed(t)) for t in product(*(range(d) for d in reversed(dims)))]


def tensor_index(key, dims) -> int:
    idx, scale = 0, 1
    for k, d in zip(key, dims):
        idx += k * scale
        scale *= d
    return idx


def _pair_images(m: LinearMap, dom, cod):
    """(a, b) -> [((a', b'), coeff), ...] for a map X (x) Y -> X' (x) Y'."""
    out = {}
    for b in range(dom[1]):
        for a in range(dom[0]):
            col = m.column(a + dom[0] * b)
            out[(a, b)] = [((r % cod[0], r // cod[0]), v) for r, v in col.items()]
    return out


def apply_local(vec: dict, pos: int, images: dict) -> dict:
    """Apply a two-factor map to factors pos, pos+1 (0-based) of tuple-keyed vectors."""
    out: dict = {}
    for key, c in vec.items():
        for (a, b), v in images[(key[pos], key[pos + 1])]:
            nk = key[:pos] + (a, b) + key[pos + 2:]
            s = out.get(nk)
            s = c * v if s is None else s + c * v
            if s:
                out[nk] = s
            else:
                out.pop(nk, None)
    return out


# -- checkers on raw maps -----------------------------------------------------

def _square(m: LinearMap, n: int, what: str):
    if m.rows != n or m.cols != n:
        raise ValueError(f"{what} must be {n}x{n}, got {m.rows}x{m.cols}")


def _word_fn(steps):
    """Compose (pos, images) steps, applied left to right."""
    def run(vec):
        for pos, images in steps:
            vec = apply_local(vec, pos, images)
        return vec
    return run


def _basis_check(dims, lhs_steps, rhs_steps, ctx) -> bool:
    lhs, rhs = _word_fn(lhs_steps), _word_fn(rhs_steps)
    one = ctx.one()
    return all(lhs({k: one}) == rhs({k: one}) for k in tensor_basis(dims))


def check_braid_equation(sigma: LinearMap, dim_v: int) -> bool:
    """(s x 1)(1 x s)(s x 1) == (1 x s)(s x 1)(1 x s) on V^3."""
    _square(sigma, dim_v * dim_v, "sigma")
    s = _pair_images(sigma, (dim_v, dim_v), (dim_v, dim_v))
    return _basis_check((dim_v,) * 3, [(0, s), (1, s), (0, s)], [(1, s), (0, s), (1, s)], sigma.ctx)


def check_lbvs(sigma: LinearMap, tau: LinearMap, dims) -> bool:
    """Type-B braid equation on V (x) V (x) W."""
    dv, dw = dims
    _square(sigma, dv * dv, "sigma")
    _square(tau, dv * dw, "tau")
    s = _pair_images(sigma, (dv, dv), (dv, dv))
    t = _pair_images(tau, (dv, dw), (dv, dw))
    # rightmost factor of the composite acts first
    return _basis_check((dv, dv, dw), [(1, t), (0, s), (1, t), (0, s)],
                        [(0, s), (1, t), (0, s), (1, t)], sigma.ctx)


def check_separable(sigma: LinearMap, tau: LinearMap, phi: LinearMap, dims) -> bool:
    """Both identities a separated braiding phi must satisfy on V (x) V (x) W."""
    dv, dw = dims
    _square(sigma, dv * dv, "sigma")
    _square(tau, dv * dw, "tau")
    _square(phi, dv * dw, "phi")
    ctx = sigma.ctx
    s = _pair_images(sigma, (dv, dv), (dv, dv))
    s_inv = _pair_images(sigma.inverse(), (dv, dv), (dv, dv))
    t = _pair_images(tau, (dv, dw), (dv, dw))
    f = _pair_images(phi, (dv, dw), (dw, dv))
    first = _basis_check((dv, dv, dw), [(1, f), (0, f), (1, s)], [(0, s), (1, f), (0, f)], ctx)
    second = _basis_check((dv, dv, dw), [(1, f), (0, t)],
                          [(0, s_inv), (1, t), (0, s), (1, f)], ctx)
    return first and second


def lax_sum_braiding(sigma: LinearMap, tau: LinearMap, phi: LinearMap, dims) -> LinearMap:
    """The braiding on (V + W)^2 with blocks sigma, phi, psi = tau phi^-1 and 0 on W (x) W."""
    dv, dw = dims
    dx = dv + dw
    ctx = sigma.ctx
    psi = tau.compose(phi.inverse())          # W (x) V -> V (x) W
    entries = {}

    def put(col_key, row_key, v):
        entries[(row_key[0] + dx * row_key[1], col_key[0] + dx * col_key[1])] = v

    for (a, b), imgs in _pair_images(sigma, (dv, dv), (dv, dv)).items():
        for (a2, b2), v in imgs:
            put((a, b), (a2, b2), v)
    for (a, w), imgs in _pair_images(phi, (dv, dw), (dw, dv)).items():
        for (w2, a2), v in imgs:
            put((a, dv + w), (dv + w2, a2), v)
    for (w, a), imgs in _pair_images(psi, (dw, dv), (dv, dw)).items():
        for (a2, w2), v in imgs:
            put((dv + w, a), (a2, dv + w2), v)
    return LinearMap(dx * dx, dx * dx, entries, ctx)


def check_lax_sum(sigma: LinearMap, tau: LinearMap, phi: LinearMap | None, dims) -> bool:
    if phi is None:
        raise ValueError("the lax sum needs a separated braiding phi")
    dv, dw = dims
    x = lax_sum_braiding(sigma, tau, phi, dims)
    return check_braid_equation(x, dv + dw)


# -- spaces -------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BraidedSpace:
    dim_v: int
    sigma: LinearMap
    _local: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        d = self.dim_v
        _square(self.sigma, d * d, "sigma")
        if not check_braid_equation(self.sigma, d):
            raise ValueError("sigma does not satisfy the braid equation")
        sigma_inv = self.sigma.inverse()
        object.__setattr__(self, "_local", {
            "sigma": _pair_images(self.sigma, (d, d), (d, d)),
            "sigma_inv": _pair_images(sigma_inv, (d, d), (d, d)),
        })

    @property
    def ctx(self) -> FieldCtx:
        return self.sigma.ctx


@dataclass(frozen=True, eq=False)
class LeftBraidedSpace:
    dim_v: int
    dim_w: int
    sigma: LinearMap
    tau: LinearMap
    phi: LinearMap | None = None
    _local: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        dv, dw = self.dim_v, self.dim_w
        _square(self.sigma, dv * dv, "sigma")
        _square(self.tau, dv * dw, "tau")
        if not check_braid_equation(self.sigma, dv):
            raise ValueError("sigma does not satisfy the braid equation")
        if not check_lbvs(self.sigma, self.tau, (dv, dw)):
            raise ValueError("(sigma, tau) violates the type-B braid equation")
        loc = {
            "sigma": _pair_images(self.sigma, (dv, dv), (dv, dv)),
            "sigma_inv": _pair_images(self.sigma.inverse(), (dv, dv), (dv, dv)),
            "tau": _pair_images(self.tau, (dv, dw), (dv, dw)),
            "tau_inv": _pair_images(self.tau.inverse(), (dv, dw), (dv, dw)),
        }
        if self.phi is not None:
            if not check_separable(self.sigma, self.tau, self.phi, (dv, dw)):
                raise ValueError("phi is not a separated braiding for (sigma, tau)")
            phi_inv = self.phi.inverse()
            psi = self.tau.compose(phi_inv)
            loc.update({
                "phi": _pair_images(self.phi, (dv, dw), (dw, dv)),
                "phi_inv": _pair_images(phi_inv, (dw, dv), (dv, dw)),
                "psi": _pair_images(psi, (dw, dv), (dv, dw)),
                "psi_inv": _pair_images(psi.inverse(), (dv, dw), (dw, dv)),
            })
        object.__setattr__(self, "_local", loc)

    @property
    def ctx(self) -> FieldCtx:
        return self.sigma.ctx

    @property
    def separable(self) -> bool:
        return self.phi is not None

    def braided_part(self) -> BraidedSpace:
        return BraidedSpace(self.dim_v, self.sigma)


def one_dim_space(q, p, u=1, ctx: FieldCtx = QQ) -> LeftBraidedSpace:
    """V = W = k with sigma = q, tau = p and separated braiding u times the flip."""
    q, p, u = ctx.coerce(q), ctx.coerce(p), ctx.coerce(u)
    return LeftBraidedSpace(1, 1, LinearMap.scalar(q, ctx), LinearMap.scalar(p, ctx),
                            LinearMap.scalar(u, ctx))


def one_dim_params(space: LeftBraidedSpace):
    """(q, p, u) of a one-dimensional space; u is None without phi."""
    if space.dim_v != 1 or space.dim_w != 1:
        raise ValueError("not a one-dimensional space")
    get = lambda m: m.entries.get((0, 0), space.ctx.zero()) if m is not None else None
    return get(space.sigma), get(space.tau), get(space.phi)


# -- actions on tensors -------------------------------------------------------

def _layout_of(space, n_v: int, has_w: bool):
    return ("V",) * n_v + (("W",) if has_w else ())


def tensor_action(space, word, vector: dict, layout) -> dict:
    """Apply a braid word to a tuple-keyed vector of the given factor layout."""
    layout = tuple(layout)
    loc = space._local
    for g in word:
        if g in (TAU, TAU_INV):
            if len(layout) < 2 or layout[-2:] != ("V", "W"):
                raise ValueError("tau acts on a trailing V (x) W only")
            if "tau" not in loc:
                raise ValueError("tau needs a left-braided space")
            vector = apply_local(vector, len(layout) - 2, loc["tau" if g == TAU else "tau_inv"])
            continue
        i = abs(g)
        if not 1 <= i < len(layout) or layout[i - 1] != "V" or layout[i] != "V":
            raise ValueError(f"sigma_{i} does not act on factors {i}, {i + 1} of layout {layout}")
        vector = apply_local(vector, i - 1, loc["sigma" if g > 0 else "sigma_inv"])
    return vector


# -- abstract representations -------------------------------------------------

@dataclass(frozen=True, eq=False)
class GenRep:
    """Generator matrices of a representation of A_n or B_n.

    ``gens`` maps ``i`` (sigma_i, 1 <= i <= n-1) and, for family B,
    :data:`TAU` to LinearMaps.
    """

    family: str
    n: int
    dim: int
    gens: dict
    ctx: FieldCtx
    _inv: dict = dc_field(default=None, repr=False)

    def __post_init__(self):
        if self.family not in ("A", "B"):
            raise ValueError("family must be 'A' or 'B'")
        expected = set(range(1, self.n)) | ({TAU} if self.family == "B" and self.n >= 1 else set())
        if set(self.gens) != expected:
            raise ValueError(f"generators {sorted(map(str, self.gens))} do not match family {self.family}, n={self.n}")
        for g, m in self.gens.items():
            _square(m, self.dim, f"generator {g}")
        object.__setattr__(self, "_inv", {g: m.inverse() for g, m in self.gens.items()})

    def matrix(self, g) -> LinearMap:
        if g == TAU:
            return self.gens[TAU]
        if g == TAU_INV:
            return self._inv[TAU]
        return self.gens[g] if g > 0 else self._inv[-g]

    def apply(self, word, vec: dict) -> dict:
        for g in word:
            vec = self.matrix(g).apply(vec)
        return vec

    def check_relations(self) -> bool:
        one = self.ctx.one()
        basis = [{k: one} for k in range(self.dim)]

        def same(w1, w2):
            return all(self.apply(w1, v) == self.apply(w2, v) for v in basis)

        for i in range(1, self.n):
            for j in range(i + 1, self.n):
                if j == i + 1:
                    if not same((i, j, i), (j, i, j)):
                        return False
                elif not same((i, j), (j, i)):
                    return False
            if self.family == "B":
                if i == self.n - 1:
                    if not same((i, TAU, i, TAU), (TAU, i, TAU, i)):
                        return False
                elif not same((i, TAU), (TAU, i)):
                    return False
        return True

    @classmethod
    def one_dim(cls, n: int, q, p=None, ctx: FieldCtx = QQ) -> GenRep:
        gens = {i: LinearMap.scalar(q, ctx) for i in range(1, n)}
        if p is None:
            return cls("A", n, 1, gens, ctx)
        if n >= 1:
            gens[TAU] = LinearMap.scalar(p, ctx)
        return cls("B", n, 1, gens, ctx)

    @classmethod
    def from_space(cls, space, n: int) -> GenRep:
        """A_n on V^n for a braided space, B_n on V^n (x) W for a left-braided one."""
        left = isinstance(space, LeftBraidedSpace)
        dims = (space.dim_v,) * n + ((space.dim_w,) if left else ())
        layout = _layout_of(space, n, left)
        basis = tensor_basis(dims)
        one = space.ctx.one()
        gens = {}
        for g in list(range(1, n)) + ([TAU] if left and n >= 1 else []):
            entries = {}
            for c, key in enumerate(basis):
                for k, v in tensor_action(space, [g], {key: one}, layout).items():
                    entries[(tensor_index(k, dims), c)] = v
            gens[g] = LinearMap(len(basis), len(basis), entries, space.ctx)
        return cls("B" if left else "A", n, len(basis), gens, space.ctx)


# -- induced representations ----------------------------------------------------

@dataclass
class IndSlotVector:
    """A vector of Ind_{B_n}^{A_{n+1}} L, split into its n+1 slots."""

    n: int
    slots: dict  # slot -> {inner key: coefficient}

    def flat(self) -> dict:
        return {(i, k): v for i, vec in self.slots.items() for k, v in vec.items()}

    @classmethod
    def from_flat(cls, n: int, vec: dict) -> IndSlotVector:
        slots: dict = {}
        for (i, k), v in vec.items():
            slots.setdefault(i, {})[k] = v
        return cls(n, slots)

    def __eq__(self, other):
        return isinstance(other, IndSlotVector) and self.n == other.n and self.flat() == other.flat()


class _Action:
    """Common interface of A_N action providers used by the complex builders.

    ``basis()`` lists the basis keys, ``apply_word(word, vec)`` acts on a
    dict keyed by those keys.  Results of single basis vectors are cached.
    """

    strands: int
    ctx: FieldCtx

    def __init__(self):
        self._cache = {}

    def apply_gen(self, g: int, vec: dict) -> dict:
        raise NotImplementedError

    def apply_basis_word(self, word: tuple, key) -> dict:
        hit = self._cache.get((word, key))
        if hit is None:
            vec = {key: self.ctx.one()}
            for g in word:
                vec = self.apply_gen(g, vec)
            hit = self._cache[(word, key)] = vec
        return hit

    def apply_word(self, word, vec: dict) -> dict:
        word = tuple(word)
        out: dict = {}
        for key, c in vec.items():
            add_into(out, self.apply_basis_word(word, key), c)
        return out


class RepAction(_Action):
    """A_n acting through the matrices of a family-A GenRep; keys are flat indices."""

    def __init__(self, rep: GenRep):
        super().__init__()
        if rep.family != "A":
            raise ValueError("RepAction needs a family-A representation")
        self.rep, self.strands, self.ctx = rep, rep.n, rep.ctx

    def basis(self):
        return list(range(self.rep.dim))

    def apply_gen(self, g, vec):
        return self.rep.matrix(g).apply(vec)


class SeparableInduced(_Action):
    """Ind of V^n (x) W modelled on the slots V^(i-1) (x) W (x) V^(n+1-i).

    sigma_m acts by sigma away from W, by phi when it pulls W one slot to
    the left (m = i-1) and by tau phi^-1 when it pushes W right (m = i).
    Keys are ``(slot, tuple)``.
    """

    def __init__(self, space: LeftBraidedSpace, n: int):
        super().__init__()
        if not isinstance(space, LeftBraidedSpace) or not space.separable:
            raise ValueError("the separable model needs a separated braiding phi")
        self.space, self.n, self.strands, self.ctx = space, n, n + 1, space.ctx

    def slot_dims(self, i: int):
        dv, dw = self.space.dim_v, self.space.dim_w
        return (dv,) * (i - 1) + (dw,) + (dv,) * (self.n + 1 - i)

    def basis(self):
        return [(i, k) for i in range(1, self.n + 2) for k in tensor_basis(self.slot_dims(i))]

    def apply_gen(self, g, vec):
        loc = self.space._local
        m = abs(g)
        if not 1 <= m <= self.n:
            raise ValueError(f"sigma_{m} is not a generator of A_{self.n + 1}")
        out: dict = {}
        for (i, key), c in vec.items():
            if g > 0:
                if m == i - 1:
                    new_i, images = i - 1, loc["phi"]
                elif m == i:
                    new_i, images = i + 1, loc["psi"]
                else:
                    new_i, images = i, loc["sigma"]
            else:
                if m == i:
                    new_i, images = i + 1, loc["phi_inv"]
                elif m == i - 1:
                    new_i, images = i - 1, loc["psi_inv"]
                else:
                    new_i, images = i, loc["sigma_inv"]
            for k, v in apply_local({key: c}, m - 1, images).items():
                add_into(out, {(new_i, k): v})
        return out

    def identification(self, i: int, key) -> dict:
        """Image of basis vector ``key`` of V^n (x) W under the slot-i identification.

        Applies phi on factors (n, n+1), then (n-1, n), ..., (i, i+1),
        carrying W from the last position to position i.
        """
        vec = {key: self.ctx.one()}
        for pos in range(self.n - 1, i - 2, -1):
            vec = apply_local(vec, pos, self.space._local["phi"])
        return {(i, k): v for k, v in vec.items()}


class GenericInduced(_Action):
    """Ind of an abstract B_n-representation; every slot is a copy of L.

    Keys are ``(slot, index)``.
    """

    def __init__(self, rep: GenRep):
        super().__init__()
        if rep.family != "B":
            raise ValueError("the generic model induces from a family-B representation")
        self.rep, self.n, self.strands, self.ctx = rep, rep.n, rep.n + 1, rep.ctx
        self._conj = {}

    def basis(self):
        return [(i, k) for i in range(1, self.n + 2) for k in range(self.rep.dim)]

    def conjugated_tau(self, i: int) -> LinearMap:
        """sigma_i ... sigma_{n-1} tau sigma_{n-1}^-1 ... sigma_i^-1 as a matrix."""
        if i not in self._conj:
            word = [-g for g in range(i, self.n)] + [TAU] + list(range(self.n - 1, i - 1, -1))
            dim = self.rep.dim
            entries = {}
            for c in range(dim):
                for r, v in self.rep.apply(word, {c: self.ctx.one()}).items():
                    entries[(r, c)] = v
            m = LinearMap(dim, dim, entries, self.ctx)
            self._conj[i] = (m, m.inverse())
        return self._conj[i]

    def apply_gen(self, g, vec):
        m = abs(g)
        if not 1 <= m <= self.n:
            raise ValueError(f"sigma_{m} is not a generator of A_{self.n + 1}")
        out: dict = {}
        for (i, k), c in vec.items():
            new_i, mat = induced_generic_step(self, g, i)
            img = {k: c} if mat is None else mat.apply({k: c})
            for k2, v in img.items():
                add_into(out, {(new_i, k2): v})
        return out


def induced_generic_step(model: GenericInduced, g: int, i: int):
    """(new slot, matrix or None for the identity) for sigma_m^{+-1} on slot i."""
    m = abs(g)
    rep = model.rep
    if g > 0:
        if m <= i - 2:
            return i, rep.matrix(m)
        if m == i - 1:
            return i - 1, None
        if m == i:
            return i + 1, model.conjugated_tau(i)[0]
        return i, rep.matrix(m - 1)
    if m <= i - 2:
        return i, rep.matrix(-m)
    if m == i:
        return i + 1, None
    if m == i - 1:
        return i - 1, model.conjugated_tau(i - 1)[1]
    return i, rep.matrix(-(m - 1))


def induced_action_separable(space: LeftBraidedSpace, n: int, generator: int,
                             v: IndSlotVector) -> IndSlotVector:
    model = SeparableInduced(space, n)
    return IndSlotVector.from_flat(n, model.apply_gen(generator, v.flat()))


def induced_action_generic(rep: GenRep, n: int, generator: int, slot: int, ell: dict):
    """(slot', vector) for sigma_m of A_{n+1} acting on slot ``slot``."""
    if rep.n != n:
        raise ValueError("representation and strand count disagree")
    model = GenericInduced(rep)
    new_slot, mat = induced_generic_step(model, generator, slot)
    return new_slot, dict(ell) if mat is None else mat.apply(ell)


# -- duality and twisting -------------------------------------------------------

def _dual_map(m: LinearMap | None):
    return None if m is None else m.inverse().transpose()


def dualize(obj):
    """Inverse-transpose every structure map (the contragredient)."""
    if isinstance(obj, LeftBraidedSpace):
        return LeftBraidedSpace(obj.dim_v, obj.dim_w, _dual_map(obj.sigma), _dual_map(obj.tau),
                                _dual_map(obj.phi))
    if isinstance(obj, BraidedSpace):
        return BraidedSpace(obj.dim_v, _dual_map(obj.sigma))
    if isinstance(obj, GenRep):
        return GenRep(obj.family, obj.n, obj.dim, {g: _dual_map(m) for g, m in obj.gens.items()}, obj.ctx)
    raise TypeError(f"cannot dualize {type(obj).__name__}")


def epsilon_twist(space: LeftBraidedSpace) -> LeftBraidedSpace:
    """sigma -> -sigma, phi -> -phi, tau unchanged."""
    return LeftBraidedSpace(space.dim_v, space.dim_w, -space.sigma, space.tau,
                            None if space.phi is None else -space.phi)


# -- JSON fixtures --------------------------------------------------------------

def _map_from_json(entries, rows, cols, ctx):
    return LinearMap(rows, cols, {(int(r), int(c)): from_json(v, ctx) for r, c, v in entries}, ctx)


def _map_to_json(m: LinearMap):
    return [[r, c, format_expr(v) if m.ctx.kind != "rationals" else render(v)]
            for (r, c), v in sorted(m.entries.items())]


def space_from_json(data) -> LeftBraidedSpace | BraidedSpace:
    if isinstance(data, str):
        data = json.loads(data)
    fld = data.get("field", {"kind": "rationals"})
    ctx = field(int(fld.get("m", 1))) if fld.get("kind") == "cyclotomic" else QQ
    dv = int(data["dim_v"])
    sigma = _map_from_json(data["sigma"], dv * dv, dv * dv, ctx)
    if "tau" not in data:
        return BraidedSpace(dv, sigma)
    dw = int(data.get("dim_w", 1))
    tau = _map_from_json(data["tau"], dv * dw, dv * dw, ctx)
    phi = _map_from_json(data["phi"], dv * dw, dv * dw, ctx) if data.get("phi") is not None else None
    return LeftBraidedSpace(dv, dw, sigma, tau, phi)


def space_to_json(space) -> dict:
    out = {"dim_v": space.dim_v, "sigma": _map_to_json(space.sigma)}
    if isinstance(space, LeftBraidedSpace):
        out["dim_w"] = space.dim_w
        out["tau"] = _map_to_json(space.tau)
        out["phi"] = None if space.phi is None else _map_to_json(space.phi)
    out["field"] = space.ctx.describe()
    return out
