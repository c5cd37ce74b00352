"""Compositions, shuffles, marked shuffles and their sign sums.

Permutations are image arrays of 1-based images: ``perm[k-1]`` is where
letter ``k`` goes.  A window shuffle acting on positions ``s+1 .. s+k``
is shifted into place with :func:`shift`.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

RIGHT = "right"  # type (p, (q, h), j): letter j+1 goes to j+h+1
LEFT = "left"    # type ((p, h), q, j): letter p+j+1 goes to h+j+1


@lru_cache(maxsize=None)
def compositions(total: int, length: int) -> tuple[tuple[int, ...], ...]:
    """Compositions of ``total`` with ``length`` positive parts, lexicographic."""
    if total < 1 or length < 1:
        raise ValueError("total and length must be positive")
    out = []
    for cuts in combinations(range(1, total), length - 1):
        bounds = (0,) + cuts + (total,)
        out.append(tuple(b - a for a, b in zip(bounds, bounds[1:])))
    return tuple(out)


def coarsen(lam: tuple[int, ...], m: int) -> tuple[int, ...]:
    """Merge parts m and m+1 (1-based)."""
    if not 1 <= m < len(lam):
        raise ValueError(f"cannot merge parts {m}, {m + 1} of {lam}")
    return lam[: m - 1] + (lam[m - 1] + lam[m],) + lam[m + 1:]


@dataclass(frozen=True)
class ShufflePerm:
    perm: tuple[int, ...]
    p: int
    q: int

    def __post_init__(self):
        left, right = self.perm[: self.p], self.perm[self.p:]
        if sorted(self.perm) != list(range(1, self.p + self.q + 1)):
            raise ValueError(f"{self.perm} is not a permutation")
        if list(left) != sorted(left) or list(right) != sorted(right):
            raise ValueError(f"{self.perm} is not a ({self.p},{self.q})-shuffle")

    def __call__(self, k: int) -> int:
        return self.perm[k - 1]


def _shuffle_from_left_images(p, q, left):
    rest = [x for x in range(1, p + q + 1) if x not in set(left)]
    return ShufflePerm(tuple(left) + tuple(rest), p, q)


@lru_cache(maxsize=None)
def enumerate_shuffles(p: int, q: int) -> tuple[ShufflePerm, ...]:
    if p < 0 or q < 0:
        raise ValueError("block sizes must be nonnegative")
    return tuple(_shuffle_from_left_images(p, q, left)
                 for left in combinations(range(1, p + q + 1), p))


def inversions(perm) -> int:
    perm = perm.perm if isinstance(perm, ShufflePerm) else perm
    return sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])


def sign(s) -> int:
    return -1 if inversions(s) % 2 else 1


@lru_cache(maxsize=None)
def c_constant(p: int, q: int) -> int:
    """Signed count of (p,q)-shuffles, via c_{p,q} = (-1)^p c_{p,q-1} + c_{p-1,q}."""
    if p < 0 or q < 0:
        raise ValueError("block sizes must be nonnegative")
    if p == 0 or q == 0:
        return 1
    return (-1) ** p * c_constant(p, q - 1) + c_constant(p - 1, q)


def quantum_binomial(a: int, b: int, q):
    """binom(a, b)_q by the q-Pascal rule; q may be an int or a FieldElement."""
    if not 0 <= b <= a:
        raise ValueError(f"quantum binomial needs 0 <= b <= a, got ({a}, {b})")
    one = q ** 0
    zero = one - one
    powers = [one]
    for _ in range(b):
        powers.append(powers[-1] * q)
    row = [one] + [zero] * b  # row[k] = binom(r, k)_q, starting at r = 0
    for _ in range(a):
        row = [one] + [row[k - 1] + powers[k] * row[k] for k in range(1, b + 1)]
    return row[b]


# -- marked shuffles ---------------------------------------------------------

@dataclass(frozen=True)
class MarkedShuffle:
    base: ShufflePerm
    kind: str
    h: int
    j: int

    @property
    def p(self):
        return self.base.p

    @property
    def q(self):
        return self.base.q


def _check_marked(kind, p, q, h, j):
    if kind == RIGHT:
        ok = 0 <= h <= q and 0 <= j <= p - 1
    elif kind == LEFT:
        ok = 0 <= h <= p and 0 <= j <= q - 1
    else:
        raise ValueError(f"unknown marked-shuffle kind {kind!r}")
    if not ok:
        raise ValueError(f"index bounds violated for {kind}-marked ({p},{q},h={h},j={j})")


def omega(kind: str, p: int, q: int, h: int, j: int) -> tuple[int, ...]:
    """The fixed shuffle that places the marked letter before the windows are shuffled."""
    _check_marked(kind, p, q, h, j)
    if kind == RIGHT:
        img = []
        for m in range(1, p + q + 1):
            if m <= j:
                img.append(m)
            elif m <= p:
                img.append(m + h)
            elif m <= p + h:
                img.append(m - p + j)
            else:
                img.append(m)
        return tuple(img)
    img = []
    for m in range(1, p + q + 1):
        if m <= h:
            img.append(m)
        elif m <= p:
            img.append(m + j + 1)
        elif m <= p + j + 1:
            img.append(m - p + h)
        else:
            img.append(m)
    return tuple(img)


def _windows(kind, p, q, h, j):
    """(offset, blocks) of the low window and of the high window."""
    if kind == RIGHT:
        return (0, (j, h)), (j + h + 1, (p - j - 1, q - h))
    return (0, (h, j)), (h + j + 1, (p - h, q - j - 1))


def shift(s: ShufflePerm, offset: int, total: int) -> tuple[int, ...]:
    """s acting on positions offset+1 .. offset+p+q of ``total`` positions."""
    img = list(range(1, total + 1))
    for k, v in enumerate(s.perm):
        img[offset + k] = offset + v
    return tuple(img)


def compose(*perms) -> tuple[int, ...]:
    """compose(a, b, c) = a o b o c, applied right to left."""
    out = tuple(range(1, len(perms[0]) + 1))
    for f in reversed(perms):
        out = tuple(f[x - 1] for x in out)
    return out


@lru_cache(maxsize=None)
def enumerate_marked(kind: str, p: int, q: int, h: int, j: int) -> tuple[MarkedShuffle, ...]:
    """All marked shuffles of one type, built as delta' o beta' o omega."""
    _check_marked(kind, p, q, h, j)
    w = omega(kind, p, q, h, j)
    (lo_off, lo), (hi_off, hi) = _windows(kind, p, q, h, j)
    out = []
    for beta in enumerate_shuffles(*lo):
        for delta in enumerate_shuffles(*hi):
            perm = compose(shift(delta, hi_off, p + q), shift(beta, lo_off, p + q), w)
            out.append(MarkedShuffle(ShufflePerm(perm, p, q), kind, h, j))
    out.sort(key=lambda s: s.base.perm[:p])
    return tuple(out)


def is_marked(s: ShufflePerm, kind: str, h: int, j: int) -> bool:
    if kind == RIGHT:
        return s(j + 1) == j + h + 1
    return s(s.p + j + 1) == h + j + 1


def decompose_marked(s: MarkedShuffle):
    """Return (omega, beta, delta) with s = delta' o beta' o omega."""
    p, q = s.p, s.q
    w = omega(s.kind, p, q, s.h, s.j)
    winv = [0] * (p + q)
    for k, v in enumerate(w):
        winv[v - 1] = k + 1
    rest = compose(s.base.perm, tuple(winv))  # = delta' o beta'
    (lo_off, lo), (hi_off, hi) = _windows(s.kind, p, q, s.h, s.j)
    beta = ShufflePerm(tuple(rest[lo_off + k] - lo_off for k in range(sum(lo))), *lo)
    delta = ShufflePerm(tuple(rest[hi_off + k] - hi_off for k in range(sum(hi))), *hi)
    return w, beta, delta


def c_marked(kind: str, p: int, q: int, h: int, j: int) -> int:
    """Signed count of marked shuffles of one type."""
    return sum(sign(s.base) for s in enumerate_marked(kind, p, q, h, j))


def c_marked_closed(kind: str, p: int, q: int, h: int, j: int) -> int:
    _check_marked(kind, p, q, h, j)
    if kind == RIGHT:
        return (-1) ** (h * (p - j)) * c_constant(j, h) * c_constant(p - j - 1, q - h)
    return (-1) ** ((j + 1) * (p - h)) * c_constant(h, j) * c_constant(p - h, q - j - 1)


def marked_count(kind: str, p: int, q: int, h: int, j: int) -> int:
    _check_marked(kind, p, q, h, j)
    if kind == RIGHT:
        return comb(j + h, h) * comb(p + q - j - h - 1, q - h)
    return comb(h + j, j) * comb(p + q - h - j - 1, p - h)


@lru_cache(maxsize=None)
def _bubble_word(perm: tuple[int, ...]) -> tuple[int, ...]:
    target = list(perm)          # target[k] = destination of the letter now at k
    word = []
    n = len(target)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if target[i] > target[i + 1]:
                target[i], target[i + 1] = target[i + 1], target[i]
                word.append(i + 1)
    return tuple(word)


def word_of(s, offset: int = 0, total_strands: int | None = None) -> tuple[int, ...]:
    """Reduced word (in order of application) lifting a shuffle to a positive braid.

    Generator ``i`` crosses the strands at positions i and i+1.
    """
    base = s.base if isinstance(s, MarkedShuffle) else s
    if total_strands is not None and offset + base.p + base.q > total_strands:
        raise ValueError("shuffle window does not fit in the strands")
    return tuple(offset + g for g in _bubble_word(base.perm))


def perm_of_word(word, total: int) -> tuple[int, ...]:
    """Underlying permutation of a braid word: letter k ends at position perm[k-1]."""
    where = list(range(1, total + 1))   # where[k-1] = current position of letter k
    at = list(range(1, total + 1))      # at[pos-1] = letter at pos
    for g in word:
        g = abs(g)
        a, b = at[g - 1], at[g]
        at[g - 1], at[g] = b, a
        where[a - 1], where[b - 1] = g + 1, g
    return tuple(where)
