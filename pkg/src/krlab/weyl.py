"""Finite Weyl group arithmetic.

An element is stored as its action on the positive roots: ``img[k]`` is the
signed code ``+-(j+1)`` of ``w(beta_k) = +-beta_j``.  Equality is therefore
canonical and multiplication costs ``O(|Phi^+|)``.  The actions on weights
and coroots are integer matrices built lazily from a reduced word.
"""
from __future__ import annotations

import math
import os
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import ResourceError, UsageError
from .rootdata import CorootVector, RootSystem, RootVec, Weight

DEFAULT_GROUP_BUDGET = 1_000_000


def budget(default: int) -> int:
    env = os.environ.get("KRLAB_BUDGET")
    return int(env) if env else default


def group_order(rs: RootSystem) -> int:
    fam, n = rs.cartan_type.family, rs.rank
    if fam == "A":
        return math.factorial(n + 1)
    if fam in "BC":
        return 2**n * math.factorial(n)
    if fam == "D":
        return 2 ** (n - 1) * math.factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[(fam, n)]


class WeylElt:
    __slots__ = ("rs", "img", "length", "_word", "_wmat", "_cmat", "_hash")

    def __init__(self, rs: RootSystem, img: tuple):
        self.rs = rs
        self.img = img
        self.length = sum(1 for c in img if c < 0)
        self._word = None
        self._wmat = None
        self._cmat = None
        self._hash = hash(img)

    # group structure ----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, WeylElt) and self.img == other.img and self.rs is other.rs

    def __hash__(self):
        return self._hash

    def __lt__(self, other):  # deterministic sort order: length, then canonical word
        return (self.length, self.word) < (other.length, other.word)

    def __mul__(self, other: "WeylElt") -> "WeylElt":
        return multiply(self, other)

    def __repr__(self):
        return "e" if not self.word else "s" + "s".join(str(i + 1) for i in self.word)

    def is_identity(self) -> bool:
        return self.length == 0

    def inverse(self) -> "WeylElt":
        return invert(self)

    # roots ----------------------------------------------------------------
    def act_code(self, code: int) -> int:
        c = self.img[abs(code) - 1]
        return c if code > 0 else -c

    def act_root(self, beta: RootVec) -> RootVec:
        code = self.act_code(self.rs.root_code(beta))
        r = self.rs.positive_roots[abs(code) - 1]
        return r if code > 0 else tuple(-c for c in r)

    def sends_positive(self, k: int) -> bool:
        """Whether ``w(beta_k) > 0`` for positive root index ``k``."""
        return self.img[k] > 0

    @property
    def word(self) -> tuple:
        """Lexicographically smallest reduced word (0-based node labels)."""
        if self._word is None:
            word = []
            cur = self
            while cur.length:
                inv = invert(cur)
                i = next(i for i in range(self.rs.rank) if inv.img[i] < 0)
                word.append(i)
                cur = multiply(simple_reflection(self.rs, i), cur)
            self._word = tuple(word)
        return self._word

    def weight_matrix(self):
        if self._wmat is None:
            n = self.rs.rank
            m = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in reversed(self.word):
                m = _matmul(_simple_weight_matrix(self.rs, i), m)
            self._wmat = tuple(tuple(r) for r in m)
        return self._wmat

    def coroot_matrix(self):
        if self._cmat is None:
            n = self.rs.rank
            m = [[int(i == j) for j in range(n)] for i in range(n)]
            for i in reversed(self.word):
                m = _matmul(_simple_coroot_matrix(self.rs, i), m)
            self._cmat = tuple(tuple(r) for r in m)
        return self._cmat


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@lru_cache(maxsize=None)
def _simple_weight_matrix(rs, i):
    # s_i(lam)_j = lam_j - lam_i * <alpha_j^vee, alpha_i>
    n = rs.rank
    return tuple(tuple(int(j == k) - (rs.cartan[j][i] if k == i else 0) for k in range(n)) for j in range(n))


@lru_cache(maxsize=None)
def _simple_coroot_matrix(rs, i):
    # s_i(mu) = mu - <mu, alpha_i> alpha_i^vee
    n = rs.rank
    return tuple(tuple(int(j == k) - (rs.cartan[k][i] if j == i else 0) for k in range(n)) for j in range(n))


def _check_same(a: WeylElt, b: WeylElt):
    if a.rs is not b.rs:
        raise UsageError(f"mixing elements of {a.rs.cartan_type} and {b.rs.cartan_type}")


def multiply(a: WeylElt, b: WeylElt) -> WeylElt:
    _check_same(a, b)
    aimg = a.img
    return WeylElt(a.rs, tuple(aimg[c - 1] if c > 0 else -aimg[-c - 1] for c in b.img))


def invert(a: WeylElt) -> WeylElt:
    out = [0] * len(a.img)
    for k, c in enumerate(a.img):
        out[abs(c) - 1] = (k + 1) if c > 0 else -(k + 1)
    return WeylElt(a.rs, tuple(out))


def act_weight(a: WeylElt, wt: Sequence[int]) -> Weight:
    a.rs.check_weight(wt)
    m = a.weight_matrix()
    return tuple(sum(r[k] * wt[k] for k in range(len(wt))) for r in m)


def act_coroot(a: WeylElt, cv: Sequence[int]) -> CorootVector:
    if len(cv) != a.rs.rank:
        raise UsageError(f"coroot vector of length {len(cv)} in rank {a.rs.rank}")
    m = a.coroot_matrix()
    return tuple(sum(r[k] * cv[k] for k in range(len(cv))) for r in m)


@lru_cache(maxsize=None)
def identity(rs: RootSystem) -> WeylElt:
    return WeylElt(rs, tuple(range(1, len(rs) + 1)))


@lru_cache(maxsize=None)
def _reflection_by_index(rs: RootSystem, k: int) -> WeylElt:
    beta = rs.positive_roots[k]
    bv = rs.coroots[k]
    img = []
    for g, gw in zip(rs.positive_roots, rs.positive_roots_wt):
        p = sum(c * w for c, w in zip(bv, gw))
        img.append(rs.root_code(tuple(x - p * b for x, b in zip(g, beta))))
    return WeylElt(rs, tuple(img))


def reflection(rs: RootSystem, beta) -> WeylElt:
    """``r_beta``; ``beta`` is a root vector or a positive-root index."""
    if isinstance(beta, int):
        return _reflection_by_index(rs, beta)
    return _reflection_by_index(rs, abs(rs.root_code(beta)) - 1)


def simple_reflection(rs: RootSystem, i: int) -> WeylElt:
    return _reflection_by_index(rs, i)


def from_word(rs: RootSystem, word: Iterable[int]) -> WeylElt:
    w = identity(rs)
    for i in word:
        if not 0 <= i < rs.rank:
            raise UsageError(f"node {i + 1} out of range for {rs.cartan_type}")
        w = multiply(w, simple_reflection(rs, i))
    return w


@lru_cache(maxsize=None)
def reflection_table(rs: RootSystem) -> dict:
    """Map reflection element -> positive-root index."""
    return {_reflection_by_index(rs, k): k for k in range(len(rs))}


def reflection_root(w: WeylElt):
    """Positive-root index ``k`` with ``w = r_{beta_k}``, or ``None``."""
    return reflection_table(w.rs).get(w)


@lru_cache(maxsize=None)
def _enumerate(rs: RootSystem, gens: tuple) -> tuple:
    e = identity(rs)
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for w in frontier:
            for i in gens:
                v = multiply(w, simple_reflection(rs, i))
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    return tuple(sorted(seen))


def enumerate_group(rs: RootSystem, cap: int | None = None) -> tuple:
    cap = budget(DEFAULT_GROUP_BUDGET) if cap is None else cap
    order = group_order(rs)
    if order > cap:
        raise ResourceError(f"|W({rs.cartan_type})| = {order} exceeds the budget {cap}")
    return _enumerate(rs, tuple(rs.nodes))


def parabolic_subgroup(rs: RootSystem, J) -> tuple:
    return _enumerate(rs, tuple(sorted(J)))


def in_quotient(w: WeylElt, J) -> bool:
    return all(w.img[i] > 0 for i in J)


def enumerate_quotient(rs: RootSystem, J, cap: int | None = None) -> tuple:
    """Minimum-length coset representatives ``W^J`` in (length, word) order."""
    J = frozenset(J)
    return tuple(w for w in enumerate_group(rs, cap) if in_quotient(w, J))


def floor(v: WeylElt, J) -> WeylElt:
    """Minimum-length representative of ``v W_J``."""
    changed = True
    while changed:
        changed = False
        for i in J:
            if v.img[i] < 0:
                v = multiply(v, simple_reflection(v.rs, i))
                changed = True
    return v


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem, J=None) -> WeylElt:
    nodes = rs.nodes if J is None else tuple(sorted(J))
    w = identity(rs)
    while True:
        i = next((i for i in nodes if w.img[i] > 0), None)
        if i is None:
            return w
        w = multiply(w, simple_reflection(rs, i))


@lru_cache(maxsize=1 << 20)
def bruhat_leq(u: WeylElt, w: WeylElt) -> bool:
    """Bruhat order via the lifting property: if ``ws < w`` then
    ``u <= w`` iff ``min(u, us) <= ws``."""
    _check_same(u, w)
    if u.length > w.length:
        return False
    if w.length == 0:
        return u.length == 0
    if u.length == 0:
        return True
    i = next(i for i in range(w.rs.rank) if w.img[i] < 0)
    s = simple_reflection(w.rs, i)
    ws = multiply(w, s)
    if u.img[i] < 0:
        return bruhat_leq(multiply(u, s), ws)
    return bruhat_leq(u, ws)


def bruhat_leq_subword(u: WeylElt, w: WeylElt) -> bool:
    """Subword-property oracle (exponential; for tests)."""
    word = w.word
    rs = w.rs
    for k in range(len(word) + 1):
        for idx in combinations(range(len(word)), k):
            if from_word(rs, (word[j] for j in idx)) == u:
                return True
    return False


def is_cover(a: WeylElt, b: WeylElt) -> bool:
    """``a`` is covered by ``b`` in Bruhat order."""
    _check_same(a, b)
    return b.length == a.length + 1 and reflection_root(multiply(invert(a), b)) is not None


def sign(w: WeylElt) -> int:
    return -1 if w.length % 2 else 1
