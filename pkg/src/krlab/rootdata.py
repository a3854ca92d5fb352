"""Finite root data for the untwisted types A-G.

Conventions
-----------
* ``cartan[i][j] = <alpha_i^vee, alpha_j>`` with Bourbaki node numbering
  (nodes are 1-based in the mathematics and 0-based in the code).
* Weights are integer tuples in the fundamental-weight basis.
* Coroot vectors are integer tuples in the simple-coroot basis.
* Roots are integer tuples in the simple-root basis; a negative root is the
  negated tuple of a positive one.

Coroots of non-simple roots are obtained by transporting ``alpha_i^vee``
along the same reflections that produce ``beta`` from ``alpha_i``; no
invariant form is ever used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .errors import ConfigurationError, UsageError

Weight = tuple
CorootVector = tuple
RootVec = tuple

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: 6 <= n <= 8,
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class CartanType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise ConfigurationError(f"unknown Cartan family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_RULES[self.family](self.rank):
            raise ConfigurationError(f"illegal rank {self.rank} for type {self.family}")

    def __str__(self):
        return f"{self.family}{self.rank}"

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        text = text.strip()
        try:
            return cls(text[0].upper(), int(text[1:]))
        except (IndexError, ValueError):
            raise ConfigurationError(f"cannot parse Cartan type {text!r}") from None


def cartan_matrix(ct: CartanType) -> tuple:
    n, fam = ct.rank, ct.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j], a[j][i] = aij, aji

    if fam in "ABCD":
        last = n - 1 if fam != "D" else n - 2
        for i in range(last):
            link(i, i + 1)
        if fam == "B":
            link(n - 2, n - 1, -1, -2)
        elif fam == "C":
            link(n - 2, n - 1, -2, -1)
        elif fam == "D":
            link(n - 3, n - 1)
    elif fam == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif fam == "F":
        link(0, 1)
        link(1, 2, -1, -2)
        link(2, 3)
    elif fam == "G":
        link(0, 1, -3, -1)
    return tuple(tuple(row) for row in a)


_KNOWN_COUNTS = {
    "A": lambda n: n * (n + 1) // 2,
    "B": lambda n: n * n,
    "C": lambda n: n * n,
    "D": lambda n: n * (n - 1),
    "E": lambda n: {6: 36, 7: 63, 8: 120}[n],
    "F": lambda n: 24,
    "G": lambda n: 6,
}


def known_positive_root_count(ct: CartanType) -> int:
    return _KNOWN_COUNTS[ct.family](ct.rank)


@dataclass(frozen=True, eq=False)
class RootSystem:
    cartan_type: CartanType
    cartan: tuple
    positive_roots: tuple  # simple-root coordinates
    positive_roots_wt: tuple  # fundamental-weight coordinates
    coroots: tuple  # simple-coroot coordinates, aligned with positive_roots
    theta: int  # index of the highest root
    _lookup: dict = field(repr=False)

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def nodes(self) -> tuple:
        return tuple(range(self.rank))

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    def __len__(self):
        return len(self.positive_roots)

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    # lookups -------------------------------------------------------------
    def root_code(self, beta: RootVec) -> int:
        """Signed code ``+-(k+1)`` of a root given in simple-root coordinates."""
        try:
            return self._lookup[tuple(beta)]
        except KeyError:
            raise UsageError(f"{beta} is not a root of {self.cartan_type}") from None

    def is_root(self, beta: RootVec) -> bool:
        return tuple(beta) in self._lookup

    def root_index(self, beta: RootVec) -> int:
        """Index of a positive root."""
        code = self.root_code(beta)
        if code < 0:
            raise UsageError(f"{beta} is a negative root")
        return code - 1

    def simple_root(self, i: int) -> RootVec:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def is_positive(self, beta: RootVec) -> bool:
        return self.root_code(beta) > 0

    def coroot(self, beta: RootVec) -> CorootVector:
        code = self.root_code(beta)
        cv = self.coroots[abs(code) - 1]
        return cv if code > 0 else tuple(-c for c in cv)

    def root_weight(self, beta: RootVec) -> Weight:
        """A root expressed in fundamental-weight coordinates."""
        return tuple(sum(self.cartan[j][k] * beta[k] for k in range(self.rank)) for j in range(self.rank))

    def root_pair(self, a: RootVec, b: RootVec) -> int:
        """``<a^vee, b>`` for roots ``a``, ``b``."""
        return pairing(self.coroot(a), self.root_weight(b))

    @property
    def theta_root(self) -> RootVec:
        return self.positive_roots[self.theta]

    def support(self, k: int) -> frozenset:
        return frozenset(i for i, c in enumerate(self.positive_roots[k]) if c)

    def in_parabolic(self, k: int, J) -> bool:
        """Whether positive root ``k`` lies in the subsystem spanned by ``J``."""
        return self.support(k) <= frozenset(J)

    def dominant(self, wt: Weight) -> bool:
        self.check_weight(wt)
        return all(c >= 0 for c in wt)

    def stabilizer_nodes(self, wt: Weight) -> frozenset:
        """``J = {i : <alpha_i^vee, wt> = 0}``."""
        self.check_weight(wt)
        return frozenset(i for i, c in enumerate(wt) if c == 0)

    def check_weight(self, wt) -> None:
        if len(wt) != self.rank:
            raise UsageError(f"weight {tuple(wt)} has length {len(wt)}, expected {self.rank}")

    # dual-side helpers ---------------------------------------------------
    def weight_in_roots(self, wt: Weight) -> tuple:
        """Rational simple-root coordinates of a weight (inverse Cartan matrix)."""
        return tuple(_solve(self.cartan, wt, transpose=False))

    def fundamental_coweight(self, i: int) -> tuple:
        """Rational simple-coroot coordinates of the fundamental coweight ``omega_i^vee``."""
        rhs = tuple(1 if j == i else 0 for j in range(self.rank))
        return tuple(_solve(self.cartan, rhs, transpose=True))


def _solve(a, rhs, transpose):
    """Exact solve of ``A x = rhs`` (or ``A^T x = rhs``) over the rationals."""
    n = len(a)
    m = [[Fraction(a[j][i] if transpose else a[i][j]) for j in range(n)] + [Fraction(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def pairing(cv: Sequence[int], wt: Sequence[int]) -> int:
    """Evaluation pairing of a coroot vector (simple-coroot basis) with a weight
    (fundamental-weight basis)."""
    if len(cv) != len(wt):
        raise UsageError(f"dimension mismatch: coroot of length {len(cv)} vs weight of length {len(wt)}")
    return sum(c * w for c, w in zip(cv, wt))


@lru_cache(maxsize=None)
def build_root_system(ct: CartanType) -> RootSystem:
    if isinstance(ct, str):
        ct = CartanType.parse(ct)
    a = cartan_matrix(ct)
    n = ct.rank

    def pair_root(i, beta):  # <alpha_i^vee, beta>
        return sum(a[i][k] * beta[k] for k in range(n))

    def pair_coroot(cv, i):  # <cv, alpha_i>
        return sum(cv[k] * a[k][i] for k in range(n))

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    coroot_of = {s: s for s in simple}
    frontier = list(simple)
    while frontier:
        nxt = []
        for beta in frontier:
            bv = coroot_of[beta]
            for i in range(n):
                p = pair_root(i, beta)
                if p == 0:
                    continue
                g = tuple(b - p * (1 if k == i else 0) for k, b in enumerate(beta))
                if all(c >= 0 for c in g) and g not in coroot_of:
                    q = pair_coroot(bv, i)
                    coroot_of[g] = tuple(c - q * (1 if k == i else 0) for k, c in enumerate(bv))
                    nxt.append(g)
        frontier = nxt

    pos = sorted(coroot_of, key=lambda r: (sum(r), tuple(-c for c in r)))
    lookup = {}
    for k, r in enumerate(pos):
        lookup[r] = k + 1
        lookup[tuple(-c for c in r)] = -(k + 1)
    wt = tuple(tuple(pair_root(j, r) for j in range(n)) for r in pos)
    heights = [sum(r) for r in pos]
    top = max(heights)
    if heights.count(top) != 1:
        raise ConfigurationError(f"no unique highest root for {ct}")
    return RootSystem(
        cartan_type=ct,
        cartan=a,
        positive_roots=tuple(pos),
        positive_roots_wt=wt,
        coroots=tuple(coroot_of[r] for r in pos),
        theta=heights.index(top),
        _lookup=lookup,
    )


def two_rho_J(rs: RootSystem, J: Iterable[int]) -> Weight:
    """``2 rho_J``: the sum of positive roots supported on ``J``, in weight coordinates."""
    J = frozenset(J)
    if not J <= frozenset(rs.nodes):
        raise UsageError(f"J={sorted(J)} is not a subset of the nodes of {rs.cartan_type}")
    total = [0] * rs.rank
    for k in range(len(rs)):
        if rs.in_parabolic(k, J):
            total = [t + c for t, c in zip(total, rs.positive_roots_wt[k])]
    return tuple(total)
