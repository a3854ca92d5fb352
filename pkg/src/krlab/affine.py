"""Affine Weyl group ``W_af = W x Q^vee``, the factorization ``pi_J``, the lift
of PQBG edges to affine Bruhat covers, and the level-zero weight poset.

Conventions: ``AffineWeylElt(w, mu)`` is ``w t_mu``; translations act on
level-zero objects by ``t_mu(a + n delta) = a + (n - <mu, a>) delta``; the
reflection in ``a + n delta`` is ``r_a t_{n a^vee}``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .errors import InvariantViolation, PreconditionError, UsageError
from .qbg import BRUHAT, QUANTUM, QbgEdge, QbgGraph, build_pqbg, candidate_labels, word_label
from .rootdata import RootSystem, RootVec, pairing
from .weyl import (
    WeylElt,
    act_coroot,
    act_weight,
    floor,
    identity,
    invert,
    longest_element,
    multiply,
    parabolic_subgroup,
    reflection,
    reflection_root,
)


def _neg(v):
    return tuple(-c for c in v)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass(frozen=True)
class AffineRoot:
    """``alpha + n delta`` with ``alpha`` a (possibly negative) root vector."""

    alpha: tuple
    n: int

    def is_positive(self, rs: RootSystem) -> bool:
        return self.n > 0 or (self.n == 0 and rs.is_positive(self.alpha))

    def __neg__(self):
        return AffineRoot(_neg(self.alpha), -self.n)

    def __repr__(self):
        return f"{self.alpha}{self.n:+d}d"


@dataclass(frozen=True)
class AffineWeylElt:
    w: WeylElt
    mu: tuple

    @property
    def rs(self):
        return self.w.rs

    def __mul__(self, other: "AffineWeylElt") -> "AffineWeylElt":
        # (w t_mu)(v t_nu) = wv t_{v^-1 mu + nu}
        return AffineWeylElt(multiply(self.w, other.w), _add(act_coroot(invert(other.w), self.mu), other.mu))

    def inverse(self) -> "AffineWeylElt":
        return AffineWeylElt(invert(self.w), _neg(act_coroot(self.w, self.mu)))

    def __repr__(self):
        return f"{self.w!r}*t{self.mu}"


def translation(rs: RootSystem, mu: Sequence[int]) -> AffineWeylElt:
    if len(mu) != rs.rank:
        raise UsageError(f"coroot vector {tuple(mu)} has wrong length for {rs.cartan_type}")
    return AffineWeylElt(identity(rs), tuple(mu))


def classical(w: WeylElt) -> AffineWeylElt:
    return AffineWeylElt(w, (0,) * w.rs.rank)


def aff_act_root(x: AffineWeylElt, beta: AffineRoot) -> AffineRoot:
    rs = x.rs
    return AffineRoot(x.w.act_root(beta.alpha), beta.n - pairing(x.mu, rs.root_weight(beta.alpha)))


def aff_reflection(rs: RootSystem, beta: AffineRoot) -> AffineWeylElt:
    """``r_{a + n delta} = r_a t_{n a^vee}``."""
    av = rs.coroot(beta.alpha)
    return AffineWeylElt(reflection(rs, beta.alpha), tuple(beta.n * c for c in av))


def aff_length(x: AffineWeylElt) -> int:
    total = 0
    for k, wt in enumerate(x.rs.positive_roots_wt):
        total += abs(pairing(x.mu, wt) + (x.w.img[k] < 0))
    return total


def connecting_root(x: AffineWeylElt, y: AffineWeylElt):
    """The affine root ``a + n delta`` (``a > 0``) with ``y = x r_{a + n delta}``,
    or ``None`` if ``x^-1 y`` is not a reflection."""
    d = x.inverse() * y
    k = reflection_root(d.w)
    if k is None:
        return None
    av = x.rs.coroots[k]
    i = next(i for i, c in enumerate(av) if c)
    n, rem = divmod(d.mu[i], av[i])
    if rem or tuple(n * c for c in av) != d.mu:
        return None
    return AffineRoot(x.rs.positive_roots[k], n)


def aff_is_cover(y: AffineWeylElt, x: AffineWeylElt) -> bool:
    """``y`` is covered by ``x``: ``y = x r_gamma`` and ``l(y) = l(x) - 1``."""
    return aff_length(y) == aff_length(x) - 1 and connecting_root(x, y) is not None


# pi_J ------------------------------------------------------------------------
def _components(rs: RootSystem, J) -> list:
    J = set(J)
    comps = []
    while J:
        stack = [min(J)]
        comp = set(stack)
        J -= comp
        while stack:
            i = stack.pop()
            for j in list(J):
                if rs.cartan[i][j]:
                    J.discard(j)
                    comp.add(j)
                    stack.append(j)
        comps.append(frozenset(comp))
    return comps


@lru_cache(maxsize=None)
def affine_parabolic_simple_roots(rs: RootSystem, J: frozenset) -> tuple:
    """Simple roots of the affine root subsystem with classical part in ``Phi_J``."""
    roots = [AffineRoot(rs.simple_root(i), 0) for i in sorted(J)]
    for comp in _components(rs, J):
        ks = [k for k in range(len(rs)) if rs.in_parabolic(k, comp)]
        top = max(ks, key=lambda k: sum(rs.positive_roots[k]))
        roots.append(AffineRoot(_neg(rs.positive_roots[top]), 1))
    return tuple(roots)


def in_affine_quotient(x: AffineWeylElt, J) -> bool:
    """``x . beta > 0`` for every positive affine root with classical part in ``Phi_J``.

    For fixed classical part ``a`` only the smallest admissible ``n`` matters,
    since larger ``n`` only increases the delta-coefficient of the image.
    """
    rs = x.rs
    for k in range(len(rs)):
        if not rs.in_parabolic(k, J):
            continue
        a = rs.positive_roots[k]
        for root, nmin in ((a, 0), (_neg(a), 1)):
            img = aff_act_root(x, AffineRoot(root, nmin))
            if not img.is_positive(rs):
                return False
    return True


def pi_J(x: AffineWeylElt, J) -> tuple:
    """Factor ``x = w1 w2`` with ``w1`` in ``(W^J)_af`` and ``w2`` in ``(W_J)_af``.

    Descends by the simple reflections of the affine subsystem attached to
    ``J`` until no simple root of it is sent negative.
    """
    J = frozenset(J)
    rs = x.rs
    simple = affine_parabolic_simple_roots(rs, J)
    w1 = x
    w2 = classical(identity(rs))
    changed = True
    while changed:
        changed = False
        for beta in simple:
            if not aff_act_root(w1, beta).is_positive(rs):
                r = aff_reflection(rs, beta)
                w1 = w1 * r
                w2 = r * w2
                changed = True
                break
    return w1, w2


def pi_J_search(x: AffineWeylElt, J, bound: int | None = None) -> tuple:
    """Reference factorization by exhaustive search over ``W_J x Q_J^vee``."""
    J = frozenset(J)
    rs = x.rs
    if bound is None:
        bound = max((abs(c) for c in x.mu), default=0) + longest_element(rs).length
    nodes = sorted(J)
    found = []
    for v in parabolic_subgroup(rs, J):
        for coords in product(range(-bound, bound + 1), repeat=len(nodes)):
            nu = [0] * rs.rank
            for i, c in zip(nodes, coords):
                nu[i] = c
            w2 = AffineWeylElt(v, tuple(nu))
            w1 = x * w2.inverse()
            if in_affine_quotient(w1, J):
                found.append((w1, w2))
    if len(found) != 1:
        raise InvariantViolation(f"{len(found)} factorizations of {x} for J={sorted(J)}", "pi_J uniqueness")
    return found[0]


# superantidominant coweights ---------------------------------------------------
def superantidominance_threshold(rs: RootSystem) -> int:
    return 2 * longest_element(rs).length + 2


def is_superantidominant(rs: RootSystem, J, mu: Sequence[int]) -> bool:
    t = superantidominance_threshold(rs)
    for k, wt in enumerate(rs.positive_roots_wt):
        p = pairing(mu, wt)
        if p > 0 or (not rs.in_parabolic(k, J) and p > -t):
            return False
    return True


def adjusted_z(rs: RootSystem, J, mu: Sequence[int]):
    """``z`` with ``pi_J(t_mu) = z t_mu``, or ``None`` if ``mu`` is not J-adjusted."""
    w1, _ = pi_J(translation(rs, mu), J)
    return w1.w if w1.mu == tuple(mu) else None


def adjusted_superantidominant(rs: RootSystem, J, scale: int = 1) -> tuple:
    """A J-adjusted, J-superantidominant coweight: a negative multiple of the sum
    of the fundamental coweights off ``J`` (so ``z = e``)."""
    J = frozenset(J)
    off = [i for i in rs.nodes if i not in J]
    total = [0] * rs.rank
    for i in off:
        total = [t + c for t, c in zip(total, rs.fundamental_coweight(i))]
    den = math.lcm(*(c.denominator for c in total)) if total else 1
    base = [int(c * den) for c in total]
    m = -(-superantidominance_threshold(rs) // den) * scale
    return tuple(-m * c for c in base)


def adjusted_variants(rs: RootSystem, J, mu: Sequence[int], radius: int = 1) -> list:
    """J-adjusted superantidominant coweights ``mu + nu`` for small ``nu`` in ``Q^vee``,
    including ones with nontrivial ``z``."""
    out = []
    for nu in product(range(-radius, radius + 1), repeat=rs.rank):
        cand = tuple(a + b for a, b in zip(mu, nu))
        if is_superantidominant(rs, J, cand) and adjusted_z(rs, J, cand) is not None:
            out.append(cand)
    return out


def _check_mu(rs, J, mu):
    if not is_superantidominant(rs, J, mu):
        raise PreconditionError(f"mu={tuple(mu)} is not J-superantidominant (threshold {superantidominance_threshold(rs)})")
    z = adjusted_z(rs, J, mu)
    if z is None:
        raise PreconditionError(f"mu={tuple(mu)} is not J-adjusted for J={sorted(j + 1 for j in J)}")
    return z


def lift_edge(g: QbgGraph, e: QbgEdge, mu: Sequence[int]) -> tuple:
    """Lift a PQBG edge ``w -> floor(w r_alpha)`` to a cover ``y < x`` in ``W_af``.

    Returns ``(x, y, gamma)`` with ``x = w z t_mu``, ``y = x r_gamma`` and
    ``gamma = z^-1 alpha + (chi + <mu, z^-1 alpha>) delta``.
    """
    rs = g.rs
    mu = tuple(mu)
    z = _check_mu(rs, g.J, mu)
    chi = 1 if e.is_quantum else 0
    alpha = rs.positive_roots[e.label]
    za = invert(z).act_root(alpha)
    gamma = AffineRoot(za, chi + pairing(mu, rs.root_weight(za)))
    x = AffineWeylElt(multiply(e.source, z), mu)
    y = x * aff_reflection(rs, gamma)
    if gamma.is_positive(rs):
        raise InvariantViolation(f"lifted root {gamma} is positive", "edge lift")
    if not aff_is_cover(y, x):
        raise InvariantViolation(f"{y} is not covered by {x}", "edge lift")
    alt = AffineWeylElt(reflection(rs, alpha), tuple(chi * c for c in rs.coroots[e.label])) * classical(z) * translation(rs, mu)
    if classical(e.source) * alt != y:
        raise InvariantViolation(f"y = {y} differs from w r_alpha t_(chi alpha^vee) z t_mu", "edge lift")
    return x, y, gamma


def decompose(x: AffineWeylElt, J) -> tuple:
    """Write ``x = w z t_mu`` with ``w`` in ``W^J`` and ``z`` in ``W_J``."""
    w = floor(x.w, J)
    return w, multiply(invert(w), x.w), x.mu


def project_cover(g: QbgGraph, y: AffineWeylElt, x: AffineWeylElt, check_full_qbg: bool = True) -> QbgEdge:
    """Project a cover ``y < x`` in ``Omega_J^infty`` to the PQBG edge it comes from."""
    rs = g.rs
    J = g.J
    w, z, mu = decompose(x, J)
    zmu = _check_mu(rs, J, mu)
    if zmu != z:
        raise PreconditionError(f"{x} is not of the form w z_mu t_mu")
    if not aff_is_cover(y, x):
        raise PreconditionError(f"{y} is not covered by {x}")
    gamma = connecting_root(x, y)
    k = rs.root_index(gamma.alpha)
    if rs.in_parabolic(k, J):
        raise PreconditionError(f"connecting root {gamma} has classical part in Phi_J")
    alpha = z.act_root(gamma.alpha)  # W_J permutes Phi^+ \ Phi_J^+, so alpha > 0
    chi = gamma.n - pairing(mu, rs.root_weight(gamma.alpha))
    if chi not in (0, 1):
        raise InvariantViolation(f"chi = {chi} for the cover {y} < {x}", "cover projection: chi not in {0,1}")
    kind = QUANTUM if chi else BRUHAT
    edge = g.edge(w, rs.root_index(alpha))
    if edge is None or edge.kind != kind or edge.target != floor(multiply(w, reflection(rs, alpha)), J):
        raise InvariantViolation(f"no {kind} edge {w} -{alpha}-> in QB(W^J)", "cover projection")
    if check_full_qbg:
        full = build_pqbg(rs, frozenset())
        e2 = full.edge(multiply(w, z), k)
        if e2 is None or e2.kind != kind:
            raise InvariantViolation(f"no {kind} edge {multiply(w, z)} -{gamma.alpha}-> in QB(W)", "cover projection")
    return edge


def covers_below(x: AffineWeylElt, J, nrange: int) -> list:
    """All ``y = x r_gamma`` covered by ``x`` with ``gamma = a + n delta``,
    ``a`` in ``Phi^+ \\ Phi_J^+`` and ``|n| <= nrange``."""
    rs = x.rs
    lx = aff_length(x)
    out = []
    for k in candidate_labels(rs, J):
        a = rs.positive_roots[k]
        for n in range(-nrange, nrange + 1):
            y = x * aff_reflection(rs, AffineRoot(a, n))
            if aff_length(y) == lx - 1:
                out.append(y)
    return out


# level-zero weight poset ------------------------------------------------------
@dataclass(frozen=True, order=True)
class LevelZeroWeight:
    """``coset(lam) + deg * delta`` for the fixed dominant weight ``lam``."""

    coset: WeylElt
    deg: int

    def __repr__(self):
        return f"({self.coset!r}, {self.deg})"


class LevelZeroPoset:
    """The orbit ``W_af lam`` of a dominant weight, with Littelmann's order
    generated by ``mu < r_beta(mu)`` iff ``<mu, beta^vee> > 0`` for positive
    affine roots ``beta``."""

    def __init__(self, rs: RootSystem, lam: Sequence[int]):
        if not rs.dominant(lam):
            raise UsageError(f"{tuple(lam)} is not dominant")
        self.rs = rs
        self.lam = tuple(lam)
        self.J = rs.stabilizer_nodes(lam)
        self.graph = build_pqbg(rs, self.J)
        self.step = math.gcd(*self.lam) if any(self.lam) else 0
        self.max_pair = max((pairing(cv, self.lam) for cv in rs.coroots), default=0)
        self._cl = {}
        self._gen = {}
        self._reach = {}

    @property
    def margin(self) -> int:
        return self.max_pair * len(self.rs)

    def cl(self, mu: LevelZeroWeight) -> tuple:
        if mu.coset not in self._cl:
            self._cl[mu.coset] = act_weight(mu.coset, self.lam)
        return self._cl[mu.coset]

    def pair(self, alpha: RootVec, mu: LevelZeroWeight) -> int:
        """``<beta^vee, mu>`` for ``beta = alpha + n delta`` (independent of ``n`` at level zero)."""
        return pairing(self.rs.coroot(alpha), self.cl(mu))

    def reflect(self, mu: LevelZeroWeight, beta: AffineRoot) -> LevelZeroWeight:
        p = self.pair(beta.alpha, mu)
        if p == 0:
            return mu
        return LevelZeroWeight(floor(multiply(reflection(self.rs, beta.alpha), mu.coset), self.J), mu.deg - beta.n * p)

    def less(self, mu: LevelZeroWeight, beta: AffineRoot) -> bool:
        """Generating relation ``mu < r_beta(mu)``."""
        if not beta.is_positive(self.rs):
            raise UsageError(f"{beta} is not a positive affine root")
        return self.pair(beta.alpha, mu) > 0

    def nodes(self, lo: int, hi: int) -> list:
        if self.step == 0:
            return [LevelZeroWeight(v, 0) for v in self.graph.vertices]
        first = -((-lo) // self.step) * self.step
        return [LevelZeroWeight(v, d) for d in range(first, hi + 1, self.step) for v in self.graph.vertices]

    def generators(self, mu: LevelZeroWeight, lo: int) -> list:
        """All ``(beta, r_beta mu)`` with ``mu < r_beta mu`` and target deg ``>= lo``."""
        key = (mu, lo)
        if key in self._gen:
            return self._gen[key]
        out = []
        for k, a in enumerate(self.rs.positive_roots):
            p = self.pair(a, mu)
            if p == 0:
                continue
            alpha, nmin = (a, 0) if p > 0 else (_neg(a), 1)
            n = nmin
            while mu.deg - n * abs(p) >= lo:
                beta = AffineRoot(alpha, n)
                out.append((beta, self.reflect(mu, beta)))
                n += 1
        self._gen[key] = out
        return out

    def strictly_above(self, mu: LevelZeroWeight, lo: int) -> frozenset:
        """Everything strictly above ``mu`` with deg ``>= lo`` (exact, since
        chains never increase deg)."""
        key = (mu, lo)
        if key not in self._reach:
            acc = set()
            for _, nu in self.generators(mu, lo):
                if nu not in acc:
                    acc.add(nu)
                    acc |= self.strictly_above(nu, lo)
            self._reach[key] = frozenset(acc)
        return self._reach[key]

    def covers_by_closure(self, mu: LevelZeroWeight, lo: int) -> list:
        gens = self.generators(mu, lo)
        succ = {nu for _, nu in gens}
        covers = []
        for beta, nu in gens:
            if nu == mu:
                continue
            if any(nu in self.strictly_above(xi, lo) for xi in succ if xi != nu):
                continue
            covers.append((beta, nu))
        return sorted(set(covers), key=_cover_key)

    def covers_by_theorem(self, mu: LevelZeroWeight) -> list:
        """One cover per PQBG edge out of ``cl(mu)``: label ``w(gamma)`` for a
        Bruhat edge, ``delta + w(gamma)`` for a quantum edge."""
        w = mu.coset
        out = []
        for e in self.graph.out[w]:
            wg = w.act_root(self.rs.positive_roots[e.label])
            beta = AffineRoot(wg, 1 if e.is_quantum else 0)
            nu = self.reflect(mu, beta)
            if nu.coset != e.target:
                raise InvariantViolation(f"cover target {nu} does not project to {e.target}", "level-zero covers")
            out.append((beta, nu))
        return sorted(out, key=_cover_key)

    def covers(self, mu: LevelZeroWeight, window: int) -> list:
        """Covers of ``mu`` computed by closure on ``[deg - window, deg]`` and by
        the PQBG construction; the two must agree."""
        if window < self.margin:
            raise PreconditionError(f"window {window} is below the margin {self.margin}")
        a = self.covers_by_closure(mu, mu.deg - window)
        b = self.covers_by_theorem(mu)
        if a != b:
            raise InvariantViolation(f"covers of {mu}: closure {a} vs construction {b}", "level-zero covers")
        return a

    def lower_covers(self, nu: LevelZeroWeight, hi: int) -> list:
        """``(beta, mu)`` with ``mu < nu`` a cover and ``deg(mu) <= hi``."""
        out = []
        for mu in self.nodes(nu.deg, min(hi, nu.deg + self.max_pair)):
            for beta, t in self.covers_by_theorem(mu):
                if t == nu:
                    out.append((beta, mu))
        return out


def _cover_key(item):
    beta, nu = item
    return (nu.deg, nu.coset.length, nu.coset.word, beta.n, beta.alpha)


def lz_reflect(P: LevelZeroPoset, mu: LevelZeroWeight, beta: AffineRoot) -> LevelZeroWeight:
    return P.reflect(mu, beta)


def lz_covers(rs: RootSystem, lam, mu: LevelZeroWeight, window: int) -> list:
    return LevelZeroPoset(rs, lam).covers(mu, window)


def poset_to_json(P: LevelZeroPoset, window: int) -> str:
    """Nodes with deg in ``[-window, window]`` and every cover between them."""
    nodes = P.nodes(-window, window)
    covers = []
    for mu in nodes:
        for beta, nu in P.covers_by_closure(mu, -window):
            covers.append(
                {
                    "src": {"coset": word_label(mu.coset), "deg": mu.deg},
                    "dst": {"coset": word_label(nu.coset), "deg": nu.deg},
                    "label": {"root": list(beta.alpha), "n": beta.n},
                }
            )
    doc = {
        "lambda": list(P.lam),
        "window": window,
        "nodes": [{"coset": word_label(m.coset), "deg": m.deg} for m in nodes],
        "covers": covers,
    }
    return json.dumps(doc, indent=2)
