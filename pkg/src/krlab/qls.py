"""Quantum LS paths, their root operators, and windowed level-zero LS paths.

Colors follow the mathematical numbering: ``i = 1..n`` are the classical
simple roots (code node ``i - 1``) and ``i = 0`` is the affine node, acting
through ``-theta`` and ``r_theta``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .affine import AffineRoot, LevelZeroPoset, LevelZeroWeight
from .errors import InvariantViolation, ResourceError, UsageError
from .qbg import QbgGraph, build_pqbg, reachable, word_label, wt_pairing
from .rootdata import RootSystem, pairing
from .weyl import WeylElt, act_weight, floor, multiply, reflection, simple_reflection

DEFAULT_PATH_BUDGET = 200_000


def _budget():
    from .weyl import budget

    return budget(DEFAULT_PATH_BUDGET)


@dataclass(frozen=True)
class QLSPath:
    """``(x_1, ..., x_s; sigma_0, ..., sigma_s)``; ``x_1`` is the direction at ``t = 0``."""

    dirs: tuple
    times: tuple

    def __post_init__(self):
        if len(self.times) != len(self.dirs) + 1 or not self.dirs:
            raise UsageError("need s directions and s + 1 times")
        if self.times[0] != 0 or self.times[-1] != 1:
            raise UsageError(f"times must run from 0 to 1, got {self.times}")
        if any(a >= b for a, b in zip(self.times, self.times[1:])):
            raise UsageError(f"times must increase strictly: {self.times}")

    def is_canonical(self) -> bool:
        return all(a != b for a, b in zip(self.dirs, self.dirs[1:]))

    def key(self):
        return (len(self.dirs), tuple(self.times), tuple((d.length, d.word) for d in self.dirs))

    def __lt__(self, other):
        return self.key() < other.key()

    def __repr__(self):
        ts = ",".join(str(t) for t in self.times)
        return f"({','.join(repr(d) for d in self.dirs)};{ts})"


def canonical(dirs: Sequence, times: Sequence) -> tuple:
    """Merge equal neighbours and drop zero-length segments."""
    out_d, out_t = [], [Fraction(0)]
    for d, a, b in zip(dirs, times, times[1:]):
        if a == b:
            continue
        if out_d and out_d[-1] == d:
            out_t[-1] = Fraction(b)
        else:
            out_d.append(d)
            out_t.append(Fraction(b))
    return tuple(out_d), tuple(out_t)


def make_path(dirs, times) -> QLSPath:
    d, t = canonical(dirs, [Fraction(x) for x in times])
    return QLSPath(d, t)


def straight(w: WeylElt) -> QLSPath:
    return QLSPath((w,), (Fraction(0), Fraction(1)))


# sigma-paths ---------------------------------------------------------------
def _allowed_labels(rs: RootSystem, lam, sigma: Fraction) -> frozenset:
    return frozenset(k for k, cv in enumerate(rs.coroots) if (sigma * pairing(cv, lam)).denominator == 1)


class _SigmaReach:
    """Cached reachability in QB(W^J) filtered by the sigma-integrality condition."""

    def __init__(self, g: QbgGraph, lam):
        self.g = g
        self.lam = tuple(lam)
        self._cache = {}

    def sources_into(self, x: WeylElt, sigma: Fraction) -> frozenset:
        """All ``y`` with a directed sigma-path from ``y`` to ``x``."""
        labels = _allowed_labels(self.g.rs, self.lam, sigma)
        key = (x, labels)
        if key not in self._cache:
            rev = self._reverse(labels)
            seen = {x}
            stack = [x]
            while stack:
                u = stack.pop()
                for v in rev.get(u, ()):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            self._cache[key] = frozenset(seen)
        return self._cache[key]

    @lru_cache(maxsize=None)
    def _reverse(self, labels):
        rev = {}
        for e in self.g.edges:
            if e.label in labels:
                rev.setdefault(e.target, []).append(e.source)
        return rev


def is_sigma_path(g: QbgGraph, y: WeylElt, x: WeylElt, sigma, lam) -> bool:
    sigma = Fraction(sigma)
    if not 0 < sigma < 1:
        raise UsageError(f"sigma={sigma} must lie strictly between 0 and 1")
    labels = _allowed_labels(g.rs, lam, sigma)
    return x in reachable(g, y, lambda e: e.label in labels)


def candidate_times(rs: RootSystem, lam) -> list:
    """Rationals in (0, 1) whose denominator divides some ``<gamma^vee, lam>``."""
    dens = {pairing(cv, lam) for cv in rs.coroots}
    out = {Fraction(a, b) for b in dens if b > 1 for a in range(1, b)}
    return sorted(out)


def is_qls(g: QbgGraph, eta: QLSPath, lam) -> bool:
    if not eta.is_canonical() or any(d not in g for d in eta.dirs):
        return False
    return all(is_sigma_path(g, eta.dirs[u + 1], eta.dirs[u], eta.times[u + 1], lam) for u in range(len(eta.dirs) - 1))


def pqbg_for(rs: RootSystem, lam) -> QbgGraph:
    if not rs.dominant(lam):
        raise UsageError(f"{tuple(lam)} is not dominant")
    return build_pqbg(rs, rs.stabilizer_nodes(lam))


def enumerate_qls(rs: RootSystem, lam, cap: int | None = None) -> list:
    lam = tuple(lam)
    g = pqbg_for(rs, lam)
    cap = _budget() if cap is None else cap
    reach = _SigmaReach(g, lam)
    times = candidate_times(rs, lam)
    out = []

    def extend(dirs, ts):
        if len(out) > cap:
            raise ResourceError(f"QLS({lam}) for {rs.cartan_type} exceeds the budget {cap}")
        out.append(QLSPath(tuple(dirs), tuple(ts) + (Fraction(1),)))
        x = dirs[-1]
        for sigma in times:
            if sigma <= ts[-1]:
                continue
            for y in sorted(reach.sources_into(x, sigma)):
                if y != x:
                    extend(dirs + [y], ts + [sigma])

    for x in g.vertices:
        extend([x], [Fraction(0)])
    return sorted(out)


# evaluation ------------------------------------------------------------------
def eval_path(eta: QLSPath, lam, t) -> tuple:
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise UsageError(f"t={t} outside [0, 1]")
    total = [Fraction(0)] * len(lam)
    for d, a, b in zip(eta.dirs, eta.times, eta.times[1:]):
        if t <= a:
            break
        v = act_weight(d, lam)
        span = min(t, b) - a
        total = [s + span * c for s, c in zip(total, v)]
    return tuple(total)


def wt(eta: QLSPath, lam) -> tuple:
    w = eval_path(eta, lam, 1)
    if any(c.denominator != 1 for c in w):
        raise InvariantViolation(f"wt({eta}) = {w} is not integral", "QLS weight integrality")
    return tuple(int(c) for c in w)


def deg(eta: QLSPath, g: QbgGraph, lam) -> int:
    total = Fraction(0)
    for u in range(len(eta.dirs) - 1):
        total += (1 - eta.times[u + 1]) * wt_pairing(g, eta.dirs[u + 1], eta.dirs[u], lam)
    if total.denominator != 1 or total < 0:
        raise InvariantViolation(f"Deg({eta}) = {-total}", "Deg integrality and nonpositivity")
    return -int(total)


# root operators ----------------------------------------------------------------
def _coroot_of_color(rs: RootSystem, i: int) -> tuple:
    if i == 0:
        return tuple(-c for c in rs.coroots[rs.theta])
    return rs.coroots[i - 1]


def _check_color(rs, i):
    if not 0 <= i <= rs.rank:
        raise UsageError(f"color {i} outside 0..{rs.rank}")


def alpha_tilde(rs: RootSystem, i: int) -> tuple:
    """``cl`` of the simple affine root: ``alpha_i`` or ``-theta``, as a weight."""
    _check_color(rs, i)
    if i == 0:
        return tuple(-c for c in rs.positive_roots_wt[rs.theta])
    return rs.positive_roots_wt[i - 1]


def _heights(slopes, times):
    """Values of ``H`` at the breakpoints."""
    h = [Fraction(0)]
    for s, a, b in zip(slopes, times, times[1:]):
        h.append(h[-1] + s * (b - a))
    return h


def _split(dirs, times, slopes, tau):
    """Insert a breakpoint at ``tau`` (no-op if present)."""
    if tau in times:
        return list(dirs), list(times), list(slopes)
    u = next(u for u in range(len(dirs)) if times[u] < tau < times[u + 1])
    return (
        list(dirs[: u + 1]) + list(dirs[u:]),
        list(times[: u + 1]) + [tau] + list(times[u + 1 :]),
        list(slopes[: u + 1]) + list(slopes[u:]),
    )


def _crossing(times, heights, slopes, level, lo, hi, last):
    """First (or last) time in ``[lo, hi]`` where ``H = level``."""
    hits = []
    for u, s in enumerate(slopes):
        a, b = times[u], times[u + 1]
        ha, hb = heights[u], heights[u + 1]
        if b < lo or a > hi:
            continue
        if s == 0:
            if ha == level:
                hits.extend([max(a, lo), min(b, hi)])
        elif min(ha, hb) <= level <= max(ha, hb):
            t = a + (level - ha) / s
            if lo <= t <= hi:
                hits.append(t)
    if not hits:
        return None
    return max(hits) if last else min(hits)


def string_data(slopes, times) -> tuple:
    """``(m, H(1))`` for the height function with the given slopes."""
    h = _heights(slopes, times)
    return min(h), h[-1]


def root_operator(dirs, times, slopes, reflect: Callable, raising: bool):
    """Littelmann's ``e`` (``raising``) or ``f`` on a path given by direction
    objects, breakpoints and ``H``-slopes; ``reflect`` maps a direction to its
    image under ``s_i``.  Returns ``(dirs, times)`` or ``None``."""
    times = [Fraction(t) for t in times]
    h = _heights(slopes, times)
    m = min(h)
    if m.denominator != 1:
        raise InvariantViolation(f"minimum {m} of H is not an integer", "QLS height minima")
    if raising:
        if m == 0:
            return None
        t1 = _crossing(times, h, slopes, m, 0, 1, last=False)
        t0 = _crossing(times, h, slopes, m + 1, 0, t1, last=True)
    else:
        if h[-1] - m < 1:
            return None
        t0 = _crossing(times, h, slopes, m, 0, 1, last=True)
        t1 = _crossing(times, h, slopes, m + 1, t0, 1, last=False)
    dirs, times, slopes = _split(dirs, times, slopes, t0)
    dirs, times, slopes = _split(dirs, times, slopes, t1)
    new = [reflect(d) if t0 <= a and b <= t1 else d for d, a, b in zip(dirs, times, times[1:])]
    return new, times


def _classical_reflect(rs: RootSystem, i: int, J):
    s = reflection(rs, rs.theta) if i == 0 else simple_reflection(rs, i - 1)
    return lambda x: floor(multiply(s, x), J)


def _slopes(rs, eta: QLSPath, lam, i):
    cv = _coroot_of_color(rs, i)
    return [pairing(cv, act_weight(d, lam)) for d in eta.dirs]


def _apply(rs, eta: QLSPath, i: int, lam, raising: bool):
    _check_color(rs, i)
    if not eta.is_canonical():
        raise UsageError(f"{eta} is not in canonical form")
    J = rs.stabilizer_nodes(lam)
    res = root_operator(eta.dirs, eta.times, _slopes(rs, eta, lam, i), _classical_reflect(rs, i, J), raising)
    return None if res is None else make_path(*res)


def root_e(rs: RootSystem, eta: QLSPath, i: int, lam):
    return _apply(rs, eta, i, lam, True)


def root_f(rs: RootSystem, eta: QLSPath, i: int, lam):
    return _apply(rs, eta, i, lam, False)


def epsilon_phi(rs: RootSystem, eta: QLSPath, i: int, lam) -> tuple:
    m, h1 = string_data(_slopes(rs, eta, lam, i), eta.times)
    return -m, h1 - m


# crystal graphs ------------------------------------------------------------------
@dataclass
class CrystalGraph:
    """Colored digraph of ``f``-arrows; ``colors`` includes 0 for the affine node."""

    rs: RootSystem
    nodes: list
    weights: dict
    arrows: dict  # (node, i) -> node for f_i
    colors: tuple
    labels: dict = None  # node -> extra export data

    def f(self, b, i):
        return self.arrows.get((b, i))

    def e_map(self) -> dict:
        return {(t, i): s for (s, i), t in self.arrows.items()}

    def epsilon(self, b, i, _e=None) -> int:
        e = self.e_map() if _e is None else _e
        n = 0
        while (b, i) in e:
            b = e[(b, i)]
            n += 1
        return n

    def phi(self, b, i) -> int:
        n = 0
        while (b, i) in self.arrows:
            b = self.arrows[(b, i)]
            n += 1
        return n

    def classical_highest(self) -> list:
        e = self.e_map()
        return [b for b in self.nodes if all((b, i) not in e for i in self.colors if i != 0)]


def crystal_graph(rs: RootSystem, lam) -> CrystalGraph:
    lam = tuple(lam)
    g = pqbg_for(rs, lam)
    paths = enumerate_qls(rs, lam)
    index = set(paths)
    colors = tuple(range(rs.rank + 1))
    arrows = {}
    for eta in paths:
        for i in colors:
            nxt = root_f(rs, eta, i, lam)
            if nxt is not None:
                if nxt not in index:
                    raise InvariantViolation(f"f_{i}{eta} = {nxt} is not a QLS path", "QLS closure under root operators")
                arrows[(eta, i)] = nxt
    labels = {eta: {"deg": deg(eta, g, lam)} for eta in paths}
    return CrystalGraph(rs, paths, {eta: wt(eta, lam) for eta in paths}, arrows, colors, labels)


def tensor(a: CrystalGraph, b: CrystalGraph) -> CrystalGraph:
    """``a (x) b`` with Kashiwara's signature rule: ``f_i`` acts on the left
    factor iff ``phi_i(x) > eps_i(y)``."""
    if a.colors != b.colors:
        raise UsageError("tensor factors have different color sets")
    eb = b.e_map()
    eps_b = {(y, i): b.epsilon(y, i, eb) for y in b.nodes for i in b.colors}
    phi_a = {(x, i): a.phi(x, i) for x in a.nodes for i in a.colors}
    nodes = [(x, y) for x in a.nodes for y in b.nodes]
    arrows = {}
    for x, y in nodes:
        for i in a.colors:
            if phi_a[(x, i)] > eps_b[(y, i)]:
                t = a.f(x, i)
                arrows[((x, y), i)] = (t, y)
            else:
                t = b.f(y, i)
                if t is not None:
                    arrows[((x, y), i)] = (x, t)
    weights = {(x, y): tuple(p + q for p, q in zip(a.weights[x], b.weights[y])) for x, y in nodes}
    return CrystalGraph(a.rs, nodes, weights, arrows, a.colors)


def _profile(g: CrystalGraph, b, e):
    return (g.weights[b], tuple((g.epsilon(b, i, e), g.phi(b, i)) for i in g.colors))


def crystals_isomorphic(a: CrystalGraph, b: CrystalGraph) -> bool:
    """Search for a weight- and color-preserving isomorphism, seeded at the
    classical highest-weight nodes and propagated along ``e``/``f`` arrows."""
    if len(a.nodes) != len(b.nodes) or a.colors != b.colors:
        return False
    ea, eb = a.e_map(), b.e_map()
    prof_b = {}
    for y in b.nodes:
        prof_b.setdefault(_profile(b, y, eb), []).append(y)
    mapping, used = {}, set()

    def propagate(x0, y0):
        local = {x0: y0}
        stack = [x0]
        while stack:
            x = stack.pop()
            y = local[x]
            for i in a.colors:
                for amap, bmap in ((a.arrows, b.arrows), (ea, eb)):
                    xn, yn = amap.get((x, i)), bmap.get((y, i))
                    if (xn is None) != (yn is None):
                        return None
                    if xn is None:
                        continue
                    if xn in local:
                        if local[xn] != yn:
                            return None
                    elif xn in mapping or yn in used or a.weights[xn] != b.weights[yn]:
                        return None
                    else:
                        local[xn] = yn
                        stack.append(xn)
        if len(set(local.values())) != len(local):
            return None
        return local

    for seed in a.classical_highest():
        if seed in mapping:
            continue
        for cand in prof_b.get(_profile(a, seed, ea), []):
            if cand in used:
                continue
            local = propagate(seed, cand)
            if local is not None:
                mapping.update(local)
                used.update(local.values())
                break
        else:
            return False
    return len(mapping) == len(a.nodes)


def crystal_to_json(cg: CrystalGraph, lam) -> str:
    idx = {b: n for n, b in enumerate(cg.nodes)}
    nodes = []
    for b in cg.nodes:
        nodes.append(
            {
                "dirs": [word_label(d) for d in b.dirs],
                "times": [str(t) for t in b.times],
                "wt": list(cg.weights[b]),
                "deg": (cg.labels or {}).get(b, {}).get("deg"),
            }
        )
    arrows = [{"src": idx[s], "i": i, "dst": idx[t]} for (s, i), t in sorted(cg.arrows.items(), key=lambda kv: (idx[kv[0][0]], kv[0][1]))]
    return json.dumps({"lambda": list(lam), "nodes": nodes, "arrows": arrows}, indent=2)


_DOT_COLORS = ("black", "red", "blue", "darkgreen", "orange", "purple", "brown", "gray", "cyan")


def crystal_to_dot(cg: CrystalGraph) -> str:
    idx = {b: n for n, b in enumerate(cg.nodes)}
    lines = ["digraph crystal {"]
    for b in cg.nodes:
        lines.append(f'  n{idx[b]} [label="{b!r}"];')
    for (s, i), t in sorted(cg.arrows.items(), key=lambda kv: (idx[kv[0][0]], kv[0][1])):
        lines.append(f'  n{idx[s]} -> n{idx[t]} [label="{i}", color={_DOT_COLORS[i % len(_DOT_COLORS)]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# level-zero LS paths -------------------------------------------------------------
@dataclass(frozen=True)
class LSPathAff:
    dirs: tuple  # LevelZeroWeight, strictly decreasing
    times: tuple

    def __repr__(self):
        return f"({','.join(repr(d) for d in self.dirs)};{','.join(str(t) for t in self.times)})"


class AffineLSModel:
    """LS paths of shape ``lam`` whose direction degs lie in ``[0, window]``."""

    def __init__(self, rs: RootSystem, lam, window: int):
        self.rs = rs
        self.lam = tuple(lam)
        self.poset = LevelZeroPoset(rs, lam)
        if window < self.poset.margin:
            raise ResourceError(f"window {window} is below the margin {self.poset.margin}; use a larger window")
        self.window = window
        self._down = None

    def down_covers(self) -> dict:
        """``nu -> [(beta, mu)]`` for covers ``mu < nu`` inside the window."""
        if self._down is None:
            down = {}
            for mu in self.poset.nodes(0, self.window):
                for beta, nu in self.poset.covers_by_theorem(mu):
                    if nu.deg >= 0:
                        down.setdefault(nu, []).append((beta, mu))
            self._down = down
        return self._down

    def sigma_chain_targets(self, nu: LevelZeroWeight, sigma: Fraction) -> set:
        """All ``mu < nu`` joined to ``nu`` by a sigma-chain of covers."""
        down = self.down_covers()
        seen = set()
        stack = [nu]
        while stack:
            xi = stack.pop()
            for beta, mu in down.get(xi, ()):
                if (sigma * self.poset.pair(beta.alpha, xi)).denominator != 1:
                    continue
                if mu.deg > self.window:
                    raise ResourceError(f"a {sigma}-chain from {nu} leaves the window {self.window}")
                if mu not in seen:
                    seen.add(mu)
                    stack.append(mu)
        return seen

    def enumerate(self) -> list:
        times = candidate_times(self.rs, self.lam)
        out = []
        cap = _budget()

        def extend(dirs, ts):
            if len(out) > cap:
                raise ResourceError(f"windowed B({self.lam}) exceeds the budget {cap}")
            out.append(LSPathAff(tuple(dirs), tuple(ts) + (Fraction(1),)))
            for sigma in times:
                if sigma <= ts[-1]:
                    continue
                for mu in sorted(self.sigma_chain_targets(dirs[-1], sigma)):
                    extend(dirs + [mu], ts + [sigma])

        for v in self.poset.graph.vertices:
            extend([LevelZeroWeight(v, 0)], [Fraction(0)])
        return out

    def root_e(self, pi: LSPathAff, i: int):
        return self._apply(pi, i, True)

    def root_f(self, pi: LSPathAff, i: int):
        return self._apply(pi, i, False)

    def _apply(self, pi, i, raising):
        rs = self.rs
        _check_color(rs, i)
        cv = _coroot_of_color(rs, i)
        slopes = [pairing(cv, self.poset.cl(d)) for d in pi.dirs]
        beta = AffineRoot(tuple(-c for c in rs.theta_root), 1) if i == 0 else AffineRoot(rs.simple_root(i - 1), 0)
        res = root_operator(pi.dirs, pi.times, slopes, lambda d: self.poset.reflect(d, beta), raising)
        if res is None:
            return None
        d, t = canonical(*res)
        return LSPathAff(d, t)


def cl_project(pi: LSPathAff) -> QLSPath:
    return make_path([d.coset for d in pi.dirs], pi.times)


def enumerate_ls_aff(rs: RootSystem, lam, window: int) -> list:
    return AffineLSModel(rs, lam, window).enumerate()
