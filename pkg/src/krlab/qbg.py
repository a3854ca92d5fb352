"""The parabolic quantum Bruhat graph QB(W^J).

Vertices are the minimum-length coset representatives ``W^J``.  For each
vertex ``w`` and each positive root ``alpha`` outside ``Phi_J`` there is an
edge ``w -> floor(w r_alpha)`` when either

* (Bruhat) ``l(w r_alpha) = l(w) + 1``, or
* (quantum) ``l(floor(w r_alpha)) = l(w) + 1 - <alpha^vee, 2rho - 2rho_J>``.

Edges are stored with the label as a positive-root index.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvariantViolation, ResourceError, UsageError
from .rootdata import RootSystem, pairing, two_rho_J
from .weyl import (
    WeylElt,
    budget,
    enumerate_quotient,
    floor,
    multiply,
    reflection,
)

BRUHAT = "bruhat"
QUANTUM = "quantum"
DEFAULT_VERTEX_BUDGET = 100_000


@dataclass(frozen=True)
class QbgEdge:
    source: WeylElt
    target: WeylElt
    label: int  # positive-root index
    kind: str

    @property
    def is_quantum(self) -> bool:
        return self.kind == QUANTUM


@dataclass(eq=False)
class QbgGraph:
    rs: RootSystem
    J: frozenset
    vertices: tuple
    edges: list
    out: dict = field(repr=False)
    _paths: dict = field(default_factory=dict, repr=False)

    def edge(self, source: WeylElt, label: int):
        for e in self.out[source]:
            if e.label == label:
                return e
        return None

    def __contains__(self, w):
        return w in self.out


def edge_conditions(rs: RootSystem, J, w: WeylElt, k: int, two_rho_diff=None) -> set:
    """Which of the two edge conditions hold for the pair ``(w, beta_k)``."""
    if two_rho_diff is None:
        two_rho_diff = _two_rho_diff(rs, J)
    v = multiply(w, reflection(rs, k))
    kinds = set()
    if v.length == w.length + 1:
        kinds.add(BRUHAT)
    if floor(v, J).length == w.length + 1 - pairing(rs.coroots[k], two_rho_diff):
        kinds.add(QUANTUM)
    return kinds


def _two_rho_diff(rs, J):
    return tuple(2 - c for c in two_rho_J(rs, J))


def candidate_labels(rs: RootSystem, J) -> list:
    return [k for k in range(len(rs)) if not rs.in_parabolic(k, J)]


def build_pqbg(rs: RootSystem, J=frozenset(), cap: int | None = None) -> QbgGraph:
    J = frozenset(J)
    if not J <= frozenset(rs.nodes):
        raise UsageError(f"J={sorted(J)} is not a node subset of {rs.cartan_type}")
    cap = budget(DEFAULT_VERTEX_BUDGET) if cap is None else cap
    verts = enumerate_quotient(rs, J)
    if len(verts) > cap:
        raise ResourceError(f"QB(W^J) for {rs.cartan_type}, J={sorted(j + 1 for j in J)} has {len(verts)} vertices, over the budget {cap}")
    diff = _two_rho_diff(rs, J)
    labels = candidate_labels(rs, J)
    edges, out = [], {}
    for w in verts:
        out[w] = []
        for k in labels:
            kinds = edge_conditions(rs, J, w, k, diff)
            if not kinds:
                continue
            if len(kinds) == 2:
                raise InvariantViolation(f"pair ({w}, root {k}) satisfies both edge conditions", "PQBG edge dichotomy")
            v = multiply(w, reflection(rs, k))
            kind = kinds.pop()
            if kind == BRUHAT and floor(v, J) != v:
                raise InvariantViolation(f"Bruhat edge {w} -> {v} leaves W^J", "PQBG Bruhat edge")
            e = QbgEdge(w, floor(v, J), k, kind)
            edges.append(e)
            out[w].append(e)
    return QbgGraph(rs, J, verts, edges, out)


def _bfs(g: QbgGraph, start: WeylElt, edge_ok=None):
    dist = {start: 0}
    parent = {start: None}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for e in g.out[u]:
            if edge_ok is not None and not edge_ok(e):
                continue
            if e.target not in dist:
                dist[e.target] = dist[u] + 1
                parent[e.target] = e
                queue.append(e.target)
    return dist, parent


def reachable(g: QbgGraph, start: WeylElt, edge_ok=None) -> set:
    return set(_bfs(g, start, edge_ok)[0])


def is_strongly_connected(g: QbgGraph) -> bool:
    if not g.vertices:
        return True
    root = g.vertices[0]
    if len(reachable(g, root)) != len(g.vertices):
        return False
    rev = {v: [] for v in g.vertices}
    for e in g.edges:
        rev[e.target].append(e.source)
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in rev[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return len(seen) == len(g.vertices)


def shortest_path(g: QbgGraph, y: WeylElt, x: WeylElt) -> list:
    """A shortest directed path from ``y`` to ``x`` (list of edges); BFS in the
    fixed edge order, so the choice is deterministic."""
    key = (y, x)
    if key in g._paths:
        return g._paths[key]
    dist, parent = _bfs(g, y)
    if x not in dist:
        raise InvariantViolation(f"{x} unreachable from {y}", "QB(W^J) strong connectivity")
    path = []
    v = x
    while parent[v] is not None:
        path.append(parent[v])
        v = parent[v].source
    path.reverse()
    g._paths[key] = path
    return path


def all_shortest_paths(g: QbgGraph, y: WeylElt, x: WeylElt) -> list:
    dist, _ = _bfs(g, y)
    if x not in dist:
        raise InvariantViolation(f"{x} unreachable from {y}", "QB(W^J) strong connectivity")
    out = []

    def extend(u, acc):
        if u == x:
            out.append(list(acc))
            return
        for e in g.out[u]:
            if dist.get(e.target) == dist[u] + 1 and dist[e.target] <= dist[x]:
                acc.append(e)
                extend(e.target, acc)
                acc.pop()

    extend(y, [])
    return [p for p in out if len(p) == dist[x]]


def path_weight(rs: RootSystem, path: Sequence[QbgEdge]) -> tuple:
    """Sum of label coroots over the quantum (down) edges of ``path``."""
    total = [0] * rs.rank
    for e in path:
        if e.is_quantum:
            total = [t + c for t, c in zip(total, rs.coroots[e.label])]
    return tuple(total)


def wt_pairing(g: QbgGraph, y: WeylElt, x: WeylElt, lam: Sequence[int], verify: bool = False) -> int:
    """``<wt(d), lam>`` for a shortest path ``d`` from ``y`` to ``x``."""
    if g.rs.stabilizer_nodes(lam) != g.J or not g.rs.dominant(lam):
        raise UsageError(f"weight {tuple(lam)} is not dominant with stabilizer J={sorted(g.J)}")
    val = pairing(path_weight(g.rs, shortest_path(g, y, x)), lam)
    if verify:
        vals = {pairing(path_weight(g.rs, p), lam) for p in all_shortest_paths(g, y, x)}
        if vals != {val}:
            raise InvariantViolation(
                f"shortest paths {y} -> {x} give pairings {sorted(vals)}", "wt(d) path independence"
            )
    return val


def sigma_reachable(g: QbgGraph, y: WeylElt, sigma: Fraction, lam: Sequence[int]) -> set:
    """Vertices reachable from ``y`` by edges whose labels satisfy
    ``sigma * <beta^vee, lam> in Z``."""
    rs = g.rs

    def ok(e):
        return (sigma * pairing(rs.coroots[e.label], lam)).denominator == 1

    return reachable(g, y, ok)


# export ---------------------------------------------------------------------
def word_label(w: WeylElt) -> list:
    return [i + 1 for i in w.word]


def to_json_dict(g: QbgGraph) -> dict:
    ct = g.rs.cartan_type
    return {
        "type": ct.family,
        "rank": ct.rank,
        "J": sorted(j + 1 for j in g.J),
        "vertices": [word_label(v) for v in g.vertices],
        "edges": [
            {
                "src": word_label(e.source),
                "dst": word_label(e.target),
                "label_root_coords": list(g.rs.positive_roots[e.label]),
                "kind": e.kind,
            }
            for e in g.edges
        ],
    }


def to_json(g: QbgGraph) -> str:
    return json.dumps(to_json_dict(g), indent=2)


def to_dot(g: QbgGraph) -> str:
    lines = [f'digraph "QB({g.rs.cartan_type}, J={sorted(j + 1 for j in g.J)})" {{']
    for v in g.vertices:
        lines.append(f'  "{v!r}";')
    for e in g.edges:
        root = ",".join(map(str, g.rs.positive_roots[e.label]))
        style = ", style=dashed" if e.is_quantum else ""
        lines.append(f'  "{e.source!r}" -> "{e.target!r}" [label="{root}", kind={e.kind}{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
