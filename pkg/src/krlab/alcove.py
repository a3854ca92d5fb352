"""Quantum alcove model: the lex lambda-chain, admissible subsets and the
forgetful map to quantum LS paths."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvariantViolation, ResourceError, UsageError
from .qbg import QUANTUM, QbgGraph, build_pqbg, word_label
from .qls import QLSPath, is_qls, make_path, pqbg_for
from .rootdata import RootSystem, pairing
from .weyl import WeylElt, act_weight, budget, floor, identity, multiply, reflection

DEFAULT_SUBSET_BUDGET = 500_000


@dataclass(frozen=True)
class ChainEntry:
    root: int  # positive-root index
    k: int
    level: int


@dataclass(frozen=True)
class LambdaChain:
    rs: RootSystem
    lam: tuple
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def time(self, j: int) -> Fraction:
        """Crossing time ``k_j / <beta_j^vee, lam>``."""
        e = self.entries[j]
        return Fraction(e.k, pairing(self.rs.coroots[e.root], self.lam))


def _lex_key(rs: RootSystem, lam, k: int, idx: int) -> tuple:
    # crossing time of the wall (beta, k) along a segment from a generic point
    # of the fundamental alcove to its translate by -lam, expanded in the
    # perturbation parameter: ties in k/l are broken by c_i/l lexicographically
    cv = rs.coroots[idx]
    l = pairing(cv, lam)
    return (Fraction(k, l),) + tuple(Fraction(c, l) for c in cv)


def build_lambda_chain(rs: RootSystem, lam) -> LambdaChain:
    lam = tuple(lam)
    if not rs.dominant(lam):
        raise UsageError(f"{lam} is not dominant")
    items = []
    for idx, cv in enumerate(rs.coroots):
        for k in range(pairing(cv, lam)):
            items.append((_lex_key(rs, lam, k, idx), idx, k))
    items.sort()
    keys = [it[0] for it in items]
    if len(set(keys)) != len(keys):
        raise InvariantViolation("perturbation left simultaneous crossings", "lambda-chain tie-break")
    entries = []
    for n, (_, idx, k) in enumerate(items):
        level = sum(1 for _, j, _ in items[n:] if j == idx)
        entries.append(ChainEntry(idx, k, level))
    chain = LambdaChain(rs, lam, tuple(entries))
    check_chain(chain)
    return chain


def check_chain(chain: LambdaChain) -> None:
    rs, lam = chain.rs, chain.lam
    pairs = [(e.root, e.k) for e in chain.entries]
    expected = {(idx, k) for idx, cv in enumerate(rs.coroots) for k in range(pairing(cv, lam))}
    if len(pairs) != len(expected) or set(pairs) != expected:
        raise InvariantViolation("chain does not cross each wall (beta, k) exactly once", "lambda-chain walls")
    for n, e in enumerate(chain.entries):
        if e.level != sum(1 for f in chain.entries[n:] if f.root == e.root):
            raise InvariantViolation(f"bad level at position {n + 1}", "lambda-chain levels")
        if e.level != pairing(rs.coroots[e.root], lam) - e.k:
            raise InvariantViolation(f"crossings of root {e.root} out of order", "lambda-chain order")


@dataclass(frozen=True)
class AdmissibleSubset:
    indices: tuple  # 0-based chain positions
    kappa: WeylElt
    downs: tuple  # subset of indices taken along quantum edges

    def __repr__(self):
        return "{" + ",".join(str(j + 1) for j in self.indices) + "}"


def enumerate_admissible(chain: LambdaChain, g: QbgGraph | None = None, cap: int | None = None) -> list:
    rs = chain.rs
    g = build_pqbg(rs, frozenset()) if g is None else g
    if g.J:
        raise UsageError("admissible subsets live in QB(W), i.e. J must be empty")
    cap = budget(DEFAULT_SUBSET_BUDGET) if cap is None else cap
    out = []

    def extend(start, w, idx, downs):
        if len(out) >= cap:
            raise ResourceError(f"admissible subsets of the {chain.lam}-chain exceed the budget {cap}")
        out.append(AdmissibleSubset(tuple(idx), w, tuple(downs)))
        for j in range(start, len(chain)):
            e = g.edge(w, chain.entries[j].root)
            if e is None:
                continue
            extend(j + 1, e.target, idx + [j], downs + ([j] if e.kind == QUANTUM else []))

    extend(0, identity(rs), [], [])
    return sorted(out, key=lambda a: a.indices)


def level(A: AdmissibleSubset, chain: LambdaChain) -> int:
    return sum(chain.entries[j].level for j in A.downs)


def colevel(A: AdmissibleSubset, chain: LambdaChain) -> int:
    """``sum_{j in J^-} k_j``; under ``xi`` this equals ``-Deg`` pointwise,
    while ``level`` only agrees with ``-Deg`` as a multiset."""
    return sum(chain.entries[j].k for j in A.downs)


def weight(A: AdmissibleSubset, chain: LambdaChain) -> tuple:
    """``-(rhat_{j1} ... rhat_{js})(-lam)`` with ``rhat_j(x) = r_j(x) - k_j beta_j``."""
    rs = chain.rs
    x = tuple(-c for c in chain.lam)
    for j in reversed(A.indices):
        e = chain.entries[j]
        x = act_weight(reflection(rs, e.root), x)
        x = tuple(a - e.k * b for a, b in zip(x, rs.positive_roots_wt[e.root]))
    return tuple(-c for c in x)


def walk(A: AdmissibleSubset, chain: LambdaChain) -> list:
    """``[(t_j, element after step j)]`` along the subset."""
    rs = chain.rs
    w = identity(rs)
    out = []
    for j in A.indices:
        w = multiply(w, reflection(rs, chain.entries[j].root))
        out.append((chain.time(j), w))
    return out


def xi(A: AdmissibleSubset, chain: LambdaChain, g: QbgGraph | None = None) -> QLSPath:
    """Forgetful map to QLS(lam).

    The walk is read backwards in time: the direction at path time ``s`` is
    the coset of the walk element at chain time ``1 - s``.
    """
    rs, lam = chain.rs, chain.lam
    J = rs.stabilizer_nodes(lam)
    steps = walk(A, chain)
    cuts = sorted({Fraction(0), Fraction(1)} | {1 - t for t, _ in steps if t > 0})
    dirs = []
    for a, b in zip(cuts, cuts[1:]):
        t = 1 - (a + b) / 2
        w = identity(rs)
        for tj, wj in steps:
            if tj <= t:
                w = wj
        dirs.append(floor(w, J))
    eta = make_path(dirs, cuts)
    g = pqbg_for(rs, lam) if g is None else g
    if not is_qls(g, eta, lam):
        raise InvariantViolation(f"xi{A} = {eta} is not a quantum LS path", "forgetful map lands in QLS")
    return eta


def to_json(chain: LambdaChain, subsets) -> str:
    rs = chain.rs
    doc = {
        "lambda": list(chain.lam),
        "chain": [{"root": list(rs.positive_roots[e.root]), "k": e.k, "level": e.level} for e in chain.entries],
        "subsets": [
            {
                "indices": [j + 1 for j in A.indices],
                "kappa_word": word_label(A.kappa),
                "downs": [j + 1 for j in A.downs],
                "level": level(A, chain),
                "wt": list(weight(A, chain)),
            }
            for A in subsets
        ],
    }
    return json.dumps(doc, indent=2)
