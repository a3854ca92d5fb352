"""Exhaustive verification suites.  Each returns a ``SuiteResult`` whose
failures name the claim they violate."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from . import affine, alcove, charpoly, qls
from .errors import InvariantViolation
from .qbg import BRUHAT, QUANTUM, QbgGraph, build_pqbg, candidate_labels
from .rootdata import RootSystem, pairing
from .weyl import enumerate_group, floor, invert, longest_element, multiply, reflection, simple_reflection

SUITES = ("diamond", "lift", "lzposet", "crystal", "lsproj", "bijection", "character")


@dataclass
class SuiteResult:
    name: str
    context: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, anchor: str, detail: str) -> None:
        self.failures.append(f"{anchor}: {detail}")

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name} [{self.context}] checked={self.checked} failures={len(self.failures)}"


def _ctx(rs, J=None, lam=None):
    parts = [str(rs.cartan_type)]
    if lam is not None:
        parts.append(f"lambda={list(lam)}")
    if J is not None:
        parts.append(f"J={sorted(j + 1 for j in J)}")
    return " ".join(parts)


# diamond ------------------------------------------------------------------------
def _has(g: QbgGraph, src, root, kind, tgt) -> bool:
    rs = g.rs
    if src not in g or not rs.is_root(root) or not rs.is_positive(root):
        return False
    k = rs.root_index(root)
    if rs.in_parabolic(k, g.J):
        return False
    e = g.edge(src, k)
    return e is not None and e.kind == kind and e.target == tgt


def _neg(r):
    return tuple(-c for c in r)


def suite_diamond(rs: RootSystem, J, g: QbgGraph | None = None) -> SuiteResult:
    """Both diamond cases in both directions.  The top-to-bottom direction is
    not required when the two middle vertices coincide (degenerate diamond).
    ``g`` may be passed to check a modified graph."""
    J = frozenset(J)
    g = build_pqbg(rs, J) if g is None else g
    res = SuiteResult("diamond", _ctx(rs, J))
    th = rs.theta_root
    rt = reflection(rs, rs.theta)
    for w in g.vertices:
        winv = invert(w)
        for i in rs.nodes:
            a = rs.simple_root(i)
            ra = simple_reflection(rs, i)
            raw = floor(multiply(ra, w), J)
            for k in candidate_labels(rs, J):
                gam = rs.positive_roots[k]
                wg = floor(multiply(w, reflection(rs, k)), J)
                top = floor(multiply(ra, wg), J)
                for kind in (BRUHAT, QUANTUM):
                    if kind == BRUHAT and gam == winv.act_root(a):
                        continue
                    res.checked += 1
                    bottom = _has(g, w, winv.act_root(a), BRUHAT, raw) and _has(g, w, gam, kind, wg)
                    upper = _has(g, raw, gam, kind, top) and _has(g, wg, invert(wg).act_root(a), BRUHAT, top)
                    tag = f"w={w!r} alpha=alpha_{i + 1} gamma={gam} kind={kind}"
                    if bottom and not upper:
                        res.fail("diamond lemma, simple-root case: bottom edges do not imply top edges", tag)
                    if upper and not bottom and raw != wg:
                        res.fail("diamond lemma, simple-root case: top edges do not imply bottom edges", tag)
                    if bottom and multiply(ra, wg) != floor(multiply(multiply(ra, w), reflection(rs, k)), J):
                        res.fail("diamond lemma, simple-root case: r_alpha floor(w r_gamma) != floor(r_alpha w r_gamma)", tag)
        rtw = multiply(rt, w)
        frtw = floor(rtw, J)
        z = multiply(invert(frtw), rtw)
        for k in candidate_labels(rs, J):
            gam = rs.positive_roots[k]
            wg = floor(multiply(w, reflection(rs, k)), J)
            top = floor(multiply(rtw, reflection(rs, k)), J)
            p = rs.root_pair(gam, winv.act_root(th))
            for kind in (BRUHAT, QUANTUM):
                if kind == QUANTUM and gam == _neg(winv.act_root(th)):
                    continue
                if kind == BRUHAT:
                    dashed = QUANTUM if p else BRUHAT
                else:
                    dashed = BRUHAT if p else QUANTUM
                res.checked += 1
                bottom = _has(g, w, _neg(winv.act_root(th)), QUANTUM, frtw) and _has(g, w, gam, kind, wg)
                upper = _has(g, frtw, z.act_root(gam), dashed, top) and _has(
                    g, wg, _neg(invert(wg).act_root(th)), QUANTUM, top
                )
                tag = f"w={w!r} gamma={gam} kind={kind}"
                if bottom and not upper:
                    res.fail("diamond lemma, theta case: bottom edges do not imply top edges", tag)
                if upper and not bottom and frtw != wg:
                    res.fail("diamond lemma, theta case: top edges do not imply bottom edges", tag)
    return res


# lift ---------------------------------------------------------------------------
def lift_coweights(rs: RootSystem, J) -> list:
    """Three J-adjusted superantidominant coweights; the third has nontrivial
    ``z`` whenever one exists nearby."""
    base = affine.adjusted_superantidominant(rs, J, 1)
    mus = [base, affine.adjusted_superantidominant(rs, J, 2)]
    twisted = [m for m in affine.adjusted_variants(rs, J, base) if not affine.adjusted_z(rs, J, m).is_identity()]
    mus.append(twisted[0] if twisted else affine.adjusted_superantidominant(rs, J, 3))
    return mus


def suite_lift(rs: RootSystem, J, mus=None, exhaustive_covers: bool = True) -> SuiteResult:
    J = frozenset(J)
    g = build_pqbg(rs, J)
    mus = lift_coweights(rs, J) if mus is None else mus
    res = SuiteResult("lift", _ctx(rs, J))
    for mu in mus:
        for e in g.edges:
            res.checked += 1
            tag = f"mu={list(mu)} edge {e.source!r} -{rs.positive_roots[e.label]}-> {e.target!r}"
            try:
                x, y, _ = affine.lift_edge(g, e, mu)
                back = affine.project_cover(g, y, x)
            except InvariantViolation as exc:
                res.fail(exc.anchor or "edge lift", f"{tag}: {exc}")
                continue
            if back != e:
                res.fail("edge lift round trip", f"{tag} came back as {back}")
        if not exhaustive_covers:
            continue
        z = affine.adjusted_z(rs, J, mu)
        bound = max(abs(pairing(mu, wt)) for wt in rs.positive_roots_wt) + 2
        for w in g.vertices:
            x = affine.AffineWeylElt(multiply(w, z), tuple(mu))
            for y in affine.covers_below(x, J, bound):
                _, zy, muy = affine.decompose(y, J)
                if not affine.is_superantidominant(rs, J, muy) or affine.adjusted_z(rs, J, muy) != zy:
                    continue  # y outside the stable region
                res.checked += 1
                gamma = affine.connecting_root(x, y)
                chi = gamma.n - pairing(mu, rs.root_weight(gamma.alpha))
                if chi not in (0, 1):
                    res.fail("cover projection: chi not in {0,1}", f"mu={list(mu)} x={x} y={y} chi={chi}")
                    continue
                try:
                    affine.project_cover(g, y, x)
                except InvariantViolation as exc:
                    res.fail(exc.anchor or "cover projection", f"mu={list(mu)} x={x} y={y}: {exc}")
    return res


# level-zero poset ---------------------------------------------------------------
def suite_lzposet(rs: RootSystem, lam, window: int | None = None) -> SuiteResult:
    P = affine.LevelZeroPoset(rs, lam)
    window = P.margin if window is None else window
    res = SuiteResult("lzposet", _ctx(rs, lam=lam) + f" window={window}")
    degs = [0] if P.step == 0 else [0, -P.step]
    for d in degs:
        for v in P.graph.vertices:
            mu = affine.LevelZeroWeight(v, d)
            res.checked += 1
            a = P.covers_by_closure(mu, d - window)
            try:
                b = P.covers_by_theorem(mu)
            except InvariantViolation as exc:
                res.fail(exc.anchor, str(exc))
                continue
            if a != b:
                res.fail("level-zero covers", f"mu={mu}: closure {a} vs construction {b}")
    return res


# crystal ------------------------------------------------------------------------
def fundamental_factors(lam) -> list:
    out = []
    for i, c in enumerate(lam):
        out.extend([tuple(int(j == i) for j in range(len(lam)))] * c)
    return out


def suite_crystal(rs: RootSystem, lam) -> SuiteResult:
    lam = tuple(lam)
    res = SuiteResult("crystal", _ctx(rs, lam=lam))
    g = qls.pqbg_for(rs, lam)
    cg = qls.crystal_graph(rs, lam)
    nodes = set(cg.nodes)
    for eta in cg.nodes:
        w0 = cg.weights[eta]
        if not qls.is_qls(g, eta, lam):
            res.fail("QLS path condition", f"{eta}")
        d = qls.deg(eta, g, lam)
        if d > 0:
            res.fail("Deg is nonpositive", f"{eta} has Deg {d}")
        for i in cg.colors:
            res.checked += 1
            at = qls.alpha_tilde(rs, i)
            eps, phi = qls.epsilon_phi(rs, eta, i, lam)
            cv = qls._coroot_of_color(rs, i)
            if eps.denominator != 1 or phi.denominator != 1 or eps < 0 or phi < 0:
                res.fail("string integrality", f"{eta} color {i}: eps={eps} phi={phi}")
            if phi - eps != pairing(cv, w0):
                res.fail("string integrality", f"{eta} color {i}: phi - eps != <alpha_i^vee, wt>")
            e = qls.root_e(rs, eta, i, lam)
            if e is not None:
                if e not in nodes:
                    res.fail("closure under root operators", f"e_{i}{eta} = {e}")
                elif qls.root_f(rs, e, i, lam) != eta:
                    res.fail("root operator inversion", f"f_{i} e_{i} {eta} != {eta}")
                if cg.weights.get(e) != tuple(a + b for a, b in zip(w0, at)):
                    res.fail("weight shift", f"wt(e_{i}{eta})")
            f = cg.f(eta, i)
            if f is not None:
                if qls.root_e(rs, f, i, lam) != eta:
                    res.fail("root operator inversion", f"e_{i} f_{i} {eta} != {eta}")
                if cg.weights[f] != tuple(a - b for a, b in zip(w0, at)):
                    res.fail("weight shift", f"wt(f_{i}{eta})")
            # regularity proxy: e-string terminates within eps steps
            cur, n = eta, 0
            while cur is not None and n <= eps + 1:
                cur = qls.root_e(rs, cur, i, lam)
                n += 1
            if n != eps + 1:
                res.fail("regular crystal", f"{eta} color {i}: e-string length {n - 1} != eps {eps}")
    parts = fundamental_factors(lam)
    if len(parts) > 1:
        res.checked += 1
        t = qls.crystal_graph(rs, parts[0])
        for p in parts[1:]:
            t = qls.tensor(t, qls.crystal_graph(rs, p))
        if not qls.crystals_isomorphic(cg, t):
            res.fail("tensor product decomposition", f"QLS({list(lam)}) is not isomorphic to the tensor product of {parts}")
    return res


# lsproj -------------------------------------------------------------------------
def suite_lsproj(rs: RootSystem, lam, window: int | None = None) -> SuiteResult:
    lam = tuple(lam)
    P = affine.LevelZeroPoset(rs, lam)
    window = P.margin + 1 if window is None else window
    model = qls.AffineLSModel(rs, lam, window)
    res = SuiteResult("lsproj", _ctx(rs, lam=lam) + f" window={window}")
    paths = model.enumerate()
    image = {qls.cl_project(p) for p in paths}
    target = set(qls.enumerate_qls(rs, lam))
    res.checked += 1
    if image != target:
        res.fail("cl(B(lambda)) = QLS(lambda)", f"missing {sorted(target - image)[:3]} extra {sorted(image - target)[:3]}")
    for p in paths:
        c = qls.cl_project(p)
        for i in range(rs.rank + 1):
            for name, op, cop in (("e", model.root_e, qls.root_e), ("f", model.root_f, qls.root_f)):
                res.checked += 1
                a = op(p, i)
                b = cop(rs, c, i, lam)
                if (a is None) != (b is None) or (a is not None and qls.cl_project(a) != b):
                    res.fail("root operators commute with cl", f"{name}_{i} on {p}")
    return res


# bijection ----------------------------------------------------------------------
def suite_bijection(rs: RootSystem, lam) -> SuiteResult:
    lam = tuple(lam)
    res = SuiteResult("bijection", _ctx(rs, lam=lam))
    chain = alcove.build_lambda_chain(rs, lam)
    subsets = alcove.enumerate_admissible(chain)
    g = qls.pqbg_for(rs, lam)
    target = qls.enumerate_qls(rs, lam)
    images = []
    for A in subsets:
        res.checked += 1
        try:
            eta = alcove.xi(A, chain, g)
        except InvariantViolation as exc:
            res.fail(exc.anchor, str(exc))
            continue
        images.append((A, eta))
        if alcove.weight(A, chain) != qls.wt(eta, lam):
            res.fail("forgetful map preserves weights", f"{A} -> {eta}")
    if len({eta for _, eta in images}) != len(images) or {eta for _, eta in images} != set(target):
        res.fail("forgetful map is a bijection", f"{len(subsets)} subsets, {len(target)} QLS paths")
    lhs = Counter((alcove.level(A, chain), alcove.weight(A, chain)) for A in subsets)
    rhs = Counter((-qls.deg(eta, g, lam), qls.wt(eta, lam)) for eta in target)
    if lhs != rhs:
        res.fail("level matches -Deg", f"multisets differ: {sorted((lhs - rhs).items())[:3]}")
    for A, eta in images:
        if alcove.colevel(A, chain) != -qls.deg(eta, g, lam):
            res.fail("co-level matches -Deg under the forgetful map", f"{A} -> {eta}")
    # transported classical structure: highest-weight decompositions agree
    cg = qls.crystal_graph(rs, lam)
    inv = {eta: A for A, eta in images}
    hw_q = Counter(cg.weights[b] for b in cg.classical_highest())
    hw_a = Counter(alcove.weight(inv[b], chain) for b in cg.classical_highest() if b in inv)
    if hw_q != hw_a:
        res.fail("classical crystal isomorphism", "highest-weight decompositions differ")
    return res


def pointwise_level_mismatches(rs: RootSystem, lam) -> list:
    """Subsets whose ``level`` differs from ``-Deg`` of their image (informational)."""
    chain = alcove.build_lambda_chain(rs, lam)
    g = qls.pqbg_for(rs, lam)
    out = []
    for A in alcove.enumerate_admissible(chain):
        eta = alcove.xi(A, chain, g)
        if alcove.level(A, chain) != -qls.deg(eta, g, lam):
            out.append((A, eta))
    return out


# character ----------------------------------------------------------------------
def suite_character(rs: RootSystem, lam) -> SuiteResult:
    lam = tuple(lam)
    res = SuiteResult("character", _ctx(rs, lam=lam))
    P = charpoly.macdonald_p(rs, lam)
    X = charpoly.qls_graded_character(rs, lam)
    res.checked += 4
    if P != X:
        res.fail("P = X", f"P={P.to_text()!r} X={X.to_text()!r}")
    if P.at_q(0) != charpoly.weyl_character(rs, lam):
        res.fail("P at q=0 is the Weyl character", P.at_q(0).to_text())
    if not P.is_w_invariant(rs):
        res.fail("P is W-invariant", P.to_text())
    chain = alcove.build_lambda_chain(rs, lam)
    n = len(alcove.enumerate_admissible(chain))
    if not P.at_q(1).total() == n == len(qls.enumerate_qls(rs, lam)):
        res.fail("dimension count", f"P(1,1)={P.at_q(1).total()} |A|={n}")
    if charpoly.macdonald_e(rs, lam, longest_element(rs), chain) != P:
        res.fail("E at w_0 equals P", "")
    group = enumerate_group(rs)
    if len(group) <= 48:
        es = {w: charpoly.macdonald_e(rs, lam, w, chain) for w in group}
        for w in group:
            for i in rs.nodes:
                v = multiply(w, simple_reflection(rs, i))
                if v.length == w.length + 1:
                    res.checked += 1
                    if not _dominated(es[w], es[v]):
                        res.fail("E monotone in Bruhat order", f"E_{w!r} not below E_{v!r}")
    return res


def _dominated(a, b) -> bool:
    for w, poly in a.terms.items():
        other = b.terms.get(w, {})
        if any(other.get(q, 0) < c for q, c in poly.items()):
            return False
    return True


def run_suite(name: str, rs: RootSystem, lam, J=None, window=None) -> list:
    """Run one suite for a single ``(rs, lam)``; diamond and lift also cover
    ``J = empty`` and the stabilizer of ``lam``."""
    J = rs.stabilizer_nodes(lam) if J is None else frozenset(J)
    if name == "diamond":
        return [suite_diamond(rs, j) for j in sorted({frozenset(), J}, key=sorted)]
    if name == "lift":
        return [suite_lift(rs, j) for j in sorted({frozenset(), J}, key=sorted)]
    if name == "lzposet":
        return [suite_lzposet(rs, lam, window)]
    if name == "crystal":
        return [suite_crystal(rs, lam)]
    if name == "lsproj":
        return [suite_lsproj(rs, lam, window)]
    if name == "bijection":
        return [suite_bijection(rs, lam)]
    if name == "character":
        return [suite_character(rs, lam)]
    raise KeyError(name)
