"""Graded characters: Macdonald polynomials at ``t = 0`` from admissible
subsets, the QLS graded character, and a Weyl-character oracle."""
from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from .alcove import build_lambda_chain, enumerate_admissible, level, weight
from .errors import InvariantViolation, UsageError
from .qls import deg, enumerate_qls, pqbg_for, wt
from .rootdata import RootSystem
from .weyl import WeylElt, act_weight, bruhat_leq, enumerate_group, sign


def term_order(w: tuple) -> tuple:
    """Graded-lex key on fundamental-weight coordinates."""
    return (sum(w), w)


@dataclass
class GradedCharacter:
    """``weight -> {q-exponent: coefficient}`` with no zero entries."""

    terms: dict = field(default_factory=dict)

    def add(self, w, a: int = 0, c: int = 1) -> None:
        w = tuple(w)
        poly = self.terms.setdefault(w, {})
        poly[a] = poly.get(a, 0) + c
        if poly[a] == 0:
            del poly[a]
        if not poly:
            del self.terms[w]

    def __add__(self, other):
        out = self.copy()
        for w, poly in other.terms.items():
            for a, c in poly.items():
                out.add(w, a, c)
        return out

    def __mul__(self, other):
        out = GradedCharacter()
        for w1, p1 in self.terms.items():
            for w2, p2 in other.terms.items():
                w = tuple(x + y for x, y in zip(w1, w2))
                for a1, c1 in p1.items():
                    for a2, c2 in p2.items():
                        out.add(w, a1 + a2, c1 * c2)
        return out

    def __eq__(self, other):
        return isinstance(other, GradedCharacter) and self.terms == other.terms

    def copy(self):
        return GradedCharacter({w: dict(p) for w, p in self.terms.items()})

    def at_q(self, q: int) -> "GradedCharacter":
        """Specialize ``q`` to an integer (``q = 0`` keeps only ``q^0``)."""
        out = GradedCharacter()
        for w, poly in self.terms.items():
            out.add(w, 0, sum(c * q**a for a, c in poly.items()))
        return out

    def total(self) -> int:
        return sum(c for poly in self.terms.values() for c in poly.values())

    def sorted_terms(self) -> list:
        """``(a, weight, coeff)`` sorted by q-degree, then graded-lex descending."""
        items = [(a, w, c) for w, poly in self.terms.items() for a, c in poly.items()]
        return sorted(items, key=lambda t: (t[0], -sum(t[1]), tuple(-x for x in t[1])))

    def to_text(self) -> str:
        lines = [f"{c} * q^{a} * x^[{','.join(map(str, w))}]" for a, w, c in self.sorted_terms()]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        return json.dumps([{"coeff": c, "q": a, "x": list(w)} for a, w, c in self.sorted_terms()], indent=2)

    def is_w_invariant(self, rs: RootSystem) -> bool:
        for i in rs.nodes:
            for w, poly in self.terms.items():
                s = tuple(x - w[i] * rs.cartan[j][i] for j, x in enumerate(w))
                if self.terms.get(s) != poly:
                    return False
        return True


def macdonald_p(rs: RootSystem, lam, chain=None) -> GradedCharacter:
    """``sum_J q^level(J) x^wt(J)`` over admissible subsets."""
    chain = build_lambda_chain(rs, lam) if chain is None else chain
    out = GradedCharacter()
    for A in enumerate_admissible(chain):
        out.add(weight(A, chain), level(A, chain))
    return out


def macdonald_e(rs: RootSystem, lam, w: WeylElt, chain=None) -> GradedCharacter:
    """Restriction of the admissible-subset sum to ``kappa(J) <= w``."""
    chain = build_lambda_chain(rs, lam) if chain is None else chain
    out = GradedCharacter()
    for A in enumerate_admissible(chain):
        if bruhat_leq(A.kappa, w):
            out.add(weight(A, chain), level(A, chain))
    return out


def qls_graded_character(rs: RootSystem, lam) -> GradedCharacter:
    g = pqbg_for(rs, lam)
    out = GradedCharacter()
    for eta in enumerate_qls(rs, lam):
        out.add(wt(eta, lam), -deg(eta, g, lam))
    return out


def _alternant(rs: RootSystem, mu) -> dict:
    out = defaultdict(int)
    for w in enumerate_group(rs):
        out[act_weight(w, mu)] += sign(w)
    return {k: v for k, v in out.items() if v}


def divide_exact(num: dict, den: dict) -> dict:
    """Exact quotient of Laurent polynomials ``{exponent: coeff}`` by long
    division in the graded-lex order."""
    if not den:
        raise UsageError("division by zero")
    lead_d = max(den, key=term_order)
    low = min(num, key=term_order) if num else None
    floor_q = None if low is None else tuple(a - b for a, b in zip(low, min(den, key=term_order)))
    rem = dict(num)
    quot = {}
    while rem:
        lead_r = max(rem, key=term_order)
        c, r = divmod(rem[lead_r], den[lead_d])
        m = tuple(a - b for a, b in zip(lead_r, lead_d))
        if r or term_order(m) < term_order(floor_q):
            raise InvariantViolation(f"inexact group-algebra division at {lead_r}", "Weyl character division")
        quot[m] = c
        for e, v in den.items():
            k = tuple(a + b for a, b in zip(m, e))
            rem[k] = rem.get(k, 0) - c * v
            if rem[k] == 0:
                del rem[k]
    return quot


def weyl_character(rs: RootSystem, lam) -> GradedCharacter:
    if not rs.dominant(lam):
        raise UsageError(f"{tuple(lam)} is not dominant")
    rho = rs.rho
    num = _alternant(rs, tuple(a + b for a, b in zip(lam, rho)))
    den = _alternant(rs, rho)
    out = GradedCharacter()
    for w, c in divide_exact(num, den).items():
        out.add(w, 0, c)
    return out
