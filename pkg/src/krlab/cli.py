"""Command-line front end.

Exit codes: 0 success, 2 verification failure, 64 bad usage, 75 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import affine, alcove, charpoly, qbg, qls, verify
from .errors import ConfigurationError, PreconditionError, ResourceError, UsageError
from .rootdata import CartanType, build_root_system
from .weyl import from_word

EXIT_OK = 0
EXIT_VERIFY = 2
EXIT_USAGE = 64
EXIT_BUDGET = 75

COMMANDS = ("pqbg", "qls", "alcove", "macdonald", "lzposet", "verify")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="krlab", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--type", required=True, help="Cartan family A-G")
    p.add_argument("--rank", required=True, type=int)
    p.add_argument("--weight", help="comma-separated fundamental-weight coordinates")
    p.add_argument("--J", dest="J", help="comma-separated 1-based nodes (overrides the stabilizer)")
    p.add_argument("--w", dest="w", help="comma-separated 1-based reduced word (nonsymmetric E)")
    p.add_argument("--window", type=int)
    p.add_argument("--format", choices=("dot", "json", "text"), default="text")
    p.add_argument("--suite", default="all", help="suite name or 'all'")
    return p


def _ints(text, what):
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None


def _weight(args, rs, required=True):
    lam = _ints(args.weight, "weight")
    if not lam:
        if required:
            raise UsageError("--weight is required for this command")
        return None
    if len(lam) != rs.rank or any(c < 0 for c in lam):
        raise UsageError(f"--weight needs {rs.rank} nonnegative coordinates, got {list(lam)}")
    return lam


def _J(args, rs, lam):
    if args.J is not None:
        nodes = _ints(args.J, "J")
        if any(not 1 <= j <= rs.rank for j in nodes):
            raise UsageError(f"--J nodes must lie in 1..{rs.rank}")
        return frozenset(j - 1 for j in nodes)
    return rs.stabilizer_nodes(lam) if lam is not None else frozenset()


def _word(args, rs):
    word = _ints(args.w, "w")
    if any(not 1 <= i <= rs.rank for i in word):
        raise UsageError(f"--w letters must lie in 1..{rs.rank}")
    w = from_word(rs, [i - 1 for i in word])
    if w.length != len(word):
        raise UsageError(f"--w {list(word)} is not a reduced word")
    return w


def _pqbg_text(g) -> str:
    lines = [f"QB(W^J) {g.rs.cartan_type} J={sorted(j + 1 for j in g.J)}: {len(g.vertices)} vertices, {len(g.edges)} edges"]
    for e in g.edges:
        lines.append(f"{e.source!r} -> {e.target!r} root={list(g.rs.positive_roots[e.label])} {e.kind}")
    return "\n".join(lines) + "\n"


def _cmd_pqbg(args, rs, out):
    lam = _weight(args, rs, required=False)
    g = qbg.build_pqbg(rs, _J(args, rs, lam))
    if args.format == "dot":
        out.write(qbg.to_dot(g))
    elif args.format == "json":
        out.write(qbg.to_json(g) + "\n")
    else:
        out.write(_pqbg_text(g))
    return EXIT_OK


def _cmd_qls(args, rs, out):
    lam = _weight(args, rs)
    cg = qls.crystal_graph(rs, lam)
    if args.format == "dot":
        out.write(qls.crystal_to_dot(cg))
    elif args.format == "json":
        out.write(qls.crystal_to_json(cg, lam) + "\n")
    else:
        for eta in cg.nodes:
            out.write(f"{eta!r} wt={list(cg.weights[eta])} Deg={cg.labels[eta]['deg']}\n")
    return EXIT_OK


def _cmd_alcove(args, rs, out):
    lam = _weight(args, rs)
    chain = alcove.build_lambda_chain(rs, lam)
    subsets = alcove.enumerate_admissible(chain)
    if args.format == "json":
        out.write(alcove.to_json(chain, subsets) + "\n")
        return EXIT_OK
    if args.format == "dot":
        raise UsageError("alcove supports --format json|text")
    out.write("chain: " + " ".join(f"({list(rs.positive_roots[e.root])},k={e.k},l={e.level})" for e in chain.entries) + "\n")
    for A in subsets:
        out.write(
            f"{A!r} kappa={A.kappa!r} downs={[j + 1 for j in A.downs]} level={alcove.level(A, chain)} wt={list(alcove.weight(A, chain))}\n"
        )
    return EXIT_OK


def _cmd_macdonald(args, rs, out):
    lam = _weight(args, rs)
    if args.w is not None:
        ch = charpoly.macdonald_e(rs, lam, _word(args, rs))
    else:
        ch = charpoly.macdonald_p(rs, lam)
    if args.format == "json":
        out.write(ch.to_json() + "\n")
    elif args.format == "text":
        out.write(ch.to_text())
    else:
        raise UsageError("macdonald supports --format json|text")
    return EXIT_OK


def _cmd_lzposet(args, rs, out):
    lam = _weight(args, rs)
    P = affine.LevelZeroPoset(rs, lam)
    window = P.margin if args.window is None else args.window
    if window < 0:
        raise UsageError("--window must be nonnegative")
    doc = affine.poset_to_json(P, window)
    if args.format == "json":
        out.write(doc + "\n")
    elif args.format == "text":
        data = json.loads(doc)
        out.write(f"level-zero poset lambda={data['lambda']} window={window}: {len(data['nodes'])} nodes, {len(data['covers'])} covers\n")
        for c in data["covers"]:
            s, d, lab = c["src"], c["dst"], c["label"]
            out.write(f"{s['coset']}@{s['deg']} < {d['coset']}@{d['deg']} by {lab['root']}+{lab['n']}d\n")
    else:
        raise UsageError("lzposet supports --format json|text")
    return EXIT_OK


def _cmd_verify(args, rs, out):
    lam = _weight(args, rs)
    names = verify.SUITES if args.suite == "all" else (args.suite,)
    if any(n not in verify.SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(verify.SUITES)} or all")
    J = _J(args, rs, lam) if args.J is not None else None
    failed = None
    for name in names:
        for res in verify.run_suite(name, rs, lam, J=J, window=args.window):
            out.write(res.summary() + "\n")
            if not res.ok and failed is None:
                failed = res
    if failed is not None:
        out.write(f"counterexample ({failed.context}): {failed.failures[0]}\n")
        return EXIT_VERIFY
    return EXIT_OK


_HANDLERS = {
    "pqbg": _cmd_pqbg,
    "qls": _cmd_qls,
    "alcove": _cmd_alcove,
    "macdonald": _cmd_macdonald,
    "lzposet": _cmd_lzposet,
    "verify": _cmd_verify,
}


def run(argv, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        try:
            rs = build_root_system(CartanType(args.type.upper(), args.rank))
        except ConfigurationError as exc:
            raise UsageError(str(exc)) from None
        return _HANDLERS[args.command](args, rs, out)
    except (UsageError, PreconditionError) as exc:
        err.write(f"error: {exc}\n{parser.format_usage()}")
        return EXIT_USAGE
    except ResourceError as exc:
        err.write(f"budget exceeded: {exc}\n")
        return EXIT_BUDGET


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
