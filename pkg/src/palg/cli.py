"""Command-line interface: ``palg <command> ...``.

Exit codes: 0 success, 1 check failure (or no embedding), 2 usage or
input error, 3 a size cap was exceeded.
"""
from __future__ import annotations

import argparse
import re
import sys

from . import checks
from .algebra import MAX_SIZE, FinitePAlgebra, make_bnalg, powerset_algebra, product, verify_p_algebra
from .duality import join_irreducibles, upset_algebra
from .encodings import SYMBOL, graph_encode, graph_isomorphism, make_N, recover_graph
from .errors import CapExceeded, PAlgError
from .io import quote_words, format_algebra, format_dot, format_poset, parse_algebra, parse_dot, parse_poset
from .logic import Evaluator, fo_recover_graph, parse_formula
from .search import find_embedding

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


class _Output:
    """Payload goes to -o or stdout; the summary goes to stdout only when the
    payload went to a file, otherwise to stderr."""

    def __init__(self, path):
        self.path = path

    def payload(self, text: str):
        if self.path and self.path != "-":
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)

    def note(self, text: str):
        stream = sys.stdout if self.path and self.path != "-" else sys.stderr
        stream.write(text + "\n")


def _load_algebra(path: str) -> FinitePAlgebra:
    return parse_algebra(_read(path))


_SPEC = re.compile(r"(bnalg|powerset)(\d+)")


def _named_algebra(spec: str) -> FinitePAlgebra:
    """``bnalgK``, ``powersetK``, ``N``, or a path to an algebra file."""
    m = _SPEC.fullmatch(spec)
    if m:
        k = int(m.group(2))
        return make_bnalg(k) if m.group(1) == "bnalg" else powerset_algebra(k)
    if spec == "N":
        return make_N()
    return _load_algebra(spec)


def _summary(a: FinitePAlgebra) -> str:
    return f"size: {a.size}\nboolean: {'yes' if a.is_boolean() else 'no'}"


# -- commands ----------------------------------------------------------------------

def cmd_build(args) -> int:
    out = _Output(args.output)
    kind, rest = args.kind, args.args
    if kind in ("bnalg", "powerset"):
        if len(rest) != 1 or not rest[0].isdigit():
            raise UsageError(f"build {kind} takes one non-negative integer")
        a = make_bnalg(int(rest[0])) if kind == "bnalg" else powerset_algebra(int(rest[0]))
    elif kind == "N":
        if rest:
            raise UsageError("build N takes no arguments")
        a = make_N()
    elif kind == "product":
        if not rest:
            raise UsageError("build product needs at least one factor")
        a = product([_named_algebra(s) for s in rest], args.max_size)
    elif kind == "upset":
        if len(rest) != 1:
            raise UsageError("build upset takes one poset file")
        a = upset_algebra(parse_poset(_read(rest[0])), args.max_size)
        a = FinitePAlgebra(a.leq, a.star, a.zero, a.one, labels=a.labels)
    else:
        raise UsageError(f"unknown algebra kind {kind!r}")
    if a.size > args.max_size:
        raise CapExceeded(f"algebra has {a.size} elements, cap is {args.max_size}")
    out.payload(format_algebra(a))
    out.note(_summary(a))
    return EXIT_OK


def cmd_dual(args) -> int:
    out = _Output(args.output)
    text = _read(args.input)
    header = next((ln.split("#")[0].strip() for ln in text.splitlines() if ln.split("#")[0].strip()), "")
    if header == "poset":
        a = upset_algebra(parse_poset(text), args.max_size)
        out.payload(format_algebra(FinitePAlgebra(a.leq, a.star, a.zero, a.one, labels=a.labels)))
        out.note(_summary(a))
    elif header == "algebra":
        a = parse_algebra(text)
        rep = verify_p_algebra(a)
        if not rep:
            raise UsageError(f"input is not a p-algebra: {rep}")
        ji = join_irreducibles(a)
        out.payload(format_poset(ji.poset))
        out.note(f"join-irreducibles: {ji.poset.size}")
    else:
        raise UsageError("input must start with 'algebra' or 'poset'")
    return EXIT_OK


def cmd_encode_graph(args) -> int:
    out = _Output(args.output)
    g = parse_dot(_read(args.input))
    enc = graph_encode(g, args.max_size)
    if args.mode == "poset":
        out.payload(format_poset(enc.poset))
    elif args.mode == "algebra":
        a = enc.algebra
        out.payload(format_algebra(FinitePAlgebra(a.leq, a.star, a.zero, a.one, labels=a.labels)))
    else:
        rows = ["index " + quote_words(enc.index_set)]
        for x, row in enumerate(enc.coords.tolist()):
            rows.append(quote_words([enc.algebra.labels[x]]) + " " + " ".join(SYMBOL[v] for v in row))
        out.payload("\n".join(rows) + "\n")
    out.note(f"poset: {enc.poset.size}\nalgebra: {enc.algebra.size}\nindex set: {len(enc.index_set)}")
    if args.recover:
        rec = recover_graph(enc.algebra)
        same = graph_isomorphism(rec, g) is not None
        out.note(f"isomorphic: {'yes' if same else 'no'}")
        if not same:
            return EXIT_FAIL
    return EXIT_OK


def cmd_recover_graph(args) -> int:
    out = _Output(args.output)
    a = _load_algebra(args.input)
    g = fo_recover_graph(a) if args.fo else recover_graph(a)
    out.payload(format_dot(g))
    out.note(f"vertices: {len(g.vertices)}\nedges: {len(g.edges)}")
    return EXIT_OK


def _parse_assignments(a: FinitePAlgebra, items) -> dict[str, int]:
    env = {}
    for item in items or ():
        name, sep, label = item.partition("=")
        if not sep or not name:
            raise UsageError(f"--var expects NAME=LABEL, got {item!r}")
        if label not in a.labels:
            raise UsageError(f"no element labeled {label!r}")
        env[name] = a.index(label)
    return env


def cmd_eval(args) -> int:
    a = _load_algebra(args.algebra)
    phi = parse_formula(args.formula, constants={"ebar", *a.constants})
    env = _parse_assignments(a, args.var)
    ev = Evaluator(a)
    value = ev.holds(phi, env)
    print("true" if value else "false")
    w = ev.witness(phi, env)
    if w:
        print("witness: " + ", ".join(f"{v}={a.labels[x]}" for v, x in w.items()))
    return EXIT_OK


def cmd_check(args) -> int:
    rep = checks.run_suite(args.suite, max_size=args.max_size, max_index=args.max_index,
                           max_poset=args.max_poset, samples=args.samples, seed=args.seed)
    sys.stdout.write(rep.render())
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_embed(args) -> int:
    a, b = _load_algebra(args.source), _load_algebra(args.target)
    h = find_embedding(a, b)
    if h is None:
        print("no embedding")
        return EXIT_FAIL
    for x, y in enumerate(h.map):
        print(f"{a.labels[x]} -> {b.labels[y]}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="palg", description="Finite p-algebras: constructions, duality, encodings, checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_cap(sp):
        sp.add_argument("--max-size", type=int, default=MAX_SIZE, help=f"element cap (default {MAX_SIZE})")
        return sp

    def with_output(sp):
        sp.add_argument("-o", "--output", help="write the result here instead of stdout")
        return sp

    sp = with_output(with_cap(sub.add_parser("build", help="build an algebra file")))
    sp.add_argument("kind", choices=["bnalg", "N", "product", "upset", "powerset"])
    sp.add_argument("args", nargs="*", help="i for bnalg/powerset; factors for product; a poset file for upset")
    sp.set_defaults(func=cmd_build)

    sp = with_output(with_cap(sub.add_parser("dual", help="algebra -> poset of join-irreducibles, poset -> upset algebra")))
    sp.add_argument("input")
    sp.set_defaults(func=cmd_dual)

    sp = with_output(with_cap(sub.add_parser("encode-graph", help="encode a graph given in DOT")))
    sp.add_argument("input")
    sp.add_argument("--mode", choices=["poset", "algebra", "embed"], default="algebra")
    sp.add_argument("--recover", action="store_true", help="recover the graph and compare with the input")
    sp.set_defaults(func=cmd_encode_graph)

    sp = with_output(sub.add_parser("recover-graph", help="read a graph off an encoded algebra"))
    sp.add_argument("input")
    sp.add_argument("--fo", action="store_true", help="use the first-order formulas")
    sp.set_defaults(func=cmd_recover_graph)

    sp = sub.add_parser("eval", help="evaluate a formula in an algebra")
    sp.add_argument("algebra")
    sp.add_argument("formula")
    sp.add_argument("--var", action="append", metavar="NAME=LABEL", help="assign a free variable")
    sp.set_defaults(func=cmd_eval)

    sp = with_cap(sub.add_parser("check", help="run a verification suite"))
    sp.add_argument("suite", choices=list(checks.SUITES) + ["all"])
    sp.add_argument("--max-index", type=int, default=3)
    sp.add_argument("--max-poset", type=int, default=None)
    sp.add_argument("--samples", type=int, default=5, help="random graphs checked by lemma3")
    sp.add_argument("--seed", type=int, default=None, help="overrides PALG_SEED")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("embed", help="least embedding of one algebra into another")
    sp.add_argument("source")
    sp.add_argument("target")
    sp.set_defaults(func=cmd_embed)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapExceeded as exc:
        print(f"palg: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, PAlgError, ValueError) as exc:
        print(f"palg: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
