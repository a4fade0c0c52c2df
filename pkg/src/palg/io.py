"""Plain-text file formats: algebras, posets, and a small subset of DOT.

Algebra file::

    algebra
    size 3
    zero 0
    one 2
    star 2 0 0          # optional; computed from the order when absent
    labels 0 e 1        # optional
    constant ebar 1     # any number of these
    leq 0 1             # one line per generating pair; the order is the
    leq 1 2             # reflexive-transitive closure

A poset file has the header ``poset`` and only ``size``, ``labels`` and
``leq`` lines. ``#`` starts a comment; labels may be shell-quoted.
Writers emit the covering pairs only, so files stay short and diffable.
"""
from __future__ import annotations

import re
import shlex

from .algebra import FinitePAlgebra, pseudocomplements_from_order
from .encodings import Graph
from .errors import ParseError
from .poset import FinitePoset


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        try:
            words = shlex.split(raw, comments=True)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
        if words:
            yield lineno, words


def _int(word: str, lineno: int) -> int:
    try:
        return int(word)
    except ValueError:
        raise ParseError(f"line {lineno}: expected an integer, got {word!r}") from None


def _parse_fields(text: str, header: str, allowed: set[str]):
    lines = list(_lines(text))
    if not lines or lines[0][1] != [header]:
        raise ParseError(f"expected header line {header!r}")
    fields: dict[str, list] = {}
    pairs = []
    constants = {}
    for lineno, words in lines[1:]:
        key, rest = words[0], words[1:]
        if key not in allowed:
            raise ParseError(f"line {lineno}: unknown field {key!r}")
        if key == "leq":
            if len(rest) != 2:
                raise ParseError(f"line {lineno}: leq takes two indices")
            pairs.append((_int(rest[0], lineno), _int(rest[1], lineno)))
        elif key == "constant":
            if len(rest) != 2:
                raise ParseError(f"line {lineno}: constant takes a name and an index")
            if rest[0] in constants:
                raise ParseError(f"line {lineno}: constant {rest[0]} given twice")
            constants[rest[0]] = _int(rest[1], lineno)
        else:
            if key in fields:
                raise ParseError(f"line {lineno}: field {key} given twice")
            fields[key] = (lineno, rest)
    if "size" not in fields:
        raise ParseError("missing size")
    lineno, rest = fields["size"]
    if len(rest) != 1:
        raise ParseError(f"line {lineno}: size takes one integer")
    size = _int(rest[0], lineno)
    if size < 0:
        raise ParseError(f"line {lineno}: negative size")
    return size, fields, pairs, constants


def _order(size, pairs, labels) -> FinitePoset:
    for p, q in pairs:
        if not (0 <= p < size and 0 <= q < size):
            raise ParseError(f"leq pair ({p}, {q}) out of range")
    try:
        return FinitePoset.from_pairs(size, pairs, labels)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _labels(fields, size):
    if "labels" not in fields:
        return None
    lineno, labels = fields["labels"]
    if len(labels) != size:
        raise ParseError(f"line {lineno}: expected {size} labels, got {len(labels)}")
    if len(set(labels)) != size:
        raise ParseError(f"line {lineno}: labels must be distinct")
    return labels


def parse_poset(text: str) -> FinitePoset:
    size, fields, pairs, _ = _parse_fields(text, "poset", {"size", "labels", "leq"})
    return _order(size, pairs, _labels(fields, size))


def parse_algebra(text: str) -> FinitePAlgebra:
    size, fields, pairs, constants = _parse_fields(
        text, "algebra", {"size", "zero", "one", "star", "labels", "constant", "leq"})
    if size == 0:
        raise ParseError("an algebra needs at least one element")
    labels = _labels(fields, size)
    poset = _order(size, pairs, labels)
    bounds = {}
    for name in ("zero", "one"):
        if name not in fields:
            raise ParseError(f"missing {name}")
        lineno, rest = fields[name]
        if len(rest) != 1:
            raise ParseError(f"line {lineno}: {name} takes one index")
        bounds[name] = _int(rest[0], lineno)
        if not 0 <= bounds[name] < size:
            raise ParseError(f"line {lineno}: {name} out of range")
    for name, v in constants.items():
        if not 0 <= v < size:
            raise ParseError(f"constant {name} out of range")
    if "star" in fields:
        lineno, rest = fields["star"]
        star = [_int(w, lineno) for w in rest]
        if len(star) != size or not all(0 <= v < size for v in star):
            raise ParseError(f"line {lineno}: star needs {size} indices in range")
    else:
        star = pseudocomplements_from_order(poset.matrix, bounds["zero"])
        if star is None:
            raise ParseError("no star given and the order has no pseudocomplements")
    return FinitePAlgebra(poset.matrix, star, bounds["zero"], bounds["one"],
                          constants=constants, labels=poset.labels)


def quote_words(words) -> str:
    return " ".join(shlex.quote(str(w)) for w in words)


def _covers(leq) -> list[tuple[int, int]]:
    n = len(leq)
    up = [sum(1 << q for q in range(n) if leq[p][q]) for p in range(n)]
    return FinitePoset(n, up).covers()


def format_poset(p: FinitePoset) -> str:
    out = ["poset", f"size {p.size}", "labels " + quote_words(p.labels)]
    out += [f"leq {a} {b}" for a, b in p.covers()]
    return "\n".join(out) + "\n"


def format_algebra(a: FinitePAlgebra) -> str:
    out = [
        "algebra",
        f"size {a.size}",
        f"zero {a.zero}",
        f"one {a.one}",
        "star " + " ".join(str(v) for v in a.star_list),
        "labels " + quote_words(a.labels),
    ]
    out += [f"constant {shlex.quote(name)} {v}" for name, v in sorted(a.constants.items())]
    out += [f"leq {p} {q}" for p, q in _covers(a.leq_list)]
    return "\n".join(out) + "\n"


# -- DOT subset ----------------------------------------------------------------

_DOT_TOKEN = re.compile(r'\s*(?:(--)|([{};])|([A-Za-z_][A-Za-z0-9_]*|-?(?:\d+\.?\d*|\.\d+))|"((?:[^"\\]|\\.)*)")')
_BARE_ID = re.compile(r"[A-Za-z_][A-Za-z0-9_]*|-?(?:\d+\.?\d*|\.\d+)")


def _dot_tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _DOT_TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at offset {pos}: {text[pos:pos + 10]!r}")
        edge, punct, ident, quoted = m.groups()
        if edge:
            out.append(("--", edge))
        elif punct:
            out.append((punct, punct))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("id", re.sub(r'\\(.)', r"\1", quoted)))
        pos = m.end()
    return out


def parse_dot(text: str) -> Graph:
    """``graph [name] { a -- b; c; }``: undirected, one edge per statement,
    no attributes. Loops and repeated edges are rejected."""
    toks = _dot_tokens(text)
    i = 0

    def expect(kind):
        nonlocal i
        if i >= len(toks) or toks[i][0] != kind:
            got = toks[i][1] if i < len(toks) else "end of input"
            raise ParseError(f"expected {kind!r}, got {got!r}")
        i += 1
        return toks[i - 1][1]

    if not toks or toks[0] != ("id", "graph"):
        raise ParseError("expected 'graph'")
    i = 1
    if i < len(toks) and toks[i][0] == "id":
        i += 1
    expect("{")
    vertices: list[str] = []
    edges: list[tuple[str, str]] = []
    while i < len(toks) and toks[i][0] != "}":
        u = expect("id")
        vertices.append(u)
        if i < len(toks) and toks[i][0] == "--":
            i += 1
            v = expect("id")
            vertices.append(v)
            edges.append((u, v))
        if i < len(toks) and toks[i][0] == ";":
            i += 1
    expect("}")
    if i != len(toks):
        raise ParseError("trailing input after the closing brace")
    try:
        return Graph.make(vertices, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _dot_id(name: str) -> str:
    if _BARE_ID.fullmatch(name) and name != "graph":
        return name
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_dot(g: Graph) -> str:
    out = ["graph {"]
    touched = {v for e in g.edges for v in e}
    out += [f"  {_dot_id(v)};" for v in g.vertices if v not in touched]
    out += [f"  {_dot_id(u)} -- {_dot_id(v)};" for u, v in g.edges]
    out.append("}")
    return "\n".join(out) + "\n"
