"""First-order formulas over the p-algebra signature and their evaluation on
finite algebras.

Text syntax::

    terms      x  0  1  ebar  t & s  t | s  t*
    atoms      t = s   t <= s   t != s   name(t, ...)   name   true   false
    formulas   !p   p & q   p | q   p -> q   A x. p   E x. p   E! x. p

``&`` and ``|`` serve as both term and formula operators; term operators
bind tighter than ``=`` and ``<=``, so ``x | x* = 1`` is an equation. On the
right of a relation a ``|`` or ``&`` is read as a connective when the
operand after it is followed by another relation (``x = 0 | x = 1``).
Quantifier bodies extend as far to the right as possible.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping

from .algebra import FinitePAlgebra
from .errors import EvaluationError, NotAnEncoding, OutOfFragment, ParseError
from .poset import iter_bits


# -- syntax -----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str  # "0", "1" or a named constant such as "ebar"


@dataclass(frozen=True)
class Meet:
    left: object
    right: object


@dataclass(frozen=True)
class Join:
    left: object
    right: object


@dataclass(frozen=True)
class Star:
    arg: object


@dataclass(frozen=True)
class Eq:
    left: object
    right: object


@dataclass(frozen=True)
class Leq:
    left: object
    right: object


@dataclass(frozen=True)
class Pred:
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Not:
    body: object


@dataclass(frozen=True)
class And:
    left: object
    right: object


@dataclass(frozen=True)
class Or:
    left: object
    right: object


@dataclass(frozen=True)
class Implies:
    left: object
    right: object


@dataclass(frozen=True)
class Forall:
    var: str
    body: object


@dataclass(frozen=True)
class Exists:
    var: str
    body: object


@dataclass(frozen=True)
class ExistsUnique:
    var: str
    body: object


TERMS = (Var, Const, Meet, Join, Star)
QUANTIFIERS = (Forall, Exists, ExistsUnique)


def conj(*parts):
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def term_vars(t) -> set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Const):
        return set()
    if isinstance(t, Star):
        return term_vars(t.arg)
    return term_vars(t.left) | term_vars(t.right)


def free_vars(phi) -> set[str]:
    if isinstance(phi, (Eq, Leq)):
        return term_vars(phi.left) | term_vars(phi.right)
    if isinstance(phi, Pred):
        out = set()
        for t in phi.args:
            out |= term_vars(t)
        return out
    if isinstance(phi, Truth):
        return set()
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, QUANTIFIERS):
        return free_vars(phi.body) - {phi.var}
    raise TypeError(f"not a formula: {phi!r}")


def desugar_unique(phi):
    """Rewrite every E! x. p as E x. (p & A x'. (p[x'/x] -> x' = x))."""
    if isinstance(phi, ExistsUnique):
        body = desugar_unique(phi.body)
        fresh = phi.var + "'"
        while fresh in free_vars(body) | _bound_vars(body):
            fresh += "'"
        renamed = substitute(body, {phi.var: Var(fresh)})
        return Exists(phi.var, And(body, Forall(fresh, Implies(renamed, Eq(Var(fresh), Var(phi.var))))))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.var, desugar_unique(phi.body))
    if isinstance(phi, Not):
        return Not(desugar_unique(phi.body))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(desugar_unique(phi.left), desugar_unique(phi.right))
    return phi


def _bound_vars(phi) -> set[str]:
    if isinstance(phi, QUANTIFIERS):
        return {phi.var} | _bound_vars(phi.body)
    if isinstance(phi, Not):
        return _bound_vars(phi.body)
    if isinstance(phi, (And, Or, Implies)):
        return _bound_vars(phi.left) | _bound_vars(phi.right)
    return set()


def _subst_term(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Star):
        return Star(_subst_term(t.arg, mapping))
    return type(t)(_subst_term(t.left, mapping), _subst_term(t.right, mapping))


def substitute(phi, mapping: Mapping[str, object]):
    """Replace free variables by terms; bound variables are not renamed, so
    the caller must avoid capture."""
    if isinstance(phi, (Eq, Leq)):
        return type(phi)(_subst_term(phi.left, mapping), _subst_term(phi.right, mapping))
    if isinstance(phi, Pred):
        return Pred(phi.name, tuple(_subst_term(t, mapping) for t in phi.args))
    if isinstance(phi, Truth):
        return phi
    if isinstance(phi, Not):
        return Not(substitute(phi.body, mapping))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(substitute(phi.left, mapping), substitute(phi.right, mapping))
    if isinstance(phi, QUANTIFIERS):
        inner = {k: v for k, v in mapping.items() if k != phi.var}
        return type(phi)(phi.var, substitute(phi.body, inner))
    raise TypeError(f"not a formula: {phi!r}")


def to_text(phi) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(phi, Var):
        return phi.name
    if isinstance(phi, Const):
        return phi.name
    if isinstance(phi, Star):
        return f"{to_text(phi.arg)}*" if isinstance(phi.arg, (Var, Const, Star)) else f"({to_text(phi.arg)})*"
    if isinstance(phi, Meet):
        return f"({to_text(phi.left)} & {to_text(phi.right)})"
    if isinstance(phi, Join):
        return f"({to_text(phi.left)} | {to_text(phi.right)})"
    if isinstance(phi, Eq):
        return f"{to_text(phi.left)} = {to_text(phi.right)}"
    if isinstance(phi, Leq):
        return f"{to_text(phi.left)} <= {to_text(phi.right)}"
    if isinstance(phi, Pred):
        return phi.name + (f"({', '.join(to_text(t) for t in phi.args)})" if phi.args else "")
    if isinstance(phi, Truth):
        return "true" if phi.value else "false"
    if isinstance(phi, Not):
        return f"!({to_text(phi.body)})"
    if isinstance(phi, And):
        return f"({to_text(phi.left)}) & ({to_text(phi.right)})"
    if isinstance(phi, Or):
        return f"({to_text(phi.left)}) | ({to_text(phi.right)})"
    if isinstance(phi, Implies):
        return f"({to_text(phi.left)}) -> ({to_text(phi.right)})"
    if isinstance(phi, Forall):
        return f"A {phi.var}. ({to_text(phi.body)})"
    if isinstance(phi, Exists):
        return f"E {phi.var}. ({to_text(phi.body)})"
    if isinstance(phi, ExistsUnique):
        return f"E! {phi.var}. ({to_text(phi.body)})"
    raise TypeError(f"cannot print {phi!r}")


# -- parsing ------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<le><=)|(?P<ne>!=)|(?P<eu>E!)|(?P<sym>[()&|!*=.,])"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<num>[01])(?![0-9A-Za-z_]))"
)
RELATIONS = ("=", "<=", "!=")


def tokenize(text: str) -> list[str]:
    out, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append(m.group(m.lastgroup))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str, constants):
        self.toks = tokenize(text)
        self.i = 0
        self.constants = set(constants)

    def peek(self, k=0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'a token'} at token {self.i}, got {tok!r}")
        self.i += 1
        return tok

    def done(self):
        return self.i >= len(self.toks)

    def is_quantifier(self):
        tok = self.peek()
        return tok in ("A", "E", "E!") and self.peek(1) != "("

    # formulas
    def formula(self):
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disjunction(self):
        left = self.conjunction()
        while self.peek() == "|":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self):
        left = self.unary()
        while self.peek() == "&":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self):
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if self.is_quantifier():
            kind = {"A": Forall, "E": Exists, "E!": ExistsUnique}[self.take()]
            names = []
            while self.peek() != ".":
                names.append(self.variable_name())
            if not names:
                raise ParseError("quantifier without a variable")
            self.take(".")
            body = self.formula()
            for name in reversed(names):
                body = kind(name, body)
            return body
        return self.atom()

    def variable_name(self):
        tok = self.take()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok) or tok in ("A", "E"):
            raise ParseError(f"bad variable name {tok!r}")
        return tok

    def atom(self):
        start = self.i
        try:
            left = self.term()
            rel = self.peek()
            if rel in RELATIONS:
                self.take()
                right = self.term(rhs=True)
                if rel == "=":
                    return Eq(left, right)
                if rel == "<=":
                    return Leq(left, right)
                return Not(Eq(left, right))
        except ParseError:
            pass
        self.i = start
        tok = self.peek()
        if tok == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        if tok in ("true", "false"):
            self.take()
            return Truth(tok == "true")
        if tok is not None and re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            self.take()
            args = []
            if self.peek() == "(":
                self.take()
                if self.peek() != ")":
                    args.append(self.term())
                    while self.peek() == ",":
                        self.take()
                        args.append(self.term())
                self.take(")")
            return Pred(tok, tuple(args))
        raise ParseError(f"cannot parse an atom at token {start}: {tok!r}")

    # terms
    def term(self, rhs=False):
        left = self.term_meet(rhs)
        while self.peek() == "|" and self._continues_term(rhs, self.term_meet):
            self.take()
            left = Join(left, self.term_meet(rhs))
        return left

    def term_meet(self, rhs=False):
        left = self.term_postfix()
        while self.peek() == "&" and self._continues_term(rhs, self.term_postfix):
            self.take()
            left = Meet(left, self.term_postfix())
        return left

    def _continues_term(self, rhs, operand):
        """Whether the operator at the cursor belongs to the current term."""
        start = self.i
        self.i += 1
        try:
            operand()
            follows = self.peek()
            return not (rhs and follows in RELATIONS)
        except ParseError:
            return False
        finally:
            self.i = start

    def term_postfix(self):
        t = self.term_primary()
        while self.peek() == "*":
            self.take()
            t = Star(t)
        return t

    def term_primary(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if tok in ("0", "1"):
            self.take()
            return Const(tok)
        if tok is None or tok in ("A", "E", "E!", "true", "false") or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok):
            raise ParseError(f"expected a term at token {self.i}, got {tok!r}")
        if self.peek(1) == "(":
            raise ParseError(f"{tok} is a predicate, not a term")
        self.take()
        return Const(tok) if tok in self.constants else Var(tok)


def parse_formula(text: str, constants=("ebar",)):
    p = _Parser(text, constants)
    phi = p.formula()
    if not p.done():
        raise ParseError(f"unexpected {p.peek()!r} at token {p.i}")
    return phi


def parse_term(text: str, constants=("ebar",)):
    p = _Parser(text, constants)
    t = p.term()
    if not p.done():
        raise ParseError(f"unexpected {p.peek()!r} at token {p.i}")
    return t


# -- library ------------------------------------------------------------------------

@dataclass(frozen=True)
class Definition:
    name: str
    params: tuple
    body: object


_LIBRARY_TEXT = {
    "atom(x)": "!(x = 0) & A y. (y <= x -> (y = 0) | (y = x))",
    # x covers y
    "covers(x, y)": "y <= x & y != x & A z. (y <= z -> z <= x -> (z = y) | (z = x))",
    # in a finite lattice: exactly one lower cover
    "join_irreducible(x)": "E! y. (y <= x & covers(x, y))",
    "unique_atom": "E! x. atom(x)",
    "vertex(x)": "(E y. (y <= x & atom(y) & covers(x, y))) & join_irreducible(x)",
    "edge(x, y)": "vertex(x) & vertex(y) & x != y & E! z. (x <= z & y <= z & join_irreducible(z))",
    "boolean_law": "A x. x | x* = 1",
    "inC(x)": "E y. x = y | ebar",
    "inC0(x)": "E y. x = y** | ebar",
}


def _build_library() -> dict[str, Definition]:
    out = {}
    for head, body in _LIBRARY_TEXT.items():
        m = re.fullmatch(r"(\w+)(?:\((.*)\))?", head)
        name, params = m.group(1), tuple(s.strip() for s in (m.group(2) or "").split(",") if s.strip())
        phi = parse_formula(body)
        extra = free_vars(phi) - set(params)
        assert not extra, (name, extra)
        out[name] = Definition(name, params, phi)
    return out


LIBRARY = _build_library()


def library_formulas() -> dict[str, Definition]:
    return dict(LIBRARY)


# -- evaluation ---------------------------------------------------------------------

class Evaluator:
    """Tarskian satisfaction on one finite algebra.

    Formulas are compiled to closures once per evaluator. Library predicates
    are memoized on their argument values. A quantifier whose body starts
    with bounds on the quantified variable, as in ``A z. (y <= z -> ...)``
    or ``E z. (z <= x & ...)``, only ranges over the elements meeting those
    bounds; elsewhere the body is trivially true (for A) or false (for E),
    so the truth value is unchanged.
    """

    def __init__(self, a: FinitePAlgebra, library: Mapping[str, Definition] = LIBRARY):
        self.a = a
        self.library = library
        self.meet = a.meet_list
        self.join = a.join_list
        self.star = a.star_list
        self.leq = a.leq_list
        self.up = a.up_masks
        self.down = a.down_masks
        self.all = (1 << a.size) - 1
        self.memo: dict = {}
        self._compiled: dict = {}
        self._pred_bodies: dict = {}

    def term(self, t, env) -> int:
        missing = term_vars(t) - set(env)
        if missing:
            raise EvaluationError(f"unbound variable {sorted(missing)[0]}")
        return self._term(t)(dict(env))

    def holds(self, phi, env=None) -> bool:
        env = dict(env or {})
        missing = free_vars(phi) - set(env)
        if missing:
            raise EvaluationError(f"unbound variable {sorted(missing)[0]}")
        return self._formula(phi)(env)

    # compilation
    def _term(self, t):
        if isinstance(t, Var):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Const):
            val = self._constant(t.name)
            return lambda env: val
        if isinstance(t, Star):
            arg, star = self._term(t.arg), self.star
            return lambda env: star[arg(env)]
        left, right = self._term(t.left), self._term(t.right)
        table = self.meet if isinstance(t, Meet) else self.join
        return lambda env: table[left(env)][right(env)]

    def _constant(self, name):
        if name == "0":
            return self.a.zero
        if name == "1":
            return self.a.one
        try:
            return self.a.constants[name]
        except KeyError:
            raise EvaluationError(f"unknown constant {name}") from None

    def _formula(self, phi):
        entry = self._compiled.get(id(phi))
        if entry is not None and entry[0] is phi:
            return entry[1]
        fn = self._compile(phi)
        # keep phi alive so its id cannot be reused by another node
        self._compiled[id(phi)] = (phi, fn)
        return fn

    def _compile(self, phi):
        if isinstance(phi, (Eq, Leq)):
            left, right = self._term(phi.left), self._term(phi.right)
            if isinstance(phi, Eq):
                return lambda env: left(env) == right(env)
            leq = self.leq
            return lambda env: leq[left(env)][right(env)]
        if isinstance(phi, And):
            left, right = self._formula(phi.left), self._formula(phi.right)
            return lambda env: left(env) and right(env)
        if isinstance(phi, Or):
            left, right = self._formula(phi.left), self._formula(phi.right)
            return lambda env: left(env) or right(env)
        if isinstance(phi, Implies):
            left, right = self._formula(phi.left), self._formula(phi.right)
            return lambda env: not left(env) or right(env)
        if isinstance(phi, Not):
            body = self._formula(phi.body)
            return lambda env: not body(env)
        if isinstance(phi, Truth):
            value = phi.value
            return lambda env: value
        if isinstance(phi, Pred):
            return self._compile_pred(phi)
        if isinstance(phi, QUANTIFIERS):
            return self._compile_quantifier(phi)
        raise TypeError(f"not a formula: {phi!r}")

    def _compile_pred(self, phi: Pred):
        try:
            d = self.library[phi.name]
        except KeyError:
            raise EvaluationError(f"unknown predicate {phi.name}") from None
        if len(d.params) != len(phi.args):
            raise EvaluationError(f"{phi.name} takes {len(d.params)} arguments, got {len(phi.args)}")
        args = [self._term(t) for t in phi.args]
        params = d.params
        name = phi.name
        memo = self.memo
        bodies = self._pred_bodies

        def run(env):
            values = tuple(a(env) for a in args)
            key = (name, values)
            hit = memo.get(key)
            if hit is None:
                body = bodies.get(name)
                if body is None:
                    body = bodies[name] = self._formula(d.body)
                hit = memo[key] = body(dict(zip(params, values)))
            return hit

        return run

    def _domain_fn(self, phi):
        guards = [(kind, self._term(t)) for kind, t in _collect_guards(phi)]
        full, up, down = self.all, self.up, self.down
        if not guards:
            return lambda env: full
        def domain(env):
            mask = full
            for kind, t in guards:
                val = t(env)
                if kind == "below":
                    mask &= down[val]
                elif kind == "above":
                    mask &= up[val]
                else:
                    mask &= 1 << val
            return mask
        return domain

    def _compile_quantifier(self, phi):
        var = phi.var
        body = self._formula(phi.body)
        domain = self._domain_fn(phi)
        missing = object()

        if isinstance(phi, Forall):
            def run(env):
                saved = env.get(var, missing)
                try:
                    for val in iter_bits(domain(env)):
                        env[var] = val
                        if not body(env):
                            return False
                    return True
                finally:
                    _restore(env, var, saved, missing)
        elif isinstance(phi, Exists):
            def run(env):
                saved = env.get(var, missing)
                try:
                    for val in iter_bits(domain(env)):
                        env[var] = val
                        if body(env):
                            return True
                    return False
                finally:
                    _restore(env, var, saved, missing)
        else:
            def run(env):
                saved = env.get(var, missing)
                count = 0
                try:
                    for val in iter_bits(domain(env)):
                        env[var] = val
                        if body(env):
                            count += 1
                            if count > 1:
                                return False
                    return count == 1
                finally:
                    _restore(env, var, saved, missing)
        return run

    # witnesses
    def witness(self, phi, env=None) -> dict[str, int] | None:
        """For a false universal or a true existential prefix, an assignment
        to the prefix variables showing it; otherwise None."""
        env = dict(env or {})
        if isinstance(phi, Forall) and not self.holds(phi, env):
            return self._find(phi, env, want=False)
        if isinstance(phi, (Exists, ExistsUnique)) and self.holds(phi, env):
            return self._find(phi, env, want=True)
        return None

    def _find(self, phi, env, want):
        kind = type(phi)
        out = {}
        while isinstance(phi, kind):
            mask = self._domain_fn(phi)(dict(env))
            body = self._formula(phi.body)
            for val in iter_bits(mask):
                env2 = {**env, phi.var: val}
                if body(dict(env2)) == want:
                    out[phi.var] = val
                    env = env2
                    break
            phi = phi.body
        return out


def _restore(env, var, saved, missing):
    if saved is missing:
        env.pop(var, None)
    else:
        env[var] = saved


def _collect_guards(q) -> list:
    """Bounds on the quantified variable implied by the body's leading guards."""
    v = q.var
    parts = []
    if isinstance(q, Forall):
        body = q.body
        while isinstance(body, Implies):
            parts.extend(_conjuncts(body.left))
            body = body.right
    else:
        parts = _conjuncts(q.body)
    out = []
    for p in parts:
        if isinstance(p, Leq):
            if p.left == Var(v) and v not in term_vars(p.right):
                out.append(("below", p.right))
            elif p.right == Var(v) and v not in term_vars(p.left):
                out.append(("above", p.left))
        elif isinstance(p, Eq):
            if p.left == Var(v) and v not in term_vars(p.right):
                out.append(("equal", p.right))
            elif p.right == Var(v) and v not in term_vars(p.left):
                out.append(("equal", p.left))
    return out


def _conjuncts(phi) -> list:
    if isinstance(phi, And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    return [phi]


def evaluate(a: FinitePAlgebra, phi, env: Mapping[str, int] | None = None, library=LIBRARY) -> bool:
    """Truth of ``phi`` in ``a`` under ``env`` (variable -> element index)."""
    if isinstance(phi, str):
        phi = parse_formula(phi, constants={"ebar", *a.constants})
    missing = free_vars(phi) - set(env or {})
    if missing:
        raise EvaluationError(f"unbound variables: {sorted(missing)}")
    return Evaluator(a, library).holds(phi, env)


def satisfiers(ev: Evaluator, name: str) -> list:
    """All argument tuples satisfying a library predicate, in ascending order."""
    d = ev.library[name]
    n = ev.a.size
    from itertools import product

    return [vals for vals in product(range(n), repeat=len(d.params))
            if ev.holds(Pred(name, tuple(Var(p) for p in d.params)), dict(zip(d.params, vals)))]


# -- graphs ---------------------------------------------------------------------------

def fo_recover_graph(a: FinitePAlgebra):
    """The graph defined by the library's vertex and edge formulas."""
    from .encodings import Graph

    ev = Evaluator(a)
    if not ev.holds(Pred("unique_atom")):
        raise NotAnEncoding("the algebra does not have exactly one atom")
    vertices = [x for x in range(a.size) if ev.holds(Pred("vertex", (Var("x"),)), {"x": x})]
    edges = []
    for i, x in enumerate(vertices):
        for y in vertices[i + 1:]:
            if ev.holds(Pred("edge", (Var("x"), Var("y"))), {"x": x, "y": y}):
                edges.append((a.labels[x], a.labels[y]))
    return Graph.make([a.labels[x] for x in vertices], edges)


def check_graph_formula(phi) -> None:
    """Raise OutOfFragment unless phi uses only E(x, y), equality of variables,
    connectives and quantifiers."""
    if isinstance(phi, Pred):
        if phi.name != "E" or len(phi.args) != 2 or not all(isinstance(t, Var) for t in phi.args):
            raise OutOfFragment(f"only the binary predicate E(x, y) is allowed, got {to_text(phi)}")
    elif isinstance(phi, Eq):
        if not (isinstance(phi.left, Var) and isinstance(phi.right, Var)):
            raise OutOfFragment(f"equality must be between variables: {to_text(phi)}")
    elif isinstance(phi, Truth):
        pass
    elif isinstance(phi, Not):
        check_graph_formula(phi.body)
    elif isinstance(phi, (And, Or, Implies)):
        check_graph_formula(phi.left)
        check_graph_formula(phi.right)
    elif isinstance(phi, QUANTIFIERS):
        check_graph_formula(phi.body)
    else:
        raise OutOfFragment(f"not in the graph language: {to_text(phi)}")


def translate_graph_sentence(phi):
    """Relativize quantifiers to vertex(x) and replace E(x, y) by edge(x, y)."""
    check_graph_formula(phi)
    return _translate(phi)


def _translate(phi):
    if isinstance(phi, Pred):
        return Pred("edge", phi.args)
    if isinstance(phi, (Eq, Truth)):
        return phi
    if isinstance(phi, Not):
        return Not(_translate(phi.body))
    if isinstance(phi, (And, Or, Implies)):
        return type(phi)(_translate(phi.left), _translate(phi.right))
    guard = Pred("vertex", (Var(phi.var),))
    if isinstance(phi, Forall):
        return Forall(phi.var, Implies(guard, _translate(phi.body)))
    return type(phi)(phi.var, And(guard, _translate(phi.body)))


def holds_in_graph(g, phi, env: Mapping[str, str] | None = None) -> bool:
    """Truth of a graph-language formula in g; variables range over vertices."""
    check_graph_formula(phi)
    return _graph_holds(g, phi, dict(env or {}))


def _graph_holds(g, phi, env) -> bool:
    if isinstance(phi, Pred):
        u, v = (env[t.name] for t in phi.args)
        return g.adjacent(u, v) if u != v else False
    if isinstance(phi, Eq):
        return env[phi.left.name] == env[phi.right.name]
    if isinstance(phi, Truth):
        return phi.value
    if isinstance(phi, Not):
        return not _graph_holds(g, phi.body, env)
    if isinstance(phi, And):
        return _graph_holds(g, phi.left, env) and _graph_holds(g, phi.right, env)
    if isinstance(phi, Or):
        return _graph_holds(g, phi.left, env) or _graph_holds(g, phi.right, env)
    if isinstance(phi, Implies):
        return not _graph_holds(g, phi.left, env) or _graph_holds(g, phi.right, env)
    results = (_graph_holds(g, phi.body, {**env, phi.var: v}) for v in g.vertices)
    if isinstance(phi, Forall):
        return all(results)
    if isinstance(phi, Exists):
        return any(results)
    return sum(results) == 1


GRAPH_SENTENCES = {
    "edge exists": "E x. E y. E(x, y)",
    "edges are symmetric": "A x. A y. (E(x, y) -> E(y, x))",
    "isolated vertex": "E x. A y. !E(x, y)",
    "triangle": "E x. E y. E z. (E(x, y) & E(y, z) & E(x, z))",
    "dominating vertex": "E x. A y. (x != y -> E(x, y))",
}
