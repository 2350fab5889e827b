"""First-order semantics over finite structures valued in a chain.

Structures interpret predicates into a finite chain with delta; the
universal and existential quantifiers evaluate as minimum and maximum
over the (finite) domain, which the chain's completeness makes total.
Equality between terms is crisp: top when the values coincide, otherwise
the chain's least element.  Only evaluation ships; there is no
first-order proof checking.

Formula grammar extends the propositional one with:

    forall x <formula> | exists x <formula>
    P(t1, ..., tk)           predicate atoms
    t1 = t2                  crisp equality
    terms: variables, constants, f(t1, ..., tk)
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .algebra import AlgebraError, FiniteAlgebra


class FOError(ValueError):
    """Malformed first-order input or evaluation failure."""


# -- terms -------------------------------------------------------------------

@dataclass(frozen=True)
class TermName:
    """A variable or constant; which one is resolved against the structure."""
    name: str


@dataclass(frozen=True)
class TermApp:
    func: str
    args: tuple


# -- formulas ----------------------------------------------------------------

@dataclass(frozen=True)
class FOFormula:
    pass


@dataclass(frozen=True)
class FPred(FOFormula):
    name: str
    args: tuple


@dataclass(frozen=True)
class FEq(FOFormula):
    left: object
    right: object


@dataclass(frozen=True)
class FTop(FOFormula):
    pass


@dataclass(frozen=True)
class FBot(FOFormula):
    pass


@dataclass(frozen=True)
class FImp(FOFormula):
    left: FOFormula
    right: FOFormula


@dataclass(frozen=True)
class FDelta(FOFormula):
    child: FOFormula


@dataclass(frozen=True)
class FForall(FOFormula):
    var: str
    body: FOFormula


@dataclass(frozen=True)
class FExists(FOFormula):
    var: str
    body: FOFormula


@dataclass(frozen=True)
class FOStructure:
    """A finite domain with chain-valued predicate tables.

    Predicate tables map argument tuples (domain indices) to carrier
    indices; function tables map to domain indices; constants name domain
    elements.  The algebra must be a chain so meets and joins exist.
    """
    domain_size: int
    algebra: FiniteAlgebra
    predicates: dict[str, dict] = field(default_factory=dict)
    functions: dict[str, dict] = field(default_factory=dict)
    constants: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.domain_size < 1:
            raise FOError("domain must be nonempty")
        if not self.algebra.is_chain():
            raise AlgebraError("first-order semantics needs a chain")
        if self.algebra.delta is None:
            raise AlgebraError("first-order semantics needs a delta table")

    @property
    def order_rank(self):
        # chain built by make_chain has index order = derived order; for an
        # arbitrary chain we rank by count of elements below
        return {x: len(self.algebra.below[x]) for x in range(self.algebra.size)}

    @staticmethod
    def from_dict(data: dict) -> "FOStructure":
        def detuple(table: dict, arity: int):
            out = {}
            for key, val in table.items():
                parts = tuple(int(p) for p in str(key).split(",")) if arity else ()
                out[parts] = int(val)
            return out

        preds = {}
        for name, spec in data.get("predicates", {}).items():
            arity = int(spec["arity"])
            preds[name] = {"arity": arity, "table": detuple(spec["table"], arity)}
        funcs = {}
        for name, spec in data.get("functions", {}).items():
            arity = int(spec["arity"])
            funcs[name] = {"arity": arity, "table": detuple(spec["table"], arity)}
        return FOStructure(
            domain_size=int(data["domain_size"]),
            algebra=FiniteAlgebra.from_dict(data["algebra"]),
            predicates=preds,
            functions=funcs,
            constants={k: int(v) for k, v in data.get("constants", {}).items()},
        )


def eval_term(t, S: FOStructure, env: dict[str, int]) -> int:
    if isinstance(t, TermName):
        if t.name in env:
            return env[t.name]
        if t.name in S.constants:
            return S.constants[t.name]
        raise FOError(f"unbound name {t.name!r}")
    if isinstance(t, TermApp):
        spec = S.functions.get(t.func)
        if spec is None:
            raise FOError(f"unknown function symbol {t.func!r}")
        if len(t.args) != spec["arity"]:
            raise FOError(f"arity mismatch for {t.func!r}")
        args = tuple(eval_term(a, S, env) for a in t.args)
        return spec["table"][args]
    raise FOError(f"not a term: {t!r}")


def fo_eval(f: FOFormula, S: FOStructure, assignment: dict[str, int] | None = None) -> int:
    """Truth value (carrier index) of f under the assignment."""
    env = dict(assignment or {})
    A = S.algebra
    rank = S.order_rank
    least = min(range(A.size), key=lambda x: rank[x])

    def go(g: FOFormula, env: dict[str, int]) -> int:
        if isinstance(g, FPred):
            spec = S.predicates.get(g.name)
            if spec is None:
                raise FOError(f"unknown predicate symbol {g.name!r}")
            if len(g.args) != spec["arity"]:
                raise FOError(f"arity mismatch for {g.name!r}")
            args = tuple(eval_term(a, S, env) for a in g.args)
            return spec["table"][args]
        if isinstance(g, FEq):
            return A.top if eval_term(g.left, S, env) == eval_term(g.right, S, env) else least
        if isinstance(g, FTop):
            return A.top
        if isinstance(g, FBot):
            return least
        if isinstance(g, FImp):
            return A.imp[go(g.left, env)][go(g.right, env)]
        if isinstance(g, FDelta):
            return A.delta[go(g.child, env)]
        if isinstance(g, (FForall, FExists)):
            agg = max if isinstance(g, FExists) else min
            values = []
            for d in range(S.domain_size):
                env2 = dict(env)
                env2[g.var] = d
                values.append(go(g.body, env2))
            return agg(values, key=lambda x: rank[x])
        raise FOError(f"not a formula node: {g!r}")

    return go(f, env)


def substitute_term(f: FOFormula, var: str, t) -> FOFormula:
    """f with every free occurrence of `var` replaced by the term t."""
    def in_term(u):
        if isinstance(u, TermName):
            return t if u.name == var else u
        return TermApp(u.func, tuple(in_term(a) for a in u.args))

    if isinstance(f, FPred):
        return FPred(f.name, tuple(in_term(a) for a in f.args))
    if isinstance(f, FEq):
        return FEq(in_term(f.left), in_term(f.right))
    if isinstance(f, FImp):
        return FImp(substitute_term(f.left, var, t), substitute_term(f.right, var, t))
    if isinstance(f, FDelta):
        return FDelta(substitute_term(f.child, var, t))
    if isinstance(f, (FForall, FExists)):
        if f.var == var:
            return f
        return type(f)(f.var, substitute_term(f.body, var, t))
    return f


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

_FO_TOKEN = re.compile(r"\s*(->|\||&|~|=|\(|\)|,|[A-Za-z_][A-Za-z0-9_]*|\S)")


class _FOParser:
    def __init__(self, text: str):
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _FO_TOKEN.match(text, pos)
            if m is None:
                break
            self.tokens.append(m.group(1))
            pos = m.end()
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise FOError("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, tok):
        got = self.next()
        if got != tok:
            raise FOError(f"expected {tok!r}, got {got!r}")

    def formula(self) -> FOFormula:
        tok = self.peek()
        if tok in ("forall", "exists"):
            self.next()
            var = self.next()
            body = self.formula()
            return (FForall if tok == "forall" else FExists)(var, body)
        left = self.or_level()
        if self.peek() == "->":
            self.next()
            return FImp(left, self.formula())
        return left

    def or_level(self):
        out = self.and_level()
        while self.peek() == "|":
            self.next()
            rhs = self.and_level()
            out = FImp(FImp(out, rhs), rhs)
        return out

    def and_level(self):
        out = self.unary()
        while self.peek() == "&":
            self.next()
            rhs = self.unary()
            na, nb = FImp(out, FBot()), FImp(rhs, FBot())
            out = FImp(FImp(FImp(na, nb), nb), FBot())
        return out

    def unary(self):
        tok = self.peek()
        if tok == "D":
            self.next()
            return FDelta(self.unary())
        if tok == "~":
            self.next()
            return FImp(self.unary(), FBot())
        return self.atom()

    def atom(self):
        tok = self.next()
        if tok == "(":
            out = self.formula()
            self.expect(")")
            return out
        if tok == "T":
            return FTop()
        if tok == "F":
            return FBot()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise FOError(f"unexpected token {tok!r}")
        # predicate, or a term followed by '='
        if self.peek() == "(" and tok[0].isupper():
            args = self.term_args()
            return FPred(tok, args)
        term = self.term_from(tok)
        self.expect("=")
        right = self.term()
        return FEq(term, right)

    def term_args(self):
        self.expect("(")
        args = [self.term()]
        while self.peek() == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return tuple(args)

    def term(self):
        tok = self.next()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            raise FOError(f"bad term {tok!r}")
        return self.term_from(tok)

    def term_from(self, tok):
        if self.peek() == "(":
            return TermApp(tok, self.term_args())
        return TermName(tok)


def fo_parse(text: str) -> FOFormula:
    """Parse a first-order formula.

    Uppercase-initial names followed by '(' are predicates; everything
    else is a term (variable, constant, or function application), and a
    bare term must take part in an equality atom.
    """
    p = _FOParser(text)
    out = p.formula()
    if p.peek() is not None:
        raise FOError(f"trailing input {p.peek()!r}")
    return out
