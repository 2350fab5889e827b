"""Propositional term language over the signature {->, D, T, F}.

The same AST serves as the term language for equational checks on finite
algebras and as the formula language of the Hilbert calculi.  Connectives:

* ``a -> b``  residuated implication, right associative
* ``D a``     delta (crisp truth) operator, binds tightest
* ``T`` / ``F``  top / bottom constants
* sugar: ``a | b`` = ``(a -> b) -> b``; ``~a`` = ``a -> F``;
  ``a & b`` = ``~(~a | ~b)``; ``a ->[k] b`` = k-fold iterated implication.

Sugar is eliminated at parse time; the core AST has exactly Var, Top, Bot,
Imp and Delta nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction


class FormulaError(ValueError):
    """Raised for malformed formula text or evaluation errors."""


@dataclass(frozen=True)
class Formula:
    pass


@dataclass(frozen=True)
class Var(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Delta(Formula):
    child: Formula


TOP = Top()
BOT = Bot()


def var(name: str) -> Var:
    return Var(name)


def imp(a: Formula, b: Formula) -> Imp:
    return Imp(a, b)


def delta(a: Formula) -> Delta:
    return Delta(a)


def imp_k(a: Formula, b: Formula, k: int) -> Formula:
    """k-fold iterated implication: a ->[0] b = b, a ->[k+1] b = a -> (a ->[k] b)."""
    if k < 0:
        raise FormulaError("iterated implication needs k >= 0")
    out = b
    for _ in range(k):
        out = Imp(a, out)
    return out


def or_(a: Formula, b: Formula) -> Formula:
    return Imp(Imp(a, b), b)


def not_(a: Formula) -> Formula:
    return Imp(a, BOT)


def and_(a: Formula, b: Formula) -> Formula:
    return not_(or_(not_(a), not_(b)))


def variables(f: Formula) -> set[str]:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Imp):
        return variables(f.left) | variables(f.right)
    if isinstance(f, Delta):
        return variables(f.child)
    return set()


def uses_bot(f: Formula) -> bool:
    if isinstance(f, Bot):
        return True
    if isinstance(f, Imp):
        return uses_bot(f.left) or uses_bot(f.right)
    if isinstance(f, Delta):
        return uses_bot(f.child)
    return False


def uses_delta(f: Formula) -> bool:
    if isinstance(f, Delta):
        return True
    if isinstance(f, Imp):
        return uses_delta(f.left) or uses_delta(f.right)
    return False


def substitute(f: Formula, subst: dict[str, Formula]) -> Formula:
    """Simultaneous substitution of formulas for variables."""
    if isinstance(f, Var):
        return subst.get(f.name, f)
    if isinstance(f, Imp):
        return Imp(substitute(f.left, subst), substitute(f.right, subst))
    if isinstance(f, Delta):
        return Delta(substitute(f.child, subst))
    return f


def match(pattern: Formula, target: Formula, subst: dict[str, Formula] | None = None) -> dict[str, Formula] | None:
    """One-way matching: variables of `pattern` are metavariables.

    Returns the (extended) substitution mapping pattern variables to
    subformulas of `target`, or None if there is no match.
    """
    if subst is None:
        subst = {}
    if isinstance(pattern, Var):
        bound = subst.get(pattern.name)
        if bound is None:
            subst[pattern.name] = target
            return subst
        return subst if bound == target else None
    if isinstance(pattern, Imp):
        if not isinstance(target, Imp):
            return None
        subst = match(pattern.left, target.left, subst)
        if subst is None:
            return None
        return match(pattern.right, target.right, subst)
    if isinstance(pattern, Delta):
        if not isinstance(target, Delta):
            return None
        return match(pattern.child, target.child, subst)
    # Top / Bot
    return subst if pattern == target else None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(->\[\s*\d+\s*\]|->|\||&|~|\(|\)|[A-Za-z_][A-Za-z0-9_]*|\S)"
)

_UNICODE_ALIASES = {
    "→": "->",   # arrow
    "↣": "->",   # rightarrowtail
    "Δ": "D ",   # capital delta
    "⊤": "T",    # top
    "⊥": "F",    # bottom
    "¬": "~",
    "∨": "|",
    "∧": "&",
}


class _Parser:
    def __init__(self, text: str):
        for uni, ascii_ in _UNICODE_ALIASES.items():
            text = text.replace(uni, ascii_)
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None:
                break
            tok = m.group(1)
            self.tokens.append((tok, m.start(1)))
            pos = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise FormulaError(f"unexpected end of input in {self.text!r}")
        self.pos += 1
        return tok

    def expect(self, tok: str):
        got = self.next()
        if got != tok:
            where = self.tokens[self.pos - 1][1]
            raise FormulaError(f"expected {tok!r} at position {where}, got {got!r}")

    def formula(self) -> Formula:
        left = self.or_level()
        tok = self.peek()
        if tok is not None and tok.startswith("->"):
            self.next()
            if tok == "->":
                return Imp(left, self.formula())
            k = int(tok[3:-1])
            return imp_k(left, self.formula(), k)
        return left

    def or_level(self) -> Formula:
        out = self.and_level()
        while self.peek() == "|":
            self.next()
            out = or_(out, self.and_level())
        return out

    def and_level(self) -> Formula:
        out = self.unary()
        while self.peek() == "&":
            self.next()
            out = and_(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "D":
            self.next()
            return Delta(self.unary())
        if tok == "~":
            self.next()
            return not_(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok = self.next()
        if tok == "(":
            out = self.formula()
            self.expect(")")
            return out
        if tok == "T":
            return TOP
        if tok == "F":
            return BOT
        if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", tok):
            return Var(tok)
        where = self.tokens[self.pos - 1][1]
        raise FormulaError(f"unexpected token {tok!r} at position {where}")


def parse(text: str) -> Formula:
    """Parse formula text into the core AST (sugar eliminated)."""
    p = _Parser(text)
    out = p.formula()
    if p.peek() is not None:
        tok, where = p.tokens[p.pos]
        raise FormulaError(f"trailing input {tok!r} at position {where}")
    return out


def to_text(f: Formula) -> str:
    """Render the core AST; parse(to_text(f)) == f."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    if isinstance(f, Delta):
        child = to_text(f.child)
        if isinstance(f.child, Imp):
            return f"D ({child})"
        return f"D {child}"
    if isinstance(f, Imp):
        left = to_text(f.left)
        if isinstance(f.left, Imp):
            left = f"({left})"
        return f"{left} -> {to_text(f.right)}"
    raise FormulaError(f"not a formula node: {f!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def eval_formula(f: Formula, algebra, valuation: dict[str, int]) -> int:
    """Evaluate over a FiniteAlgebra; valuation maps variable names to indices."""
    if isinstance(f, Var):
        try:
            return valuation[f.name]
        except KeyError:
            raise FormulaError(f"unassigned variable {f.name!r}") from None
    if isinstance(f, Top):
        return algebra.top
    if isinstance(f, Bot):
        if algebra.bottom is None:
            raise FormulaError("formula uses F but the algebra has no bottom")
        return algebra.bottom
    if isinstance(f, Imp):
        return algebra.imp[eval_formula(f.left, algebra, valuation)][
            eval_formula(f.right, algebra, valuation)
        ]
    if isinstance(f, Delta):
        if algebra.delta is None:
            raise FormulaError("formula uses D but the algebra has no delta")
        return algebra.delta[eval_formula(f.child, algebra, valuation)]
    raise FormulaError(f"not a formula node: {f!r}")


ONE = Fraction(1)
ZERO = Fraction(0)


def rational_eval(f: Formula, valuation: dict[str, Fraction]) -> Fraction:
    """Exact evaluation over the unit interval with min{1, 1-x+y} implication.

    D is the crisp operator (1 at 1, else 0); floats are never involved
    because D is discontinuous at 1.
    """
    if isinstance(f, Var):
        try:
            x = Fraction(valuation[f.name])
        except KeyError:
            raise FormulaError(f"unassigned variable {f.name!r}") from None
        if not ZERO <= x <= ONE:
            raise FormulaError(f"value of {f.name!r} outside [0, 1]")
        return x
    if isinstance(f, Top):
        return ONE
    if isinstance(f, Bot):
        return ZERO
    if isinstance(f, Imp):
        x = rational_eval(f.left, valuation)
        y = rational_eval(f.right, valuation)
        return min(ONE, ONE - x + y)
    if isinstance(f, Delta):
        return ONE if rational_eval(f.child, valuation) == ONE else ZERO
    raise FormulaError(f"not a formula node: {f!r}")
