"""Quantifier-free formulas over unary literals, with model enumeration.

Grammar (whitespace insensitive)::

    formula := disj ('->' formula)?          right associative
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | 'P'<int>'(a'<int>')' | '(' formula ')'

Precedence: ! binds tightest, then &, then |, then ->.  Positions in syntax
errors are 1-based character offsets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import FormulaSyntaxError, PureILError
from .language import StateDescription, enumerate_atoms


@dataclass(frozen=True)
class Lit:
    pred: int
    const: int


@dataclass(frozen=True)
class Not:
    arg: "QfFormula"


@dataclass(frozen=True)
class And:
    left: "QfFormula"
    right: "QfFormula"


@dataclass(frozen=True)
class Or:
    left: "QfFormula"
    right: "QfFormula"


@dataclass(frozen=True)
class Implies:
    left: "QfFormula"
    right: "QfFormula"


QfFormula = Lit | Not | And | Or | Implies


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0  # 0-based cursor; reported offsets are 1-based

    def error(self, message: str):
        raise FormulaSyntaxError(message, self.pos + 1)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(f"expected '{token}'")
        self.pos += len(token)

    def integer(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a digit")
        return int(self.text[start : self.pos])

    def formula(self) -> QfFormula:
        left = self.disjunction()
        self.skip_ws()
        if self.text.startswith("->", self.pos):
            self.pos += 2
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> QfFormula:
        node = self.conjunction()
        while True:
            self.skip_ws()
            # '|' but not part of a stray token
            if self.peek() == "|":
                self.pos += 1
                node = Or(node, self.conjunction())
            else:
                return node

    def conjunction(self) -> QfFormula:
        node = self.unary()
        while True:
            self.skip_ws()
            if self.peek() == "&":
                self.pos += 1
                node = And(node, self.unary())
            else:
                return node

    def unary(self) -> QfFormula:
        self.skip_ws()
        c = self.peek()
        if c == "!":
            self.pos += 1
            return Not(self.unary())
        if c == "(":
            self.pos += 1
            node = self.formula()
            self.expect(")")
            return node
        if c == "P":
            self.pos += 1
            pred = self.integer()
            self.expect("(")
            self.expect("a")
            const = self.integer()
            self.expect(")")
            if pred < 1:
                self.error("predicate indices start at 1")
            if const < 1:
                self.error("constant indices start at 1")
            return Lit(pred, const)
        self.error("expected '!', '(' or a literal like P1(a1)")


def parse_formula(text: str) -> QfFormula:
    parser = _Parser(text)
    node = parser.formula()
    parser.skip_ws()
    if parser.pos != len(text):
        parser.error("unexpected trailing input")
    return node


_PRECEDENCE = {Implies: 1, Or: 2, And: 3, Not: 4, Lit: 5}


def print_formula(phi: QfFormula) -> str:
    """Canonical text form; parse(print(parse(s))) == parse(s)."""

    def render(node: QfFormula, parent_level: int) -> str:
        level = _PRECEDENCE[type(node)]
        if isinstance(node, Lit):
            text = f"P{node.pred}(a{node.const})"
        elif isinstance(node, Not):
            text = "!" + render(node.arg, level)
        elif isinstance(node, And):
            text = f"{render(node.left, level)} & {render(node.right, level + 1)}"
        elif isinstance(node, Or):
            text = f"{render(node.left, level)} | {render(node.right, level + 1)}"
        else:
            text = f"{render(node.left, level + 1)} -> {render(node.right, level)}"
        return f"({text})" if level < parent_level else text

    return render(phi, 0)


def mentioned_predicates(phi: QfFormula) -> set[int]:
    if isinstance(phi, Lit):
        return {phi.pred}
    if isinstance(phi, Not):
        return mentioned_predicates(phi.arg)
    return mentioned_predicates(phi.left) | mentioned_predicates(phi.right)


def mentioned_constants(phi: QfFormula) -> set[int]:
    if isinstance(phi, Lit):
        return {phi.const}
    if isinstance(phi, Not):
        return mentioned_constants(phi.arg)
    return mentioned_constants(phi.left) | mentioned_constants(phi.right)


def _holds(phi: QfFormula, q: int, assignment: dict[int, tuple[int, ...]]) -> bool:
    """Truth of phi when each constant carries the atom sign vector given."""
    if isinstance(phi, Lit):
        return assignment[phi.const][phi.pred - 1] == 1
    if isinstance(phi, Not):
        return not _holds(phi.arg, q, assignment)
    if isinstance(phi, And):
        return _holds(phi.left, q, assignment) and _holds(phi.right, q, assignment)
    if isinstance(phi, Or):
        return _holds(phi.left, q, assignment) or _holds(phi.right, q, assignment)
    return (not _holds(phi.left, q, assignment)) or _holds(phi.right, q, assignment)


def satisfying_descriptions(
    phi: QfFormula, q: int, constants: list[int]
) -> set[StateDescription]:
    """All state descriptions over `constants` that satisfy phi.

    The description's j-th entry belongs to the j-th listed constant.
    `constants` must cover every constant mentioned in phi, and every
    mentioned predicate index must be <= q.
    """
    preds = mentioned_predicates(phi)
    if preds and max(preds) > q:
        raise PureILError(f"predicate index {max(preds)} exceeds language level {q}")
    missing = mentioned_constants(phi) - set(constants)
    if missing:
        raise PureILError(f"constants {sorted(missing)} mentioned but not in the window")
    if len(set(constants)) != len(constants):
        raise PureILError("constant window contains duplicates")

    table = enumerate_atoms(q)
    out: set[StateDescription] = set()
    for h in itertools.product(range(1, 2 ** q + 1), repeat=len(constants)):
        assignment = {c: table.atoms[a - 1] for c, a in zip(constants, h)}
        if _holds(phi, q, assignment):
            out.add(StateDescription(q, h))
    return out
