"""Classical propositional formulas, truth assignments and ultravaluations.

Concrete syntax (loosest binding first): ``<->``, ``->`` (right associative),
``|``, ``&``, prefix ``~``.  ``<->``, ``|`` and ``&`` associate to the left.
Atoms are identifiers matching ``[a-z][a-z0-9_]*``.
"""

import re
from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Sequence, Union

import numpy as np

from .core import FiniteAmst
from .errors import ArgumentError, CapacityError, EvaluationError, ParseError
from .ultra import SetFamily, index_set

MAX_VARIABLES = 10


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


Formula = Union[Var, Not, And, Or, Implies, Iff]
BINARY = (And, Or, Implies, Iff)

_SYMBOL = {Iff: "<->", Implies: "->", Or: "|", And: "&"}
_LEVEL = {Iff: 0, Implies: 1, Or: 2, And: 3}
_PREFIX_LEVEL = 4
_TOKEN = re.compile(r"(<->|->|[|&~()])|([a-z][a-z0-9_]*)")


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode())


def tokenize(text: str) -> list:
    """``(kind, value, byte offset)`` triples; ``kind`` is ``op`` or ``atom``."""
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unknown token {text[pos:pos + 8]!r}", _byte_offset(text, pos))
        kind = "op" if m.group(1) else "atom"
        out.append((kind, m.group(0), _byte_offset(text, pos)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def offset(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text.encode())

    def eat(self, op: str) -> bool:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == op:
            self.i += 1
            return True
        return False

    def parse(self) -> Formula:
        f = self.iff()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()[1]!r}", self.offset())
        return f

    def iff(self) -> Formula:
        f = self.implies()
        while self.eat("<->"):
            f = Iff(f, self.implies())
        return f

    def implies(self) -> Formula:
        f = self.disj()
        if self.eat("->"):
            return Implies(f, self.implies())
        return f

    def disj(self) -> Formula:
        f = self.conj()
        while self.eat("|"):
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.eat("&"):
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        if self.eat("~"):
            return Not(self.unary())
        if self.eat("("):
            f = self.iff()
            if not self.eat(")"):
                raise ParseError("expected ')'", self.offset())
            return f
        tok = self.peek()
        if tok is None or tok[0] != "atom":
            found = "end of input" if tok is None else repr(tok[1])
            raise ParseError(f"expected a formula, found {found}", self.offset())
        self.i += 1
        return Var(tok[1])


def parse_formula(text: str) -> Formula:
    return _Parser(text).parse()


def _level(f: Formula) -> int:
    return _LEVEL.get(type(f), _PREFIX_LEVEL + 1)


def to_text(f: Formula) -> str:
    """Print with the fewest parentheses that parse back to the same tree."""
    if isinstance(f, Var):
        return f.name
    if isinstance(f, Not):
        inner = to_text(f.arg)
        return "~" + (inner if _level(f.arg) > _PREFIX_LEVEL or isinstance(f.arg, Not) else f"({inner})")
    level = _LEVEL[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    right_assoc = isinstance(f, Implies)
    if _level(f.left) < level or (right_assoc and _level(f.left) == level):
        left = f"({left})"
    if _level(f.right) < level or (not right_assoc and _level(f.right) == level):
        right = f"({right})"
    return f"{left} {_SYMBOL[type(f)]} {right}"


def variables_of(f: Formula) -> set:
    if isinstance(f, Var):
        return {f.name}
    if isinstance(f, Not):
        return variables_of(f.arg)
    return variables_of(f.left) | variables_of(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, Var):
        return 0
    if isinstance(f, Not):
        return 1 + depth(f.arg)
    return 1 + max(depth(f.left), depth(f.right))


def evaluate(v: Mapping[str, int], f: Formula) -> int:
    """Classical truth value of ``f`` under ``v`` (0 or 1)."""
    if isinstance(f, Var):
        try:
            return 1 if v[f.name] else 0
        except KeyError:
            raise EvaluationError(f"variable {f.name!r} is not declared") from None
    if isinstance(f, Not):
        return 1 - evaluate(v, f.arg)
    a, b = evaluate(v, f.left), evaluate(v, f.right)
    if isinstance(f, And):
        return a & b
    if isinstance(f, Or):
        return a | b
    if isinstance(f, Implies):
        return (1 - a) | b
    return 1 if a == b else 0


def assignments(variables: Sequence[str]) -> list:
    """All truth assignments; assignment ``k`` makes variable ``j`` true iff bit ``j`` of ``k`` is set."""
    return [{x: (k >> j) & 1 for j, x in enumerate(variables)} for k in range(1 << len(variables))]


def ultravaluation(seq: Sequence[Mapping[str, int]], u: SetFamily) -> dict:
    """``p ↦ 1`` exactly when ``{i : v_i(p) = 1}`` belongs to ``u``."""
    if not seq or len(seq) != u.index_size:
        raise ArgumentError(f"need {u.index_size} assignments, got {len(seq)}")
    names = set(seq[0])
    if any(set(v) != names for v in seq):
        raise ArgumentError("assignments must share one variable list")
    out = {}
    for p in seq[0]:
        ones = sum(1 << i for i, v in enumerate(seq) if v[p])
        out[p] = 1 if ones in u else 0
    return out


def ultravaluation_theorem_check(seq: Sequence[Mapping[str, int]], u: SetFamily, f: Formula) -> bool:
    """``μ(f) = 1`` iff ``{i : v_i(f) = 1} ∈ u``, with ``μ`` the ultravaluation."""
    lhs = evaluate(ultravaluation(seq, u), f) == 1
    rhs = sum(1 << i for i, v in enumerate(seq) if evaluate(v, f)) in u
    return lhs == rhs


def truth_table(variables: Sequence[str], f: Formula) -> int:
    """Bitmask over assignment indices where ``f`` is true."""
    return sum(1 << k for k, v in enumerate(assignments(variables)) if evaluate(v, f))


def formulas_up_to_depth(variables: Sequence[str], max_depth: int) -> Iterator[Formula]:
    """Every formula over ``variables`` with depth at most ``max_depth``."""
    levels = [[Var(x) for x in variables]]
    yield from levels[0]
    seen = list(levels[0])
    for d in range(1, max_depth + 1):
        prev = levels[-1]
        new = [Not(f) for f in prev]
        for op in BINARY:
            for a, b in product(seen, repeat=2):
                if depth(a) == d - 1 or depth(b) == d - 1:
                    new.append(op(a, b))
        yield from new
        levels.append(new)
        seen.extend(new)


def truth_function_representatives(variables: Sequence[str], max_depth: int) -> dict:
    """One formula per truth function expressible with depth at most ``max_depth``.

    Maps truth-table bitmask to the first formula found, building level by
    level; every formula of depth ``d`` has the truth table of some
    combination of representatives from lower levels.
    """
    reps = {}
    for x in variables:
        reps.setdefault(truth_table(variables, Var(x)), Var(x))
    width = 1 << len(variables)
    full = (1 << width) - 1
    combine = {
        And: lambda a, b: a & b,
        Or: lambda a, b: a | b,
        Implies: lambda a, b: (full & ~a) | b,
        Iff: lambda a, b: full & ~(a ^ b),
    }
    for _ in range(max_depth):
        current = list(reps.items())
        found = {}
        for t, f in current:
            found.setdefault(full & ~t, Not(f))
        for op, fn in combine.items():
            for (ta, fa), (tb, fb) in product(current, repeat=2):
                found.setdefault(fn(ta, tb), op(fa, fb))
        for t, f in found.items():
            reps.setdefault(t, f)
    return reps


def valuation_amst(variables: Sequence[str], formulas: Sequence[Formula]) -> FiniteAmst:
    """Normal amst of all assignments (ordered by bitmask) against the given formulas."""
    variables = list(variables)
    if len(variables) > MAX_VARIABLES:
        raise CapacityError(f"at most {MAX_VARIABLES} variables")
    if len(set(variables)) != len(variables):
        raise ArgumentError("duplicate variable names")
    for f in formulas:
        extra = variables_of(f) - set(variables)
        if extra:
            raise EvaluationError(f"undeclared variables {sorted(extra)}")
    rows = assignments(variables)
    matrix = np.array([[bool(evaluate(v, f)) for f in formulas] for v in rows], dtype=bool)
    matrix = matrix.reshape(len(rows), len(formulas))
    labels = ["{" + ",".join(x for x in variables if v[x]) + "}" for v in rows]
    return FiniteAmst.normal([to_text(f) for f in formulas], labels, matrix)


def ultravaluation_sweep(variables: Sequence[str], formulas, max_index: int = 3) -> dict:
    """Check the ultravaluation theorem for every sequence over every ``|I| ≤ max_index``.

    Returns counts plus the first failure ``(formula text, sequence, ultrafilter index)``.
    """
    from .ultra import enumerate_ultrafilters

    rows = assignments(variables)
    tables = [(f, truth_table(variables, f)) for f in formulas]
    checked = 0
    for n in range(1, max_index + 1):
        ultras = enumerate_ultrafilters(n)
        for seq in product(range(len(rows)), repeat=n):
            for j, u in enumerate(ultras):
                mu = ultravaluation([rows[k] for k in seq], u)
                mu_index = sum(1 << b for b, x in enumerate(variables) if mu[x])
                for f, table in tables:
                    checked += 1
                    if bool(table >> mu_index & 1) != (index_set(seq, table) in u):
                        return {"checked": checked, "failure": (to_text(f), seq, j)}
    return {"checked": checked, "failure": None}
