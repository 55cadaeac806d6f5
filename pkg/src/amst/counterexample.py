"""A non-normal amst over the natural numbers where maximal satisfiable
extensions exist but compactness fails.

Every natural number satisfies every set of naturals except ``{0}``, the odd
numbers and ``ℕ`` itself.  Sets are handled symbolically as one of three
bases (all naturals, the odds, nothing) with finitely many elements added or
removed.  Claims that quantify over infinitely many sets carry a symbolic
argument and are also spot-checked by enumeration below a bound.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, Iterable

from .errors import ArgumentError, InvariantError

ALL = "all"
ODDS = "odds"
EMPTY = "empty"
_BASES = (ALL, ODDS, EMPTY)


def _in_base(base: str, n: int) -> bool:
    if base == ALL:
        return True
    if base == ODDS:
        return n % 2 == 1
    return False


@dataclass(frozen=True)
class NatSetExpr:
    """``(base ∖ minus) ∪ plus`` in normal form: ``plus`` avoids the base, ``minus`` lies inside it."""

    base: str
    plus: FrozenSet[int] = field(default_factory=frozenset)
    minus: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.base not in _BASES:
            raise ArgumentError(f"unknown base {self.base!r}")
        if any(n < 0 for n in self.plus | self.minus):
            raise ArgumentError("naturals are non-negative")
        if self.plus & self.minus:
            raise InvariantError("plus and minus overlap")
        if any(_in_base(self.base, n) for n in self.plus) or not all(_in_base(self.base, n) for n in self.minus):
            raise InvariantError("expression is not in normal form")

    def __str__(self):
        parts = {ALL: "ℕ", ODDS: "Odds", EMPTY: "∅"}[self.base]
        if self.minus:
            parts += " ∖ {" + ",".join(map(str, sorted(self.minus))) + "}"
        if self.plus:
            parts += " ∪ {" + ",".join(map(str, sorted(self.plus))) + "}"
        return parts


def nat_set(base: str, plus: Iterable[int] = (), minus: Iterable[int] = ()) -> NatSetExpr:
    """Normalize ``(base ∖ minus) ∪ plus``."""
    plus, minus = frozenset(plus), frozenset(minus)
    keep_minus = frozenset(n for n in minus if _in_base(base, n) and n not in plus)
    keep_plus = frozenset(n for n in plus if not _in_base(base, n))
    return NatSetExpr(base, keep_plus, keep_minus)


def finite_set(elements: Iterable[int]) -> NatSetExpr:
    return nat_set(EMPTY, plus=elements)


NATURALS = nat_set(ALL)
ODD_NUMBERS = nat_set(ODDS)
ZERO = finite_set([0])


def expr_member(n: int, e: NatSetExpr) -> bool:
    return n in e.plus or (_in_base(e.base, n) and n not in e.minus)


def expr_equal(e1: NatSetExpr, e2: NatSetExpr) -> bool:
    """Extensional equality.

    Distinct normal forms are distinct sets: the three bases differ on
    infinitely many numbers, so finite edits cannot reconcile them.
    """
    return e1 == e2


_BASE_SUBSET = {(EMPTY, EMPTY), (EMPTY, ODDS), (EMPTY, ALL), (ODDS, ODDS), (ODDS, ALL), (ALL, ALL)}


def expr_subset(e1: NatSetExpr, e2: NatSetExpr) -> bool:
    """``e1 ⊆ e2``.

    If the bases are not nested, infinitely many base elements of ``e1`` lie
    outside ``e2``; otherwise only the finitely many edited numbers can fail.
    """
    if (e1.base, e2.base) not in _BASE_SUBSET:
        return False
    return all(expr_member(n, e2) for n in e1.plus | e2.minus if expr_member(n, e1))


def add(e: NatSetExpr, n: int) -> NatSetExpr:
    return nat_set(e.base, e.plus | {n}, e.minus - {n})


def is_finite(e: NatSetExpr) -> bool:
    return e.base == EMPTY


def elements_below(e: NatSetExpr, bound: int) -> list:
    return [n for n in range(bound) if expr_member(n, e)]


_FORBIDDEN = (ZERO, ODD_NUMBERS, NATURALS)
FINITE_ENUMERATION_LIMIT = 10


def example_satisfies(n: int, gamma: NatSetExpr) -> bool:
    """The satisfaction rule; the model ``n`` plays no part."""
    if n < 0:
        raise ArgumentError("models are naturals")
    return not any(expr_equal(gamma, f) for f in _FORBIDDEN)


def is_satisfiable(gamma: NatSetExpr) -> bool:
    """Some natural satisfies ``gamma``; since the rule ignores the model, ``0`` decides it."""
    return example_satisfies(0, gamma)


def finitely_satisfiable(gamma: NatSetExpr) -> bool:
    """Every finite subset is satisfiable.

    ``{0}`` is the only finite set that fails, so this holds iff ``0 ∉ gamma``.
    """
    return not expr_member(0, gamma)


def _finite_subsets(elements: list):
    for r in range(len(elements) + 1):
        for combo in combinations(elements, r):
            yield finite_set(combo)


def is_maximal_satisfiable_cofinite(k: int) -> bool:
    """``ℕ ∖ {k}`` is satisfiable and its only proper superset, ``ℕ``, is not."""
    co = nat_set(ALL, minus=[k])
    return is_satisfiable(co) and expr_equal(add(co, k), NATURALS) and not is_satisfiable(NATURALS)


def _finsat_by_enumeration(elements: list) -> bool:
    return all(is_satisfiable(sub) for sub in _finite_subsets(elements))


def verify_counterexample(bound: int) -> dict:
    """Check the six claims about the example, each symbolically and by enumeration below ``bound``."""
    if bound < 2:
        raise ArgumentError("bound must be at least 2")
    models = range(bound + 1)
    claims = []

    def claim(ident, statement, justification, checks, ok):
        claims.append(
            {"id": ident, "statement": statement, "justification": justification, "spot_checks": checks, "verified": bool(ok)}
        )

    pair = finite_set([0, 1])
    ok = all(example_satisfies(n, pair) and not example_satisfies(n, ZERO) for n in models)
    claim(
        "i",
        "the amst is not normal: n ⊨ {0,1} while n ⊭ {0}",
        "{0,1} is none of the forbidden sets, {0} is one of them",
        len(models),
        ok,
    )

    ok = not is_satisfiable(ZERO) and not finitely_satisfiable(NATURALS) and expr_member(0, NATURALS)
    claim(
        "ii",
        "ℕ is not finitely satisfiable",
        "{0} is a finite subset of ℕ and no natural satisfies it",
        1,
        ok,
    )

    odds = [n for n in range(bound) if n % 2]
    subsets = list(_finite_subsets(odds))
    ok = finitely_satisfiable(ODD_NUMBERS)
    ok = ok and all(is_satisfiable(s) and not expr_equal(s, ODD_NUMBERS) for s in subsets)
    claim(
        "iii",
        "the odd numbers are finitely satisfiable",
        "a finite set of odds omits 0, so it is not {0}; being finite it is neither the odds nor ℕ",
        len(subsets),
        ok,
    )

    ok = not any(example_satisfies(n, ODD_NUMBERS) for n in models)
    claim(
        "iv",
        "the odd numbers are not satisfiable",
        "the odds are a forbidden set and the rule ignores the model",
        len(models),
        ok,
    )

    ok = all(
        is_maximal_satisfiable_cofinite(k) and all(example_satisfies(n, nat_set(ALL, minus=[k])) for n in models)
        for k in range(bound + 1)
    )
    claim(
        "v",
        "for every k, ℕ ∖ {k} is maximal satisfiable",
        "ℕ ∖ {k} is infinite with an even member, so it is not forbidden; its only proper superset is ℕ, which is forbidden",
        bound + 1,
        ok,
    )

    ok = True
    checked = 0
    finite = list(_finite_subsets(list(range(min(bound, FINITE_ENUMERATION_LIMIT)))))
    symbolic = [ODD_NUMBERS, nat_set(ODDS, minus=[1]), nat_set(ALL, minus=[0]), nat_set(ALL, minus=[0, 3])]
    for gamma in finite + symbolic:
        checked += 1
        fs = finitely_satisfiable(gamma)
        if is_finite(gamma) and fs != _finsat_by_enumeration(sorted(gamma.plus)):
            ok = False
        if fs:
            k = next(n for n in range(max(gamma.plus | gamma.minus, default=0) + 2) if not expr_member(n, gamma))
            if not (expr_subset(gamma, nat_set(ALL, minus=[k])) and is_maximal_satisfiable_cofinite(k)):
                ok = False
    compact_fails = finitely_satisfiable(ODD_NUMBERS) and not is_satisfiable(ODD_NUMBERS)
    claim(
        "vi",
        "every finitely satisfiable set lies in a maximal satisfiable set, yet the amst is not compact",
        "a finitely satisfiable set is not ℕ, so it misses some k and sits inside ℕ ∖ {k}; "
        "the odds are finitely satisfiable but not satisfiable",
        checked,
        ok and compact_fails,
    )
    return {"bound": bound, "claims": claims, "verified": all(c["verified"] for c in claims)}


def report_text(report: dict) -> str:
    lines = [f"counterexample check up to bound {report['bound']}"]
    for c in report["claims"]:
        mark = "ok  " if c["verified"] else "FAIL"
        lines.append(f"  [{mark}] ({c['id']}) {c['statement']}  ({c['spot_checks']} spot checks)")
        lines.append(f"         because {c['justification']}")
    lines.append("all claims verified" if report["verified"] else "some claims failed")
    return "\n".join(lines)
