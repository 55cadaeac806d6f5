"""Encodings of information systems, Chu spaces, quivers, logical structures and
object-free categories as amsts, with validators for their defining axioms.

Every structure here is finite and indexes its elements ``0..n-1``; labels are
kept only for display and for the JSON formats.  Validators return a mapping
from axiom label to :class:`Check`; converters raise :class:`AxiomViolation`
carrying the first failing label and its witness.
"""

from dataclasses import dataclass
from itertools import product
from typing import Optional, Sequence

import numpy as np

from .bits import bits, full_mask, popcount, submasks
from .consequence import LogicalStructure
from .core import GENERAL_MAX_SENTENCES, TABLE_MAX_SENTENCES, FiniteAmst
from .errors import ArgumentError, AxiomViolation, CapacityError, EmptinessError
from .report import Check

MAX_QUIVER_VERTICES = 4
MAX_MORPHISMS = TABLE_MAX_SENTENCES


def _first_failure(report: dict):
    for label, check in report.items():
        if not check:
            raise AxiomViolation(label, check.witness)


# Information systems -------------------------------------------------------


@dataclass(frozen=True)
class InformationSystem:
    """Tokens with consistent sets ``con`` (bitmasks) and entailment pairs ``(X, a)``."""

    tokens: tuple
    con: frozenset
    entail: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(str(t) for t in self.tokens))
        object.__setattr__(self, "con", frozenset(int(x) for x in self.con))
        object.__setattr__(self, "entail", frozenset((int(x), int(a)) for x, a in self.entail))
        if len(self.tokens) > GENERAL_MAX_SENTENCES:
            raise CapacityError(f"at most {GENERAL_MAX_SENTENCES} tokens")
        full = full_mask(len(self.tokens))
        for x in self.con:
            if not 0 <= x <= full:
                raise ArgumentError(f"consistent set {x:#x} uses unknown tokens")
        for x, a in self.entail:
            if not 0 <= x <= full or not 0 <= a < len(self.tokens):
                raise ArgumentError(f"entailment ({x:#x}, {a}) uses unknown tokens")

    def entails(self, x: int, a: int) -> bool:
        return (x, a) in self.entail


def validate_information_system(info: InformationSystem) -> dict:
    """Axioms ``a``..``e`` plus the shape conditions ``con_nonempty`` and ``domain``."""
    n = len(info.tokens)
    con = info.con
    report = {"con_nonempty": Check(bool(con))}
    bad = next(((x, a) for x, a in sorted(info.entail) if x == 0 or x not in con), None)
    report["domain"] = Check(bad is None, bad)
    bad = next(((y, x) for y in sorted(con) for x in submasks(y) if x not in con), None)
    report["a"] = Check(bad is None, bad)
    bad = next((a for a in range(n) if 1 << a not in con), None)
    report["b"] = Check(bad is None, bad)
    bad = next(((x, a) for x, a in sorted(info.entail) if x | 1 << a not in con), None)
    report["c"] = Check(bad is None, bad)
    bad = next(((x, a) for x in sorted(con) if x for a in bits(x) if not info.entails(x, a)), None)
    report["d"] = Check(bad is None, bad)
    report["e"] = Check(True)
    for x, y in product(sorted(con), repeat=2):
        if all(info.entails(x, b) for b in bits(y)):
            c = next((c for c in range(n) if info.entails(y, c) and not info.entails(x, c)), None)
            if c is not None:
                report["e"] = Check(False, (x, y, c))
                break
    return report


def info_system_to_amst(info: InformationSystem) -> FiniteAmst:
    """Tokens as models and as sentences; token ``a`` satisfies ``Γ`` iff ``Γ`` entails ``a``.

    Sets outside ``con`` (including ∅) are satisfied by no token.
    """
    _first_failure(validate_information_system(info))
    n = len(info.tokens)
    table = np.zeros((n, 1 << n), dtype=bool)
    for x, a in info.entail:
        table[a, x] = True
    return FiniteAmst.general(info.tokens, info.tokens, table)


# Chu spaces ---------------------------------------------------------------


@dataclass(frozen=True)
class ChuSpace:
    """``r[x][a]`` is an index into ``alphabet``."""

    points: tuple
    attributes: tuple
    alphabet: tuple
    r: tuple

    def __post_init__(self):
        for name in ("points", "attributes", "alphabet"):
            object.__setattr__(self, name, tuple(str(v) for v in getattr(self, name)))
        r = tuple(tuple(int(k) for k in row) for row in self.r)
        object.__setattr__(self, "r", r)
        if len(r) != len(self.points) or any(len(row) != len(self.attributes) for row in r):
            raise ArgumentError("r must be a |X| x |A| table")
        if any(not 0 <= k < len(self.alphabet) for row in r for k in row):
            raise ArgumentError("r takes a value outside the alphabet")


def chu_to_amst(chu: ChuSpace) -> FiniteAmst:
    """Models are pairs ``(x, a)`` in row-major order; each satisfies only ``{r(x, a)}``."""
    if not chu.points or not chu.attributes:
        raise EmptinessError("X x A is empty, so the amst would have no models")
    labels = [f"({x},{a})" for x in chu.points for a in chu.attributes]
    table = np.zeros((len(labels), 1 << len(chu.alphabet)), dtype=bool)
    for i, (row, col) in enumerate(product(range(len(chu.points)), range(len(chu.attributes)))):
        table[i, 1 << chu.r[row][col]] = True
    return FiniteAmst.general(chu.alphabet, labels, table)


# Quivers ------------------------------------------------------------------


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    edges: tuple
    source: tuple
    target: tuple

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(str(e) for e in self.edges))
        object.__setattr__(self, "source", tuple(int(v) for v in self.source))
        object.__setattr__(self, "target", tuple(int(v) for v in self.target))
        if len(self.source) != len(self.edges) or len(self.target) != len(self.edges):
            raise ArgumentError("source and target must be given for every edge")
        if any(not 0 <= v < len(self.vertices) for v in self.source + self.target):
            raise ArgumentError("an edge endpoint is not a vertex")


def pair_labels(vertices: Sequence[str]) -> list:
    """Sentence labels for ``V x V`` in row-major order."""
    return [f"({a},{b})" for a in vertices for b in vertices]


def quiver_to_amst(q: Quiver) -> FiniteAmst:
    """Edges as models over sentences ``V x V``; edge ``e`` satisfies only ``{(s(e), t(e))}``."""
    if len(q.vertices) > MAX_QUIVER_VERTICES:
        raise CapacityError(f"|V x V| must stay within {GENERAL_MAX_SENTENCES} sentences")
    if not q.edges:
        raise EmptinessError("a quiver without edges gives an amst without models")
    n = len(q.vertices)
    table = np.zeros((len(q.edges), 1 << (n * n)), dtype=bool)
    for e, (s, t) in enumerate(zip(q.source, q.target)):
        table[e, 1 << (s * n + t)] = True
    return FiniteAmst.general(pair_labels(q.vertices), q.edges, table)


def amst_to_quiver(amst: FiniteAmst, vertices: Sequence[str]) -> Quiver:
    """Read back source and target from the unique pair singleton each edge satisfies."""
    vertices = [str(v) for v in vertices]
    n = len(vertices)
    if list(amst.sentence_labels) != pair_labels(vertices):
        raise ArgumentError("sentences must be the pairs of V x V in row-major order")
    general = amst.to_general()
    source, target = [], []
    for e in range(amst.n_models):
        hits = [p for p in range(n * n) if general.matrix[e, 1 << p]]
        if len(hits) != 1:
            raise AxiomViolation("uniqueness", (amst.model_labels[e], hits))
        source.append(hits[0] // n)
        target.append(hits[0] % n)
    return Quiver(tuple(vertices), amst.model_labels, tuple(source), tuple(target))


# Logical structures -------------------------------------------------------


def logical_structure_to_amst(ls: LogicalStructure) -> FiniteAmst:
    """Sentences double as models: ``α`` satisfies ``Γ`` iff ``Γ`` does not entail ``α``."""
    if ls.n_sentences == 0:
        raise EmptinessError("an empty language gives an amst without models")
    table = ~ls.turnstile.T
    return FiniteAmst.general(ls.sentence_labels, ls.sentence_labels, table)


def amst_to_logical_structure(amst: FiniteAmst) -> LogicalStructure:
    """``Γ`` entails ``α`` iff ``α`` does not satisfy ``Γ``; needs models equal to sentences."""
    if amst.model_labels != amst.sentence_labels:
        raise ArgumentError("model labels must equal sentence labels, in the same order")
    if amst.n_sentences > TABLE_MAX_SENTENCES:
        raise CapacityError(f"consequence tables need |L| <= {TABLE_MAX_SENTENCES}")
    table = ~amst.to_general().matrix.T
    return LogicalStructure(amst.sentence_labels, table)


# Object-free categories ----------------------------------------------------


@dataclass(frozen=True)
class ObjectFreeCategory:
    """``compose[g][f]`` is the index of ``g ∘ f``, or ``None`` when undefined."""

    morphisms: tuple
    compose: tuple

    def __post_init__(self):
        object.__setattr__(self, "morphisms", tuple(str(m) for m in self.morphisms))
        n = len(self.morphisms)
        table = tuple(tuple(None if v is None else int(v) for v in row) for row in self.compose)
        if len(table) != n or any(len(row) != n for row in table):
            raise ArgumentError("composition table must be |M| x |M|")
        if any(v is not None and not 0 <= v < n for row in table for v in row):
            raise ArgumentError("composition lands outside M")
        object.__setattr__(self, "compose", table)

    @property
    def size(self) -> int:
        return len(self.morphisms)

    def defined(self, g: int, f: int) -> bool:
        return self.compose[g][f] is not None


def units(c: ObjectFreeCategory) -> list:
    """Morphisms ``u`` with ``x ∘ u = x`` and ``u ∘ y = y`` wherever defined."""
    out = []
    for u in range(c.size):
        right = all(c.compose[x][u] in (None, x) for x in range(c.size))
        left = all(c.compose[u][y] in (None, y) for y in range(c.size))
        if right and left:
            out.append(u)
    return out


def validate_object_free_category(c: ObjectFreeCategory) -> dict:
    """Matching (``a_P``), associativity (``b_P``) and unit existence (``c_P``)."""
    comp = c.compose
    report = {"a_P": Check(True), "b_P": Check(True)}
    for f, g, h in product(range(c.size), repeat=3):
        gf, hg = comp[g][f], comp[h][g]
        both = gf is not None and hg is not None
        left = gf is not None and comp[h][gf] is not None
        right = hg is not None and comp[hg][f] is not None
        if not both == left == right:
            if report["a_P"]:
                report["a_P"] = Check(False, (f, g, h))
            continue
        if both and comp[h][gf] != comp[hg][f] and report["b_P"]:
            report["b_P"] = Check(False, (f, g, h))
    us = units(c)
    bad = next((f for f in range(c.size) if not any(c.defined(u, f) for u in us) or not any(c.defined(f, u) for u in us)), None)
    report["c_P"] = Check(bad is None, bad)
    return report


def composition_pairs(morphisms: Sequence[str]) -> list:
    return [f"({m},{n})" for m in morphisms for n in morphisms]


def category_to_amst(c: ObjectFreeCategory) -> FiniteAmst:
    """Models are pairs ``(m, n)``; ``(m, n)`` satisfies only ``{m ∘ n}`` when it is defined."""
    _first_failure(validate_object_free_category(c))
    if c.size > MAX_MORPHISMS:
        raise CapacityError(f"at most {MAX_MORPHISMS} morphisms")
    return _composition_amst(c)


def _composition_amst(c: ObjectFreeCategory) -> FiniteAmst:
    if c.size == 0:
        raise EmptinessError("a category without morphisms gives an amst without models")
    table = np.zeros((c.size * c.size, 1 << c.size), dtype=bool)
    for m, n in product(range(c.size), repeat=2):
        if c.compose[m][n] is not None:
            table[m * c.size + n, 1 << c.compose[m][n]] = True
    return FiniteAmst.general(c.morphisms, composition_pairs(c.morphisms), table)


class _PairAmst:
    """Satisfaction of singletons by pairs, read from an amst over ``M x M``."""

    def __init__(self, amst: FiniteAmst):
        n = amst.n_sentences
        if amst.n_models != n * n or list(amst.model_labels) != composition_pairs(amst.sentence_labels):
            raise ArgumentError("models must be the pairs of M x M in row-major order")
        self.n = n
        self.table = amst.to_general().matrix

    def singles(self, x: int, y: int) -> list:
        return [k for k in range(self.n) if self.table[x * self.n + y, 1 << k]]

    def product(self, x: int, y: int) -> Optional[int]:
        """The unique ``l`` with ``(x, y) ⊨ {l}``, or ``None``."""
        hits = self.singles(x, y)
        return hits[0] if len(hits) == 1 else None


def _is_identity(p: _PairAmst, u: int) -> bool:
    for g in range(p.n):
        if any(k != g for k in p.singles(u, g)) or any(k != g for k in p.singles(g, u)):
            return False
    return True


def validate_category_amst(amst: FiniteAmst) -> dict:
    """Conditions ``a_M`` (only singletons satisfied), ``b_M`` (composition coherence) and
    ``c_M`` (identities on both sides of every morphism)."""
    p = _PairAmst(amst)
    n = p.n
    report = {}
    bad = None
    for i in range(n * n):
        gamma = next((g for g in range(1 << n) if p.table[i, g] and popcount(g) != 1), None)
        if gamma is not None:
            bad = (amst.model_labels[i], gamma)
            break
    report["a_M"] = Check(bad is None, bad)
    report["b_M"] = Check(True)
    for f, g, h in product(range(n), repeat=3):
        x, y = p.product(g, f), p.product(h, g)
        both = x is not None and y is not None
        left = x is not None and p.product(h, x) is not None
        right = y is not None and p.product(y, f) is not None
        if not both == left == right or (both and p.product(h, x) != p.product(y, f)):
            report["b_M"] = Check(False, (f, g, h))
            break
    ids = [u for u in range(n) if _is_identity(p, u)]
    bad = next(
        (f for f in range(n) if not any(f in p.singles(u, f) for u in ids) or not any(f in p.singles(f, u) for u in ids)),
        None,
    )
    report["c_M"] = Check(bad is None, bad)
    return report


def amst_to_category(amst: FiniteAmst) -> ObjectFreeCategory:
    """Partial operation ``x ⊙ y = l`` for the unique ``l`` with ``(x, y) ⊨ {l}``.

    The result is re-validated as an object-free category; a failure there
    means the conditions on the amst did not transfer and raises an
    :class:`AxiomViolation` labelled with the category axiom.
    """
    _first_failure(validate_category_amst(amst))
    p = _PairAmst(amst)
    table = tuple(tuple(p.product(x, y) for y in range(p.n)) for x in range(p.n))
    category = ObjectFreeCategory(amst.sentence_labels, table)
    _first_failure(validate_object_free_category(category))
    return category


# Random instances -----------------------------------------------------------


def monoid_category(elements: Sequence[str], table) -> ObjectFreeCategory:
    """A one-object category: every composite is defined."""
    return ObjectFreeCategory(tuple(elements), tuple(tuple(row) for row in table))


def random_monoid_category(rng: np.random.Generator, max_size: int = 8) -> ObjectFreeCategory:
    """Submonoid of the transformations of a 3-element set generated by random maps.

    Retries with fewer generators until the monoid has at most ``max_size`` elements.
    """
    while True:
        gens = [tuple(int(v) for v in rng.integers(3, size=3)) for _ in range(int(rng.integers(1, 3)))]
        identity = (0, 1, 2)
        elems = [identity]
        frontier = [identity]
        while frontier and len(elems) <= max_size:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = tuple(g[a[i]] for i in range(3))
                    if b not in elems:
                        elems.append(b)
                        nxt.append(b)
            frontier = nxt
        if len(elems) <= max_size:
            break
    index = {e: i for i, e in enumerate(elems)}
    # g ∘ f applies f first, then g
    table = [[index[tuple(g[f[i]] for i in range(3))] for f in elems] for g in elems]
    names = ["".join(map(str, e)) for e in elems]
    return monoid_category(names, table)


def poset_category(leq: set) -> ObjectFreeCategory:
    """Category of a finite poset: one arrow ``(a, b)`` per ``a ≤ b``, composed end to end."""
    arrows = sorted(leq)
    index = {a: i for i, a in enumerate(arrows)}
    table = []
    for g in arrows:
        row = []
        for f in arrows:
            row.append(index[(f[0], g[1])] if f[1] == g[0] else None)
        table.append(row)
    return ObjectFreeCategory([f"{a}<={b}" for a, b in arrows], table)


def random_poset_category(rng: np.random.Generator, max_points: int = 4) -> ObjectFreeCategory:
    """Transitive-reflexive closure of a random DAG on a shuffled vertex order."""
    n = int(rng.integers(1, max_points + 1))
    order = [int(v) for v in rng.permutation(n)]
    rel = {(a, a) for a in range(n)}
    for i, j in product(range(n), repeat=2):
        if i < j and rng.random() < 0.4:
            rel.add((order[i], order[j]))
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in product(list(rel), repeat=2):
            if b == c and (a, d) not in rel:
                rel.add((a, d))
                changed = True
    return poset_category(rel)


def random_quiver(rng: np.random.Generator, max_vertices: int = MAX_QUIVER_VERTICES, max_edges: int = 6) -> Quiver:
    n = int(rng.integers(1, max_vertices + 1))
    m = int(rng.integers(1, max_edges + 1))
    return Quiver(
        tuple(f"v{i}" for i in range(n)),
        tuple(f"e{i}" for i in range(m)),
        tuple(int(v) for v in rng.integers(n, size=m)),
        tuple(int(v) for v in rng.integers(n, size=m)),
    )


def random_logical_structure(rng: np.random.Generator, max_sentences: int = 5) -> LogicalStructure:
    """Arbitrary turnstile table (not necessarily Tarski-type)."""
    n = int(rng.integers(1, max_sentences + 1))
    return LogicalStructure(tuple(f"s{i}" for i in range(n)), rng.random((1 << n, n)) < 0.5)


# Documented broken fixtures -------------------------------------------------


def _minimal_info_system() -> InformationSystem:
    """Tokens ``a, b``; every subset consistent; ``X`` entails exactly its own members."""
    con = frozenset(range(4))
    entail = frozenset((x, a) for x in range(1, 4) for a in bits(x))
    return InformationSystem(("a", "b"), con, entail)


def _two_arrow_category() -> ObjectFreeCategory:
    """``f: u → v`` with identities ``1u`` and ``1v``."""
    return ObjectFreeCategory(("1u", "1v", "f"), ((0, None, None), (None, 1, 2), (2, None, None)))


def _broken_z3() -> ObjectFreeCategory:
    """Addition mod 3 with ``1 + 1`` sent to ``0``: every composite defined, associativity lost."""
    table = [[(a + b) % 3 for b in range(3)] for a in range(3)]
    table[1][1] = 0
    return ObjectFreeCategory(("0", "1", "2"), table)


def _left_zero_semigroup() -> ObjectFreeCategory:
    """``x ∘ y = x`` on two elements: associative, but no element is a unit."""
    return ObjectFreeCategory(("x", "y"), ((0, 0), (1, 1)))


def broken_fixtures() -> list:
    """``(name, thunk, expected label)``: each thunk must raise :class:`AxiomViolation` with that label."""
    base = _minimal_info_system()
    out = []

    def info_variant(con=None, entail=None):
        return InformationSystem(base.tokens, base.con if con is None else con, base.entail if entail is None else entail)

    out.append(("info_not_downward_closed", lambda: info_system_to_amst(info_variant(con=frozenset({1, 2, 3}))), "a"))
    out.append(
        (
            "info_missing_singleton",
            lambda: info_system_to_amst(InformationSystem(("a", "b", "c"), base.con, base.entail)),
            "b",
        )
    )
    out.append(
        (
            "info_entails_into_inconsistency",
            lambda: info_system_to_amst(info_variant(con=frozenset({0, 1, 2}), entail=frozenset({(1, 0), (2, 1), (1, 1)}))),
            "c",
        )
    )
    out.append(("info_not_reflexive", lambda: info_system_to_amst(info_variant(entail=base.entail - {(1, 0)})), "d"))

    def not_transitive():
        # {a} ⊢ b and {b} ⊢ c, but not {a} ⊢ c
        reflexive = {(x, t) for x in range(1, 8) for t in bits(x)}
        return info_system_to_amst(InformationSystem(("a", "b", "c"), range(8), reflexive | {(1, 1), (2, 2)}))

    out.append(("info_not_transitive", not_transitive, "e"))

    def two_singletons():
        q = Quiver(("u", "v"), ("e",), (0,), (1,))
        table = quiver_to_amst(q).matrix.copy()
        table[0, 1 << 0] = True
        return amst_to_quiver(FiniteAmst.general(pair_labels(q.vertices), q.edges, table), q.vertices)

    out.append(("quiver_edge_two_singletons", two_singletons, "uniqueness"))

    def unmatched():
        c = _two_arrow_category()
        table = [list(row) for row in c.compose]
        table[1][0] = 0
        return category_to_amst(ObjectFreeCategory(c.morphisms, table))

    out.append(("category_matching", unmatched, "a_P"))

    def non_associative():
        return category_to_amst(_broken_z3())

    out.append(("category_associativity", non_associative, "b_P"))

    def no_units():
        return category_to_amst(ObjectFreeCategory(("f",), ((None,),)))

    out.append(("category_units", no_units, "c_P"))

    def pair_sets_not_singletons():
        a = category_to_amst(_two_arrow_category())
        table = a.matrix.copy()
        table[0, 0b011] = True
        return amst_to_category(FiniteAmst.general(a.sentence_labels, a.model_labels, table))

    out.append(("category_amst_non_singleton", pair_sets_not_singletons, "a_M"))

    def incoherent():
        return amst_to_category(_composition_amst(_broken_z3()))

    out.append(("category_amst_incoherent", incoherent, "b_M"))

    def no_identity():
        return amst_to_category(_composition_amst(_left_zero_semigroup()))

    out.append(("category_amst_no_identity", no_identity, "c_M"))
    return out
