"""Finite abstract model structures and their Mod/Th operators.

Sentence sets and model sets are bitmasks (Python ints): bit ``k`` of a
sentence set stands for sentence ``k``.  Two satisfaction representations are
supported:

* ``normal`` -- an ``|M| x |L|`` boolean matrix; ``m ⊨ Γ`` is the conjunction
  of ``matrix[m, α]`` over ``α ∈ Γ``.
* ``general`` -- an ``|M| x 2**|L|`` table giving ``m ⊨ Γ`` for every ``Γ``
  (column index is the subset bitmask).
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

import numpy as np

from .bits import bits, full_mask, is_subset, lowest, submasks_by_size
from .errors import ArgumentError, CapacityError, PreconditionError
from .report import Check, Verdict, VACUOUS, verdict

NORMAL = "normal"
GENERAL = "general"

GENERAL_MAX_SENTENCES = 16
TABLE_MAX_SENTENCES = 12


@dataclass(frozen=True, eq=False)
class FiniteAmst:
    sentence_labels: tuple
    model_labels: tuple
    kind: str
    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "sentence_labels", tuple(str(s) for s in self.sentence_labels))
        object.__setattr__(self, "model_labels", tuple(str(m) for m in self.model_labels))
        mat = np.array(self.matrix, dtype=bool)
        n_m, n_l = len(self.model_labels), len(self.sentence_labels)
        if n_m < 1:
            raise ArgumentError("an amst needs at least one model")
        if self.kind == NORMAL:
            expected = (n_m, n_l)
        elif self.kind == GENERAL:
            if n_l > GENERAL_MAX_SENTENCES:
                raise CapacityError(f"general tables allow at most {GENERAL_MAX_SENTENCES} sentences")
            expected = (n_m, 1 << n_l)
        else:
            raise ArgumentError(f"unknown kind {self.kind!r}")
        mat = mat.reshape(expected) if mat.size == 0 else mat
        if mat.shape != expected:
            raise ArgumentError(f"matrix shape {mat.shape} != {expected}")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def normal(cls, sentences: Sequence, models: Sequence, matrix) -> "FiniteAmst":
        return cls(tuple(sentences), tuple(models), NORMAL, matrix)

    @classmethod
    def general(cls, sentences: Sequence, models: Sequence, table) -> "FiniteAmst":
        return cls(tuple(sentences), tuple(models), GENERAL, table)

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_labels)

    @property
    def n_models(self) -> int:
        return len(self.model_labels)

    @property
    def all_sentences(self) -> int:
        return full_mask(self.n_sentences)

    @property
    def all_models(self) -> int:
        return full_mask(self.n_models)

    def sentences(self, *labels) -> int:
        """Bitmask of the named sentences."""
        try:
            return sum(1 << self.sentence_labels.index(str(s)) for s in set(labels))
        except ValueError as exc:
            raise ArgumentError(str(exc)) from None

    def models(self, *labels) -> int:
        """Bitmask of the named models."""
        try:
            return sum(1 << self.model_labels.index(str(m)) for m in set(labels))
        except ValueError as exc:
            raise ArgumentError(str(exc)) from None

    @cached_property
    def single_mods(self) -> tuple:
        """``Mod({α})`` for each sentence, as model bitmasks."""
        if self.kind == NORMAL:
            cols = [self.matrix[:, a] for a in range(self.n_sentences)]
        else:
            cols = [self.matrix[:, 1 << a] for a in range(self.n_sentences)]
        return tuple(_pack(c) for c in cols)

    @cached_property
    def single_theories(self) -> tuple:
        """``Th({m})`` for each model, as sentence bitmasks."""
        out = []
        for m in range(self.n_models):
            out.append(sum(1 << a for a, mod in enumerate(self.single_mods) if mod >> m & 1))
        return tuple(out)

    @cached_property
    def mod_table(self) -> tuple:
        """``Mod(Γ)`` for every ``Γ`` indexed by bitmask (needs |L| <= 16)."""
        n = self.n_sentences
        if n > GENERAL_MAX_SENTENCES:
            raise CapacityError(f"mod table needs |L| <= {GENERAL_MAX_SENTENCES}")
        if self.kind == GENERAL:
            return tuple(_pack(self.matrix[:, g]) for g in range(1 << n))
        table = [0] * (1 << n)
        table[0] = self.all_models
        for g in range(1, 1 << n):
            low = g & -g
            table[g] = table[g ^ low] & self.single_mods[low.bit_length() - 1]
        return tuple(table)

    def __eq__(self, other):
        if not isinstance(other, FiniteAmst):
            return NotImplemented
        return (
            self.kind == other.kind
            and self.sentence_labels == other.sentence_labels
            and self.model_labels == other.model_labels
            and np.array_equal(self.matrix, other.matrix)
        )

    def __hash__(self):
        return hash((self.kind, self.sentence_labels, self.model_labels, self.matrix.tobytes()))

    def restrict(self, models: Sequence[int], sentences: Sequence[int]) -> "FiniteAmst":
        """Sub-amst on the given model and sentence indices (order preserved)."""
        models, sentences = list(models), list(sentences)
        labels_m = [self.model_labels[m] for m in models]
        labels_l = [self.sentence_labels[a] for a in sentences]
        if self.kind == NORMAL:
            return FiniteAmst.normal(labels_l, labels_m, self.matrix[np.ix_(models, sentences)])
        cols = []
        for g in range(1 << len(sentences)):
            cols.append(sum(1 << sentences[j] for j in bits(g)))
        return FiniteAmst.general(labels_l, labels_m, self.matrix[np.ix_(models, cols)])

    def to_general(self) -> "FiniteAmst":
        """Same satisfaction relation tabulated over every subset."""
        if self.kind == GENERAL:
            return self
        n = self.n_sentences
        table = np.zeros((self.n_models, 1 << n), dtype=bool)
        for g in range(1 << n):
            table[:, g] = _unpack(self.mod_table[g], self.n_models)
        return FiniteAmst.general(self.sentence_labels, self.model_labels, table)


def _pack(column) -> int:
    return sum(1 << i for i, v in enumerate(column) if v)


def _unpack(mask: int, n: int) -> np.ndarray:
    return np.array([bool(mask >> i & 1) for i in range(n)], dtype=bool)


def _check_sentences(amst: FiniteAmst, gamma: int):
    if gamma < 0 or gamma >> amst.n_sentences:
        raise ArgumentError(f"sentence set {gamma:#x} outside L (|L|={amst.n_sentences})")


def _check_models(amst: FiniteAmst, x: int):
    if x < 0 or x >> amst.n_models:
        raise ArgumentError(f"model set {x:#x} outside M (|M|={amst.n_models})")


def satisfies(amst: FiniteAmst, m: int, gamma: int) -> bool:
    if not 0 <= m < amst.n_models:
        raise ArgumentError(f"model index {m} out of range")
    _check_sentences(amst, gamma)
    if amst.kind == GENERAL:
        return bool(amst.matrix[m, gamma])
    return all(amst.matrix[m, a] for a in bits(gamma))


def mod_of(amst: FiniteAmst, gamma: int) -> int:
    _check_sentences(amst, gamma)
    if amst.n_sentences <= GENERAL_MAX_SENTENCES:
        return amst.mod_table[gamma]
    out = amst.all_models
    for a in bits(gamma):
        out &= amst.single_mods[a]
    return out


def th_of(amst: FiniteAmst, x: int) -> int:
    _check_models(amst, x)
    out = amst.all_sentences
    for m in bits(x):
        out &= amst.single_theories[m]
    return out


def is_normal(amst: FiniteAmst) -> Check:
    """Whether ``m ⊨ Γ`` iff ``m ⊨ {α}`` for all ``α ∈ Γ``; witness ``(m, Γ)``."""
    if amst.kind == NORMAL:
        return Check(True)
    singles = amst.single_mods
    for g in range(1 << amst.n_sentences):
        conj = amst.all_models
        for a in bits(g):
            conj &= singles[a]
        diff = conj ^ amst.mod_table[g]
        if diff:
            m = lowest(diff)
            if amst.mod_table[g] >> m & 1:
                # m ⊨ Γ yet fails some member: name that singleton
                a = next(a for a in bits(g) if not singles[a] >> m & 1)
                return Check(False, (m, 1 << a))
            return Check(False, (m, g))
    return Check(True)


def is_satisfiable(amst: FiniteAmst, gamma: int) -> Optional[int]:
    """Lowest-index model satisfying ``gamma``, or ``None``."""
    mods = mod_of(amst, gamma)
    return lowest(mods) if mods else None


def is_finitely_satisfiable(amst: FiniteAmst, gamma: int) -> Check:
    """All (finite) subsets satisfiable; witness is a smallest unsatisfiable subset."""
    _check_sentences(amst, gamma)
    for sub in submasks_by_size(gamma):
        if not mod_of(amst, sub):
            return Check(False, sub)
    return Check(True)


def finsat_table(amst: FiniteAmst) -> list:
    """Finite satisfiability of every subset of L, by subset DP.

    ``Γ`` is finitely satisfiable iff it is satisfiable and every ``Γ∖{α}`` is.
    """
    n = amst.n_sentences
    mods = amst.mod_table
    out = [False] * (1 << n)
    for g in range(1 << n):
        if not mods[g]:
            continue
        out[g] = all(out[g ^ (1 << a)] for a in bits(g))
    return out


def is_compact(amst: FiniteAmst) -> Check:
    """Satisfiable iff finitely satisfiable, for every ``Γ ⊆ L``; witness ``Γ``."""
    mods = amst.mod_table
    fin = finsat_table(amst)
    for g in range(1 << amst.n_sentences):
        if bool(mods[g]) != fin[g]:
            return Check(False, g)
    return Check(True)


def is_complete_set(amst: FiniteAmst, gamma: int) -> bool:
    mods = mod_of(amst, gamma)
    if not mods:
        return False
    for single in amst.single_mods:
        if not (is_subset(mods, single) or mods & single == 0):
            return False
    return True


def maximal_finitely_satisfiable_extension(amst: FiniteAmst, gamma: int) -> int:
    """Greedy index-order extension of ``gamma`` to a maximal finitely satisfiable set.

    One pass suffices: finite satisfiability is closed under subsets, so a
    sentence rejected early stays rejected once more sentences are added.
    """
    if not is_finitely_satisfiable(amst, gamma):
        raise PreconditionError("gamma is not finitely satisfiable")
    delta = gamma
    for a in range(amst.n_sentences):
        if not delta >> a & 1 and is_finitely_satisfiable(amst, delta | 1 << a):
            delta |= 1 << a
    return delta


def induced_consequence(amst: FiniteAmst):
    """The logical structure with ``Γ ⊢ α`` iff ``Mod(Γ) ⊆ Mod({α})``."""
    from .consequence import LogicalStructure

    n = amst.n_sentences
    if n > TABLE_MAX_SENTENCES:
        raise CapacityError(f"consequence tables need |L| <= {TABLE_MAX_SENTENCES}")
    mods = amst.mod_table
    singles = amst.single_mods
    table = np.zeros((1 << n, n), dtype=bool)
    for g in range(1 << n):
        for a in range(n):
            table[g, a] = is_subset(mods[g], singles[a])
    return LogicalStructure(amst.sentence_labels, table)



def _subset_pairs(n: int):
    """Index arrays ``(small, big)`` listing every pair ``small ⊆ big`` of ``n``-bit masks."""
    idx = np.arange(1 << n, dtype=np.int64)
    small, big = np.nonzero((idx[:, None] & ~idx[None, :]) == 0)
    return small.astype(np.int64), big.astype(np.int64)


def _weights(n: int) -> np.ndarray:
    return np.left_shift(np.int64(1), np.arange(n, dtype=np.int64))


def galois_check(amst: FiniteAmst) -> Verdict:
    """Mod/Th laws: antitonicity, meet decompositions and the closure identities.

    ``Mod`` and ``Th`` tables are rebuilt with numpy straight from the
    satisfaction matrix and compared against ``mod_of``/``th_of``; the laws
    are then checked on every pair of sentence sets and of model sets.
    """
    name = "galois"
    if amst.kind != NORMAL:
        return Verdict(name, VACUOUS, detail="hypothesis failed: amst not normal")
    n, k = amst.n_sentences, amst.n_models
    if n > TABLE_MAX_SENTENCES or k > TABLE_MAX_SENTENCES:
        raise CapacityError(f"galois checks tabulate 2**|L| and 2**|M| sets (cap {TABLE_MAX_SENTENCES})")
    violations = []
    sent_sets = np.arange(1 << n, dtype=np.int64)
    model_sets = np.arange(1 << k, dtype=np.int64)
    wl, wm = _weights(n), _weights(k)
    member_l = ((sent_sets[:, None] >> np.arange(n)) & 1).astype(bool)
    member_m = ((model_sets[:, None] >> np.arange(k)) & 1).astype(bool)
    m = amst.matrix

    sat = ~(member_l[:, None, :] & ~m[None, :, :]).any(axis=2)
    mods = (sat.astype(np.int64) * wm).sum(axis=1)
    table = np.array(amst.mod_table, dtype=np.int64)
    bad = np.nonzero(mods != table)[0]
    if bad.size:
        violations.append(("mod_meet", int(bad[0])))

    sat_t = ~(member_m[:, :, None] & ~m[None, :, :]).any(axis=1)
    ths = (sat_t.astype(np.int64) * wl).sum(axis=1)
    literal = np.array([th_of(amst, int(x)) for x in model_sets], dtype=np.int64)
    bad = np.nonzero(ths != literal)[0]
    if bad.size:
        violations.append(("th_meet", int(bad[0])))
    if ths[0] != amst.all_sentences:
        violations.append(("th_empty", int(ths[0])))

    small, big = _subset_pairs(n)
    bad = np.nonzero(table[big] & ~table[small])[0]
    if bad.size:
        violations.append(("mod_antitone", (int(small[bad[0]]), int(big[bad[0]]))))
    for g in range(1 << n):
        union = table[g] & table
        bad = np.nonzero(table[g | sent_sets] != union)[0]
        if bad.size:
            violations.append(("mod_union", (g, int(bad[0]))))
            break

    small, big = _subset_pairs(k)
    bad = np.nonzero(ths[big] & ~ths[small])[0]
    if bad.size:
        violations.append(("th_antitone", (int(small[bad[0]]), int(big[bad[0]]))))
    for x in range(1 << k):
        bad = np.nonzero(ths[x | model_sets] != (ths[x] & ths))[0]
        if bad.size:
            violations.append(("th_union", (x, int(bad[0]))))
            break

    thmod = ths[table]
    bad = np.nonzero(sent_sets & ~thmod)[0]
    if bad.size:
        violations.append(("th_mod_extensive", int(bad[0])))
    closures = induced_consequence(amst).closures
    for g in range(amst.all_sentences):
        fixed = int(thmod[g]) == g
        closed_sat = bool(table[g]) and int(closures[g]) == g
        if fixed != closed_sat:
            violations.append(("th_mod_fixed", g))
            break
    for g in range(1 << n):
        trivial = int(closures[g]) == amst.all_sentences
        if not table[g] and not trivial:
            violations.append(("unsat_trivial", g))
        if trivial and table[g] and not table[amst.all_sentences]:
            violations.append(("trivial_unsat", g))
    return verdict(name, violations, counts={"sentence_sets": 1 << n, "model_sets": 1 << k})
