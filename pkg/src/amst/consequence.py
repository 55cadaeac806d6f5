"""Logical structures ``(L, ⊢)`` given as full turnstile tables.

Row ``Γ`` (a subset bitmask) and column ``α`` of the table say whether
``Γ ⊢ α``.  The closure operator ``C(Γ)`` is row ``Γ`` read back as a bitmask.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from .bits import bits, full_mask, is_subset, lowest, submasks_by_size
from .errors import ArgumentError, CapacityError, EmptinessError, PreconditionError
from .report import Check, Verdict, VACUOUS, verdict

MAX_SENTENCES = 12


@dataclass(frozen=True, eq=False)
class LogicalStructure:
    sentence_labels: tuple
    turnstile: np.ndarray

    def __post_init__(self):
        labels = tuple(str(s) for s in self.sentence_labels)
        object.__setattr__(self, "sentence_labels", labels)
        n = len(labels)
        if n > MAX_SENTENCES:
            raise CapacityError(f"logical structures allow at most {MAX_SENTENCES} sentences")
        table = np.array(self.turnstile, dtype=bool).reshape(1 << n, n)
        table.setflags(write=False)
        object.__setattr__(self, "turnstile", table)

    @classmethod
    def from_closure(cls, labels, closure) -> "LogicalStructure":
        """Build from a function mapping a subset bitmask to its closure bitmask."""
        n = len(labels)
        table = np.zeros((1 << n, n), dtype=bool)
        for g in range(1 << n):
            c = closure(g)
            for a in range(n):
                table[g, a] = bool(c >> a & 1)
        return cls(tuple(labels), table)

    @property
    def n_sentences(self) -> int:
        return len(self.sentence_labels)

    @property
    def all_sentences(self) -> int:
        return full_mask(self.n_sentences)

    @cached_property
    def closures(self) -> np.ndarray:
        """``C(Γ)`` for every ``Γ`` as an int64 array indexed by bitmask."""
        weights = np.left_shift(np.int64(1), np.arange(self.n_sentences, dtype=np.int64))
        return (self.turnstile.astype(np.int64) * weights).sum(axis=1).astype(np.int64)

    def entails(self, gamma: int, alpha: int) -> bool:
        return bool(self.turnstile[gamma, alpha])

    def sentences(self, *labels) -> int:
        try:
            return sum(1 << self.sentence_labels.index(str(s)) for s in set(labels))
        except ValueError as exc:
            raise ArgumentError(str(exc)) from None

    def __eq__(self, other):
        if not isinstance(other, LogicalStructure):
            return NotImplemented
        return self.sentence_labels == other.sentence_labels and np.array_equal(
            self.turnstile, other.turnstile
        )

    def __hash__(self):
        return hash((self.sentence_labels, self.turnstile.tobytes()))


@dataclass(frozen=True)
class TarskiReport:
    reflexive: Check
    monotonic: Check
    transitive: Check

    @property
    def ok(self) -> bool:
        return bool(self.reflexive and self.monotonic and self.transitive)

    def __bool__(self):
        return self.ok


def closure(ls: LogicalStructure, gamma: int) -> int:
    if gamma < 0 or gamma >> ls.n_sentences:
        raise ArgumentError(f"sentence set {gamma:#x} outside L")
    return int(ls.closures[gamma])


def check_reflexive(ls: LogicalStructure) -> Check:
    """Witness ``(Γ, α)`` with ``α ∈ Γ`` and ``Γ ⊬ α``."""
    cl = ls.closures
    for g in range(1 << ls.n_sentences):
        missing = g & ~int(cl[g])
        if missing:
            return Check(False, (g, lowest(missing)))
    return Check(True)


def check_monotonic(ls: LogicalStructure) -> Check:
    """Witness ``(Γ, Σ, α)`` with ``Γ ⊆ Σ``, ``Γ ⊢ α`` and ``Σ ⊬ α``."""
    cl = ls.closures
    idx = np.arange(1 << ls.n_sentences, dtype=np.int64)
    for g in range(1 << ls.n_sentences):
        c = np.int64(cl[g])
        bad = ((idx & g) == g) & ((c & ~cl) != 0)
        if bad.any():
            s = int(np.argmax(bad))
            return Check(False, (g, s, lowest(int(c) & ~int(cl[s]))))
    return Check(True)


def check_transitive(ls: LogicalStructure) -> Check:
    """Witness ``(Γ, Σ, α)`` with ``Σ ⊆ C(Γ)``, ``Σ ⊢ α`` and ``Γ ⊬ α``."""
    cl = ls.closures
    idx = np.arange(1 << ls.n_sentences, dtype=np.int64)
    for g in range(1 << ls.n_sentences):
        c = np.int64(cl[g])
        bad = ((idx & ~c) == 0) & ((cl & ~c) != 0)
        if bad.any():
            s = int(np.argmax(bad))
            return Check(False, (g, s, lowest(int(cl[s]) & ~int(c))))
    return Check(True)


def is_tarski_type(ls: LogicalStructure) -> TarskiReport:
    return TarskiReport(check_reflexive(ls), check_monotonic(ls), check_transitive(ls))


def closure_operator_report(ls: LogicalStructure) -> TarskiReport:
    """Extensive / monotone / idempotent checks phrased on ``C`` alone.

    This is the operator formulation of a Tarski-type structure and is kept
    separate from the relational checks so the two can be compared.
    """
    n = ls.n_sentences
    c = [closure(ls, g) for g in range(1 << n)]
    extensive = Check(True)
    for g in range(1 << n):
        if not is_subset(g, c[g]):
            extensive = Check(False, g)
            break
    monotone = Check(True)
    for g in range(1 << n):
        for s in range(1 << n):
            if is_subset(g, s) and not is_subset(c[g], c[s]):
                monotone = Check(False, (g, s))
                break
        if not monotone:
            break
    idempotent = Check(True)
    for g in range(1 << n):
        if c[c[g]] != c[g]:
            idempotent = Check(False, g)
            break
    return TarskiReport(extensive, monotone, idempotent)


def finitary_witness(ls: LogicalStructure, gamma: int, alpha: int, proper: bool = False) -> Optional[int]:
    """Smallest ``Γ₀ ⊆ Γ`` with ``Γ₀ ⊢ α`` (only proper subsets when ``proper``)."""
    for sub in submasks_by_size(gamma, proper=proper):
        if ls.turnstile[sub, alpha]:
            return sub
    return None


def is_finitary(ls: LogicalStructure) -> Check:
    """Every ``Γ ⊢ α`` is backed by a finite ``Γ₀ ⊆ Γ``; witness ``(Γ, α)``.

    On a finite ``L`` the search always succeeds with ``Γ₀ = Γ`` at the
    latest, but it is carried out in full.
    """
    for g in range(1 << ls.n_sentences):
        for a in bits(int(ls.closures[g])):
            if finitary_witness(ls, g, a) is None:
                return Check(False, (g, a))
    return Check(True)


def is_trivial_set(ls: LogicalStructure, gamma: int) -> bool:
    return closure(ls, gamma) == ls.all_sentences


def is_closed_set(ls: LogicalStructure, gamma: int) -> bool:
    return closure(ls, gamma) == gamma


def canonical_normal_amst(ls: LogicalStructure):
    """Normal amst whose models are the characteristic functions of ``C(Σ)``, ``Σ`` nontrivial.

    Models are deduplicated and ordered by ascending closure bitmask.
    """
    from .core import FiniteAmst

    report = is_tarski_type(ls)
    if not report:
        raise PreconditionError(f"not of Tarski type: {report}")
    full = ls.all_sentences
    closed = sorted({int(c) for c in ls.closures if int(c) != full})
    if not closed:
        raise EmptinessError("every set is trivial, so the model set would be empty")
    n = ls.n_sentences
    matrix = np.array([[bool(c >> a & 1) for a in range(n)] for c in closed], dtype=bool).reshape(len(closed), n)
    labels = ["chi" + "{" + ",".join(ls.sentence_labels[a] for a in bits(c)) + "}" for c in closed]
    return FiniteAmst.normal(ls.sentence_labels, labels, matrix)


def check_finitary_trivial_theorem(ls: LogicalStructure) -> Verdict:
    """Every trivial set contains a finite trivial set.

    Vacuous when the hypotheses (finitary, monotonic, transitive, some
    nonempty trivial set) do not hold.
    """
    name = "finitary_trivial"
    missing = []
    if not is_finitary(ls):
        missing.append("finitary")
    if not check_monotonic(ls):
        missing.append("monotonic")
    if not check_transitive(ls):
        missing.append("transitive")
    trivial = [g for g in range(1, 1 << ls.n_sentences) if is_trivial_set(ls, g)]
    if not trivial:
        missing.append("no nonempty trivial set")
    if missing:
        return Verdict(name, VACUOUS, detail="hypothesis failed: " + ", ".join(missing))
    violations = []
    for g in trivial:
        if not any(is_trivial_set(ls, sub) for sub in submasks_by_size(g)):
            violations.append(g)
    return verdict(name, violations, counts={"trivial_sets": len(trivial)})
