"""Filters and ultrafilters on a finite index set, ultralimits and Łoś-models.

Index sets are ``{0, ..., n-1}`` and their subsets are bitmasks.  On a finite
index set every ultrafilter is principal, so the enumerators only ever return
the families ``U_i = {A : i ∈ A}``; the checkers below still work from the
definitions and never assume principality.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .bits import bits, full_mask, is_subset, lowest, submasks, supermasks
from .core import FiniteAmst, finsat_table, is_compact, is_normal, mod_of, satisfies, th_of
from .errors import ArgumentError, FilterError, InvariantError, PreconditionError
from .report import Check, Verdict, VACUOUS, verdict
from .topology import FiniteTopology, tau_C, tau_N, tau_n_eligible

MAX_INDEX = 16
SEQUENCE_BOUND = 4096


@dataclass(frozen=True)
class SetFamily:
    index_size: int
    members: frozenset

    def __post_init__(self):
        if not 0 <= self.index_size <= MAX_INDEX:
            raise ArgumentError(f"index size must be in [0, {MAX_INDEX}]")
        members = frozenset(int(m) for m in self.members)
        full = full_mask(self.index_size)
        for m in members:
            if m < 0 or not is_subset(m, full):
                raise ArgumentError(f"member {m:#x} is not a subset of I")
        object.__setattr__(self, "members", members)

    @property
    def full(self) -> int:
        return full_mask(self.index_size)

    def __contains__(self, a: int) -> bool:
        return a in self.members

    def __len__(self):
        return len(self.members)

    def sorted_members(self) -> list:
        return sorted(self.members)

    def to_dict(self) -> dict:
        return {"index_size": self.index_size, "members": self.sorted_members()}


def family(index_size: int, members: Iterable[int]) -> SetFamily:
    return SetFamily(index_size, frozenset(members))


def has_fip(fam: SetFamily) -> Check:
    """All intersections of finitely many members are nonempty.

    Witness: a smallest subfamily with empty intersection, found breadth-first
    over reachable intersections.
    """
    members = fam.sorted_members()
    parent = {}
    frontier = []
    for i, d in enumerate(members):
        if d not in parent:
            parent[d] = (None, i)
            frontier.append(d)
    while frontier:
        for state in frontier:
            if state == 0:
                picks = []
                cur = state
                while cur is not None:
                    cur, j = parent[cur]
                    picks.append(members[j])
                return Check(False, tuple(sorted(picks)))
        nxt = []
        for state in frontier:
            for i, d in enumerate(members):
                new = state & d
                if new not in parent:
                    parent[new] = (state, i)
                    nxt.append(new)
        frontier = nxt
    return Check(True)


def is_filter(fam: SetFamily) -> Check:
    """Closed under pairwise intersection and under supersets; witness names the failure."""
    for x in fam.members:
        for y in fam.members:
            if x & y not in fam.members:
                return Check(False, ("intersection", x, y))
    for x in fam.members:
        for y in supermasks(x, fam.full):
            if y not in fam.members:
                return Check(False, ("superset", x, y))
    return Check(True)


def is_proper(fam: SetFamily) -> bool:
    return 0 not in fam.members


def generated_filter(fam: SetFamily) -> SetFamily:
    """``{F : D_1 ∩ ... ∩ D_n ⊆ F}`` over finitely many generators ``D_k`` (n ≥ 1)."""
    fip = has_fip(fam)
    if not fip:
        raise FilterError(f"family lacks the finite intersection property: {fip.witness}")
    meets = set()
    for d in fam.members:
        meets |= {d} | {m & d for m in meets}
    out = set()
    for m in meets:
        out.update(supermasks(m, fam.full))
    return SetFamily(fam.index_size, frozenset(out))


def is_ultrafilter(fam: SetFamily) -> Check:
    """Proper filter containing exactly one of ``A`` and ``I ∖ A`` for every ``A``."""
    filt = is_filter(fam)
    if not filt:
        return Check(False, ("not a filter",) + filt.witness)
    if not is_proper(fam):
        return Check(False, ("improper",))
    for a in range(fam.full + 1):
        if (a in fam) == ((fam.full & ~a) in fam):
            return Check(False, ("dichotomy", a))
    return Check(True)


def principal(index_size: int, i: int) -> SetFamily:
    if not 0 <= i < index_size:
        raise ArgumentError(f"index {i} outside I")
    full = full_mask(index_size)
    return SetFamily(index_size, frozenset(a for a in range(full + 1) if a >> i & 1))


def enumerate_ultrafilters(index_size: int) -> list:
    if not 1 <= index_size <= MAX_INDEX:
        raise ArgumentError(f"index size must be in [1, {MAX_INDEX}]")
    return [principal(index_size, i) for i in range(index_size)]


def extend_to_ultrafilter(fam: SetFamily) -> SetFamily:
    """Principal ultrafilter at the smallest index lying in every member of a proper filter."""
    if not is_filter(fam) or not is_proper(fam):
        raise FilterError("only proper filters extend to ultrafilters")
    core = fam.full
    for m in fam.members:
        core &= m
    if not core:
        raise InvariantError("a finite proper filter has a nonempty least member")
    return principal(fam.index_size, lowest(core))


def partition_pick(u: SetFamily, parts: Sequence[int]) -> int:
    """Smallest ``i`` with ``parts[i] ∈ u``, given that the union of the parts lies in ``u``."""
    union = 0
    for p in parts:
        union |= p
    if union not in u:
        raise PreconditionError("the union of the parts is not in the ultrafilter")
    for i, p in enumerate(parts):
        if p in u:
            return i
    raise InvariantError("no part belongs to the ultrafilter")


def index_set(seq: Sequence[int], target: int) -> int:
    """``{i : seq[i] ∈ target}`` as a bitmask over I."""
    out = 0
    for i, x in enumerate(seq):
        if target >> x & 1:
            out |= 1 << i
    return out


def _check_sequence(seq, n_points, u: SetFamily):
    if len(seq) != u.index_size:
        raise ArgumentError(f"sequence length {len(seq)} != |I| = {u.index_size}")
    for x in seq:
        if not 0 <= x < n_points:
            raise ArgumentError(f"sequence entry {x} outside the ground set")


def ultralimits_by_family(n_points: int, family_sets: Iterable[int], seq: Sequence[int], u: SetFamily) -> int:
    """Points ``x`` such that every listed set containing ``x`` captures a ``u``-large index set."""
    sets = list(family_sets)
    out = 0
    for x in range(n_points):
        if all(index_set(seq, s) in u for s in sets if s >> x & 1):
            out |= 1 << x
    return out


def ultralimits(top: FiniteTopology, seq: Sequence[int], u: SetFamily, subbase: Optional[Iterable[int]] = None) -> int:
    """``U``-ultralimits of ``seq`` in ``top``; rechecked through ``subbase`` when one is given."""
    _check_sequence(seq, top.n, u)
    limits = ultralimits_by_family(top.n, top.opens, seq, u)
    if subbase is not None:
        again = ultralimits_by_family(top.n, subbase, seq, u)
        if again != limits:
            raise InvariantError(f"open-set and subbase ultralimits differ: {limits:#x} vs {again:#x}")
    return limits


@lru_cache(maxsize=1024)
def _tau_n(amst: FiniteAmst):
    return tau_N(amst)


@lru_cache(maxsize=1024)
def _tau_c(amst: FiniteAmst):
    return tau_C(amst)


def ultramodels(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> int:
    """``U``-ultralimits of a model sequence in ``(M, τ_N)``."""
    top, subbase = _tau_n(amst)
    return ultralimits(top, seq, u, subbase)


def _large_table(amst: FiniteAmst, seq, u: SetFamily) -> list:
    """``{i : m_i ⊨ Σ} ∈ U`` for every ``Σ``, indexed by bitmask."""
    positions = [0] * amst.n_models
    for i, x in enumerate(seq):
        positions[x] |= 1 << i
    memo = {}
    out = []
    for mods in amst.mod_table:
        if mods not in memo:
            idx = 0
            for x in bits(mods):
                idx |= positions[x]
            memo[mods] = idx in u
        out.append(memo[mods])
    return out


def loz_le_set(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> int:
    """``{x : for all Σ, {i : m_i ⊨ Σ} ∈ U implies x ⊨ Σ}`` by direct quantification."""
    _check_sequence(seq, amst.n_models, u)
    out = amst.all_models
    for mods, large in zip(amst.mod_table, _large_table(amst, seq, u)):
        if large:
            out &= mods
    return out


def loz_ge_set(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> int:
    """``{x : for all Σ, x ⊨ Σ implies {i : m_i ⊨ Σ} ∈ U}`` by direct quantification."""
    _check_sequence(seq, amst.n_models, u)
    out = amst.all_models
    for mods, large in zip(amst.mod_table, _large_table(amst, seq, u)):
        if not large:
            out &= ~mods
    return out


def tauc_ultralimits(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> int:
    top, base = _tau_c(amst)
    return ultralimits(top, seq, u, base)


def tauc_ultralimit_check(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> Check:
    """τ_C-ultralimits coincide with the set described by sentence-level conditions."""
    topological = tauc_ultralimits(amst, seq, u)
    logical = loz_ge_set(amst, seq, u)
    return Check(topological == logical, None if topological == logical else (topological, logical))


def los_models(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> int:
    """Models ``l`` with ``l ⊨ Σ`` iff ``{i : m_i ⊨ Σ} ∈ U`` for every ``Σ``.

    Computed over all ``Σ`` and again through single sentences (enough for a
    normal amst); the two must agree.
    """
    if not is_normal(amst):
        raise PreconditionError("Łoś-models are defined for normal amsts")
    _check_sequence(seq, amst.n_models, u)
    large = _large_table(amst, seq, u)
    full = amst.all_models
    for mods, big in zip(amst.mod_table, large):
        full &= mods if big else ~mods
    target = sum(1 << a for a in range(amst.n_sentences) if large[1 << a])
    reduced = 0
    for x, theory in enumerate(amst.single_theories):
        if theory == target:
            reduced |= 1 << x
    if reduced != full:
        raise InvariantError(f"Łoś-model computations disagree: {full:#x} vs {reduced:#x}")
    return full


def preceq(amst: FiniteAmst, m: int, n: int) -> bool:
    return is_subset(th_of(amst, 1 << m), th_of(amst, 1 << n))


@lru_cache(maxsize=1024)
def _upsets(amst: FiniteAmst) -> tuple:
    return tuple(sum(1 << n for n in range(amst.n_models) if preceq(amst, m, n)) for m in range(amst.n_models))


def upset(amst: FiniteAmst, m: int) -> int:
    """``𝕌(m)``: the models whose theory contains that of ``m``."""
    if not 0 <= m < amst.n_models:
        raise ArgumentError(f"model index {m} out of range")
    return _upsets(amst)[m]


def maximal_in_upset(amst: FiniteAmst, m: int) -> int:
    """Members of ``𝕌(m)`` whose theory is not strictly below another member's theory."""
    up = list(bits(upset(amst, m)))
    out = 0
    for n in up:
        tn = th_of(amst, 1 << n)
        if not any(tn != th_of(amst, 1 << k) and is_subset(tn, th_of(amst, 1 << k)) for k in up):
            out |= 1 << n
    return out


def _is_maximal_satisfiable(amst: FiniteAmst, gamma: int) -> bool:
    if not mod_of(amst, gamma):
        return False
    return not any(mod_of(amst, s) for s in supermasks(gamma, amst.all_sentences) if s != gamma)


def order_maxsat_check(amst: FiniteAmst) -> Verdict:
    """``Th({n})`` is a maximal satisfiable superset of ``Th({m})`` iff ``n`` is maximal in ``𝕌(m)``."""
    name = "order_maxsat"
    if not is_normal(amst):
        return Verdict(name, VACUOUS, detail="hypothesis failed: amst not normal")
    violations = []
    for m in range(amst.n_models):
        tm = th_of(amst, 1 << m)
        maximal = maximal_in_upset(amst, m)
        for n in range(amst.n_models):
            tn = th_of(amst, 1 << n)
            logical = is_subset(tm, tn) and _is_maximal_satisfiable(amst, tn)
            if logical != bool(maximal >> n & 1):
                violations.append((m, n))
    return verdict(name, violations, counts={"pairs": amst.n_models ** 2})


def mod_fin(amst: FiniteAmst, sigma: int) -> int:
    """Models satisfying some finite subset of ``sigma``."""
    out = 0
    for sub in submasks(sigma):
        out |= mod_of(amst, sub)
    return out


def sequences(pool: Sequence[int], length: int, rng: np.random.Generator, budget: int, bound: int = SEQUENCE_BOUND):
    """All sequences over ``pool`` when there are at most ``bound`` of them, else ``budget`` samples.

    Returns ``(sequences, exhaustive)``.
    """
    pool = list(pool)
    if not pool:
        return [], True
    if len(pool) ** length <= bound:
        return [tuple(s) for s in product(pool, repeat=length)], True
    picks = rng.integers(len(pool), size=(budget, length))
    return [tuple(pool[int(j)] for j in row) for row in picks], False


def is_pseudo_closed(amst: FiniteAmst, k: int, index_size: int, budget: int = 256, seed: int = 0) -> Check:
    """Every Łoś-model ``l`` of a sequence from ``k`` has ``𝕌(l) ∩ k ≠ ∅``.

    Witness: ``(sequence, ultrafilter index, l)``.
    """
    rng = np.random.default_rng(seed)
    seqs, _ = sequences(list(bits(k)), index_size, rng, budget)
    return _pseudo_closure(amst, k, _los_table(amst, seqs, index_size))


def _los_table(amst: FiniteAmst, seqs, index_size: int) -> list:
    ultras = enumerate_ultrafilters(index_size)
    return [(seq, j, los_models(amst, seq, u)) for seq in seqs for j, u in enumerate(ultras)]


def _pseudo_closure(amst: FiniteAmst, k: int, table) -> Check:
    for seq, j, los in table:
        for l in bits(los):
            if not upset(amst, l) & k:
                return Check(False, (seq, j, l))
    return Check(True)


def finset_index(sigma: int) -> list:
    """The index set ``FinSet(Σ)``: submasks of ``sigma`` in ascending order."""
    return list(submasks(sigma))


def theorem_III_check(amst: FiniteAmst, sigma: int, budget: int = 64, seed: int = 0) -> Verdict:
    """Compact iff every ``FinSet(Σ)``-indexed sequence converges in ``τ_N``; plus the constructive run.

    The constructive part picks the lowest-index model of each finite subset,
    builds the filter generated by the cones ``{Σ₁ : Σ₀ ⊆ Σ₁}``, extends it to
    an ultrafilter and checks every ultramodel of that sequence satisfies Σ.
    """
    name = "compact_normal_III"
    if not finsat_table(amst)[sigma]:
        raise PreconditionError("sigma must be finitely satisfiable")
    reason = tau_n_eligible(amst)
    if reason:
        return Verdict(name, VACUOUS, detail="hypothesis failed: " + reason)
    index = finset_index(sigma)
    if len(index) > MAX_INDEX:
        raise ArgumentError(f"|FinSet(sigma)| = {len(index)} exceeds {MAX_INDEX}")
    n = len(index)
    ultras = enumerate_ultrafilters(n)
    rng = np.random.default_rng(seed)
    seqs, exhaustive = sequences(range(amst.n_models), n, rng, budget)
    violations = []
    converges = True
    for seq in seqs:
        for j, u in enumerate(ultras):
            if not ultramodels(amst, seq, u):
                converges = False
                violations.append(("no_limit", seq, j))
    compact = bool(is_compact(amst))
    if compact != converges:
        violations.append(("equivalence", compact, converges))

    witness_seq = tuple(lowest(mod_of(amst, g)) for g in index)
    cones = [sum(1 << j for j, g1 in enumerate(index) if is_subset(g0, g1)) for g0 in index]
    cone_family = family(n, cones)
    ultra = extend_to_ultrafilter(generated_filter(cone_family))
    limits = ultramodels(amst, witness_seq, ultra)
    if not limits:
        violations.append(("constructed_no_limit", witness_seq))
    for x in bits(limits):
        if not satisfies(amst, x, sigma):
            violations.append(("constructed_unsat", witness_seq, x))
    counts = {"sequences": len(seqs), "ultrafilters": n, "exhaustive": int(exhaustive)}
    return verdict(name, violations, counts=counts)


def theorem_IV_check(amst: FiniteAmst, sigma: int, budget: int = 64, seed: int = 0) -> Verdict:
    """Compact iff ``ModFin(Σ)`` is pseudo-closed under Łoś-models relative to ``FinSet(Σ)``.

    The standing hypothesis (every sequence from ``ModFin(Σ)`` has a Łoś-model
    for every ultrafilter) is checked over the same sequences first.
    """
    name = "compact_normal_IV"
    if not is_normal(amst):
        return Verdict(name, VACUOUS, detail="hypothesis failed: amst not normal")
    index = finset_index(sigma)
    if len(index) > MAX_INDEX:
        raise ArgumentError(f"|FinSet(sigma)| = {len(index)} exceeds {MAX_INDEX}")
    n = len(index)
    k = mod_fin(amst, sigma)
    rng = np.random.default_rng(seed)
    seqs, exhaustive = sequences(list(bits(k)), n, rng, budget)
    table = _los_table(amst, seqs, n)
    for seq, j, los in table:
        if not los:
            return Verdict(
                name,
                VACUOUS,
                detail=f"hypothesis failed: sequence {seq} has no Łoś-model for ultrafilter {j}",
            )
    compact = bool(is_compact(amst))
    closed = _pseudo_closure(amst, k, table)
    violations = [] if compact == bool(closed) else [("equivalence", compact, closed.witness)]
    counts = {"sequences": len(seqs), "exhaustive": int(exhaustive)}
    return verdict(name, violations, counts=counts)


def los_instance_check(amst: FiniteAmst, seq: Sequence[int], u: SetFamily) -> list:
    """Cross-check every characterization of limits for one (sequence, ultrafilter) pair.

    Needs a normal amst with ``L`` unsatisfiable.  Returns a list of
    ``(label, expected, got)`` mismatches.
    """
    problems = []
    um = ultramodels(amst, seq, u)
    le = loz_le_set(amst, seq, u)
    if um != le:
        problems.append(("loz_le", le, um))
    tc = tauc_ultralimits(amst, seq, u)
    ge = loz_ge_set(amst, seq, u)
    if tc != ge:
        problems.append(("loz_ge", ge, tc))
    lm = los_models(amst, seq, u)
    if lm != um & tc:
        problems.append(("gen_los", um & tc, lm))
    core = u.full
    for member in u.members:
        core &= member
    if u.members and core & (core - 1) == 0 and core:
        i = lowest(core)
        mi = seq[i]
        equal_theory = sum(1 << x for x in range(amst.n_models) if th_of(amst, 1 << x) == th_of(amst, 1 << mi))
        if lm != equal_theory:
            problems.append(("principal_los", equal_theory, lm))
        if um != upset(amst, mi):
            problems.append(("principal_upset", upset(amst, mi), um))
    return problems
