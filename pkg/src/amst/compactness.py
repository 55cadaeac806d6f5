"""Nine independent characterizations of compactness for normal amsts.

Each ``cond_*`` function decides one condition directly from its definition,
using only the core operators.  Under the standing hypothesis (the amst is
normal and ``L`` is not finitely satisfiable) all nine must agree, and on a
finite ``L`` they must all be true; disagreement therefore exposes a checker
bug.  Conditions quantifying over functions are decided exhaustively on small
instances and by seeded sampling on larger ones.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, Optional

import numpy as np

from .bits import bits, is_subset, lowest, submasks, submasks_by_size, supermasks
from .consequence import closure, is_trivial_set
from .core import (
    FiniteAmst,
    finsat_table,
    induced_consequence,
    is_compact,
    is_complete_set,
    is_normal,
    mod_of,
    th_of,
)
from .errors import ArgumentError
from .report import Check, Verdict, VACUOUS, verdict

EXHAUSTIVE_LIMIT = 3
DEFAULT_SAMPLES = 200


@dataclass
class SearchConfig:
    """Bounds for the function-space conditions (6)-(9)."""

    exhaustive_limit: int = EXHAUSTIVE_LIMIT
    samples: int = DEFAULT_SAMPLES
    seed: int = 0

    def rng(self, salt: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])


class _Tables:
    """Per-amst lookups shared by the condition checkers."""

    def __init__(self, amst: FiniteAmst):
        self.amst = amst
        self.n = amst.n_sentences
        self.full = amst.all_sentences
        self.mods = amst.mod_table
        self.sat = [bool(x) for x in self.mods]
        self.finsat = finsat_table(amst)

    def maximal_finsat(self):
        out = []
        for g in range(1 << self.n):
            if self.finsat[g] and not any(self.finsat[g | 1 << a] for a in range(self.n) if not g >> a & 1):
                out.append(g)
        return out


def _tables(amst):
    return amst if isinstance(amst, _Tables) else _Tables(amst)


def cond_compact(amst: FiniteAmst) -> Check:
    return is_compact(amst)


def cond_nontrivial_maxfinsat(amst: FiniteAmst) -> Check:
    """Every finitely satisfiable set lies in a nontrivial maximal finitely satisfiable set."""
    t = _tables(amst)
    ls = induced_consequence(t.amst)
    good = [d for d in t.maximal_finsat() if closure(ls, d) != t.full]
    for g in range(1 << t.n):
        if t.finsat[g] and not any(is_subset(g, d) for d in good):
            return Check(False, g)
    return Check(True)


def _maximal_satisfiable(t: _Tables):
    out = []
    for d in range(1 << t.n):
        if t.sat[d] and not any(t.sat[s] for s in supermasks(d, t.full) if s != d):
            out.append(d)
    return out


def cond_maximal_satisfiable(amst: FiniteAmst) -> Check:
    """Every finitely satisfiable set lies in a maximal satisfiable set."""
    t = _tables(amst)
    maximal = _maximal_satisfiable(t)
    for g in range(1 << t.n):
        if t.finsat[g] and not any(is_subset(g, d) for d in maximal):
            return Check(False, g)
    return Check(True)


def cond_complete(amst: FiniteAmst) -> Check:
    """Every finitely satisfiable set lies in a complete set."""
    t = _tables(amst)
    complete = [d for d in range(1 << t.n) if is_complete_set(t.amst, d)]
    for g in range(1 << t.n):
        if t.finsat[g] and not any(is_subset(g, d) for d in complete):
            return Check(False, g)
    return Check(True)


def cond_trivial_finite_subset(amst: FiniteAmst) -> Check:
    """Every trivial set has a finite trivial subset (every subset is finite here)."""
    t = _tables(amst)
    ls = induced_consequence(t.amst)
    for g in range(1 << t.n):
        if is_trivial_set(ls, g) and not any(is_trivial_set(ls, s) for s in submasks_by_size(g)):
            return Check(False, g)
    return Check(True)


def is_directed(family, upward: bool = True) -> bool:
    """Pairwise directedness of a finite family of bitmasks under ⊆ (or ⊇)."""
    members = list(family)
    if not members:
        return False
    for x in members:
        for y in members:
            if upward:
                if not any(is_subset(x, z) and is_subset(y, z) for z in members):
                    return False
            elif not any(is_subset(z, x) and is_subset(z, y) for z in members):
                return False
    return True


@lru_cache(maxsize=64)
def _directed_subfamilies(sets: tuple, upward: bool) -> tuple:
    out = []
    for code in range(1, 1 << len(sets)):
        fam = tuple(sets[i] for i in bits(code))
        if is_directed(fam, upward):
            out.append(fam)
    return tuple(out)


def _families(universe_sets, rng, samples, exhaustive, upward):
    """Directed families drawn from ``universe_sets``.

    Exhaustive mode walks every nonempty subfamily and keeps the directed
    ones.  Sampling builds directed families around a random extreme member
    and adds a few arbitrary families so the directedness filter is exercised.
    """
    sets = list(universe_sets)
    if exhaustive:
        yield from _directed_subfamilies(tuple(sets), upward)
        return
    for _ in range(samples):
        extreme = sets[int(rng.integers(len(sets)))]
        if upward:
            pool = [s for s in sets if is_subset(s, extreme)]
        else:
            pool = [s for s in sets if is_subset(extreme, s)]
        k = int(rng.integers(0, min(len(pool), 6) + 1))
        picks = rng.choice(len(pool), size=k, replace=False) if k else []
        fam = sorted({extreme, *(pool[int(i)] for i in picks)})
        yield fam
        rough = sorted({sets[int(i)] for i in rng.choice(len(sets), size=min(3, len(sets)), replace=False)})
        if is_directed(rough, upward):
            yield rough


def cond_directed_union(amst: FiniteAmst, config: Optional[SearchConfig] = None) -> Check:
    """Union of a ⊆-directed family of satisfiable sets is satisfiable.

    Only the image family of ``f`` matters, so families are enumerated
    directly.  Witness: the offending family.
    """
    config = config or SearchConfig()
    t = _tables(amst)
    exhaustive = t.n <= config.exhaustive_limit
    for fam in _families(range(1 << t.n), config.rng(6), config.samples, exhaustive, upward=True):
        if all(t.sat[s] for s in fam):
            union = 0
            for s in fam:
                union |= s
            if not t.sat[union]:
                return Check(False, tuple(fam))
    return Check(True)


def _search_maps(domain, candidates, weight, bad):
    """Depth-first search for an order-respecting map with a bad accumulated union.

    ``domain`` lists points so that each immediate predecessor (the point
    minus one element) comes first; ``candidates(f, point)`` returns the
    values allowed at ``point`` given the values already fixed.  Returns the
    first offending map as a dict, or ``None``.
    """
    f = {}

    def rec(i, acc):
        if i == len(domain):
            return dict(f) if bad(acc) else None
        point = domain[i]
        for v in candidates(f, point):
            f[point] = v
            hit = rec(i + 1, acc | weight(v))
            if hit is not None:
                return hit
        f.pop(point, None)
        return None

    return rec(0, 0)


@lru_cache(maxsize=4096)
def _exhaustive_monotone(n: int, sat: tuple):
    """First ``(Σ, f)`` violating cond (7) for the given satisfiability table, else ``None``."""
    satisfiable = [s for s in range(1 << n) if sat[s]]
    above = {low: [s for s in satisfiable if is_subset(low, s)] for low in range(1 << n)}

    def candidates(f, point):
        low = 0
        for a in bits(point):
            low |= f[point ^ (1 << a)]
        return above[low]

    for sigma in range(1 << n):
        hit = _search_maps(list(submasks(sigma)), candidates, int, lambda acc: not sat[acc])
        if hit is not None:
            return sigma, tuple(sorted(hit.items()))
    return None


@lru_cache(maxsize=4096)
def _exhaustive_antitone(n_models: int, sigmas: tuple, th: tuple, sat: tuple):
    """First ``(Σ, f)`` violating cond (9), else ``None``; ``th`` is indexed by model set."""
    everything = (1 << n_models) - 1
    below = {up: [x for x in submasks(up) if x] for up in range(1 << n_models)}

    def candidates(f, point):
        up = everything
        for a in bits(point):
            up &= f[point ^ (1 << a)]
        return below[up]

    for sigma in sigmas:
        hit = _search_maps(list(submasks(sigma)), candidates, th.__getitem__, lambda acc: not sat[acc])
        if hit is not None:
            return sigma, tuple(sorted(hit.items()))
    return None


def _union(values):
    out = 0
    for v in values:
        out |= v
    return out


def cond_finset_monotone(amst: FiniteAmst, config: Optional[SearchConfig] = None) -> Check:
    """Order-preserving ``f: FinSet(Σ) -> P(L)`` with satisfiable values has a satisfiable union.

    Maps with an unsatisfiable value impose no constraint, so the exhaustive
    search only builds maps whose values are all satisfiable.  Witness:
    ``(Σ, f)`` with ``f`` as a sorted tuple of ``(Γ, f(Γ))`` pairs.
    """
    config = config or SearchConfig()
    t = _tables(amst)
    satisfiable = [s for s in range(1 << t.n) if t.sat[s]]
    if t.n <= config.exhaustive_limit:
        hit = _exhaustive_monotone(t.n, tuple(t.sat))
        return Check(True) if hit is None else Check(False, hit)
    rng = config.rng(7)
    for sigma in range(1 << t.n):
        iota = {g: g for g in submasks(sigma)}
        if all(t.sat[v] for v in iota.values()) and not t.sat[_union(iota.values())]:
            return Check(False, (sigma, tuple(sorted(iota.items()))))
    for _ in range(config.samples):
        sigma = int(rng.integers(1 << t.n))
        target = satisfiable[int(rng.integers(len(satisfiable)))]
        gens = {a: int(rng.integers(1 << t.n)) & target for a in bits(sigma)}
        base = int(rng.integers(1 << t.n)) & target
        f = {}
        for g in submasks(sigma):
            f[g] = base if g == 0 else f[g & (g - 1)] | gens[lowest(g)]
        if all(t.sat[v] for v in f.values()) and not t.sat[_union(f.values())]:
            return Check(False, (sigma, tuple(sorted(f.items()))))
    return Check(True)


def cond_th_directed(amst: FiniteAmst, config: Optional[SearchConfig] = None) -> Check:
    """For a ⊇-directed family of nonempty model sets, ``⋃ Th(X)`` is satisfiable."""
    config = config or SearchConfig()
    t = _tables(amst)
    nonempty = range(1, 1 << t.amst.n_models)
    exhaustive = t.amst.n_models <= config.exhaustive_limit
    for fam in _families(nonempty, config.rng(8), config.samples, exhaustive, upward=False):
        if not t.sat[_union(th_of(t.amst, x) for x in fam)]:
            return Check(False, tuple(fam))
    return Check(True)


def cond_finset_antitone_th(amst: FiniteAmst, config: Optional[SearchConfig] = None) -> Check:
    """Order-reversing ``f: FinSet(Σ) -> P(M)`` with nonempty values, Σ finitely satisfiable,
    has ``⋃ Th(f(Γ))`` satisfiable."""
    config = config or SearchConfig()
    t = _tables(amst)
    amst = t.amst

    def bad(f):
        return not t.sat[_union(th_of(amst, x) for x in f.values())]

    finsat_sigmas = [s for s in range(1 << t.n) if t.finsat[s]]
    for sigma in finsat_sigmas:
        mu = {g: t.mods[g] for g in submasks(sigma)}
        if bad(mu):
            return Check(False, (sigma, tuple(sorted(mu.items()))))
    if t.n <= config.exhaustive_limit and amst.n_models <= config.exhaustive_limit:
        th = tuple(th_of(amst, x) for x in range(1 << amst.n_models))
        hit = _exhaustive_antitone(amst.n_models, tuple(finsat_sigmas), th, tuple(t.sat))
        return Check(True) if hit is None else Check(False, hit)
    rng = config.rng(9)
    for _ in range(config.samples):
        sigma = finsat_sigmas[int(rng.integers(len(finsat_sigmas)))]
        anchor = 1 << int(rng.integers(amst.n_models))
        gens = {a: int(rng.integers(1 << amst.n_models)) | anchor for a in bits(sigma)}
        top = int(rng.integers(1 << amst.n_models)) | anchor
        f = {}
        for g in submasks(sigma):
            f[g] = top if g == 0 else f[g & (g - 1)] & gens[lowest(g)]
        if bad(f):
            return Check(False, (sigma, tuple(sorted(f.items()))))
    return Check(True)


CONDITIONS: Dict[int, Callable] = {
    1: cond_compact,
    2: cond_nontrivial_maxfinsat,
    3: cond_maximal_satisfiable,
    4: cond_complete,
    5: cond_trivial_finite_subset,
    6: cond_directed_union,
    7: cond_finset_monotone,
    8: cond_th_directed,
    9: cond_finset_antitone_th,
}
_CONFIGURABLE = {6, 7, 8, 9}


# Deliberately broken checkers used to show that the nine-way cross-check
# catches real mistakes.  The last three cover one checker family each;
# ``maxsat_greatest`` is the shrinker's regression fixture.


def mutant_maxsat_strict_supersets(amst: FiniteAmst) -> Check:
    """Cond (3) but only looking at strict supersets of each set."""
    t = _tables(amst)
    maximal = _maximal_satisfiable(t)
    for g in range(1 << t.n):
        if t.finsat[g] and not any(is_subset(g, d) and d != g for d in maximal):
            return Check(False, g)
    return Check(True)


def mutant_trivial_proper_subsets(amst: FiniteAmst) -> Check:
    """Cond (5) but only looking at proper subsets of each trivial set."""
    t = _tables(amst)
    ls = induced_consequence(t.amst)
    for g in range(1 << t.n):
        if is_trivial_set(ls, g) and not any(
            is_trivial_set(ls, s) for s in submasks_by_size(g, proper=True)
        ):
            return Check(False, g)
    return Check(True)


def mutant_directed_union_unguarded(amst: FiniteAmst, config: Optional[SearchConfig] = None) -> Check:
    """Cond (6) with the "all members satisfiable" guard dropped."""
    config = config or SearchConfig()
    t = _tables(amst)
    exhaustive = t.n <= config.exhaustive_limit
    for fam in _families(range(1 << t.n), config.rng(6), config.samples, exhaustive, upward=True):
        if not t.sat[_union(fam)]:
            return Check(False, tuple(fam))
    return Check(True)


def mutant_maxsat_greatest(amst: FiniteAmst) -> Check:
    """Cond (3) confusing "maximal" with "greatest": the union of every satisfiable superset must be satisfiable.

    Only an amst with two incomparable maximal satisfiable sets exposes it,
    so its smallest witness has two models and two sentences.
    """
    t = _tables(amst)
    for g in range(1 << t.n):
        if t.finsat[g]:
            above = _union([s for s in supermasks(g, t.full) if t.sat[s]])
            if not t.sat[above]:
                return Check(False, g)
    return Check(True)


MUTANTS = {
    "maxsat_greatest": (3, mutant_maxsat_greatest),
    "maxsat_strict_supersets": (3, mutant_maxsat_strict_supersets),
    "trivial_proper_subsets": (5, mutant_trivial_proper_subsets),
    "directed_union_unguarded": (6, mutant_directed_union_unguarded),
}


@dataclass
class CharacterizationReport:
    hypothesis_ok: bool
    conditions: Dict[int, Check] = field(default_factory=dict)

    @property
    def values(self) -> Dict[int, bool]:
        return {k: bool(v) for k, v in self.conditions.items()}

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) <= 1

    @property
    def violated(self) -> bool:
        """The hypothesis holds yet the conditions disagree."""
        return self.hypothesis_ok and not self.agree

    def to_dict(self) -> dict:
        return {
            "hypothesis_ok": self.hypothesis_ok,
            "conditions": {str(k): bool(v) for k, v in sorted(self.conditions.items())},
            "witnesses": {str(k): v.witness for k, v in sorted(self.conditions.items()) if not v},
        }


def hypothesis_holds(amst: FiniteAmst) -> bool:
    """Normal and ``L`` not finitely satisfiable."""
    return bool(is_normal(amst)) and not finsat_table(amst)[amst.all_sentences]


def characterization_report(
    amst: FiniteAmst,
    config: Optional[SearchConfig] = None,
    mutants=(),
) -> CharacterizationReport:
    """Run all nine conditions; ``mutants`` names entries of ``MUTANTS`` to swap in."""
    config = config or SearchConfig()
    checkers = dict(CONDITIONS)
    for name in mutants:
        if name not in MUTANTS:
            raise ArgumentError(f"unknown mutant {name!r}")
        idx, fn = MUTANTS[name]
        checkers[idx] = fn
    t = _Tables(amst)
    results = {}
    for idx, fn in checkers.items():
        if idx in _CONFIGURABLE:
            results[idx] = fn(t, config)
        elif idx == 1:
            results[idx] = fn(amst)
        else:
            results[idx] = fn(t)
    return CharacterizationReport(hypothesis_ok=hypothesis_holds(amst), conditions=results)


def characterization_verdict(amst: FiniteAmst, config: Optional[SearchConfig] = None, mutants=()) -> Verdict:
    report = characterization_report(amst, config, mutants)
    name = "compact_normal_I"
    if not report.hypothesis_ok:
        return Verdict(name, VACUOUS, detail="hypothesis failed: normal and L not finitely satisfiable")
    violations = [] if report.agree else [report.to_dict()]
    return verdict(name, violations)


def lemma_checks(amst: FiniteAmst) -> Verdict:
    """Instance checks of the lemmas surrounding the nine-way theorem.

    * ``maxfinsat_closed``: normal, Γ maximal finitely satisfiable and
      satisfiable implies Γ is closed.
    * ``nontrivial_iff_sat``: normal, Γ a proper maximal finitely satisfiable
      subset of ``L``: satisfiable iff nontrivial.
    * ``unsat_trivial``: unsatisfiable implies trivial (any amst); the
      converse when normal and ``L`` unsatisfiable.

    Witnesses are ``(lemma, Γ)``.
    """
    t = _Tables(amst)
    ls = induced_consequence(amst)
    normal = bool(is_normal(amst))
    counts = {"maxfinsat_closed": 0, "nontrivial_iff_sat": 0, "unsat_trivial": 0, "trivial_unsat": 0}
    violations = []
    if normal:
        for g in t.maximal_finsat():
            trivial = closure(ls, g) == t.full
            if t.sat[g]:
                counts["maxfinsat_closed"] += 1
                if closure(ls, g) != g:
                    violations.append(("maxfinsat_closed", g))
            if g != t.full:
                counts["nontrivial_iff_sat"] += 1
                if t.sat[g] != (not trivial):
                    violations.append(("nontrivial_iff_sat", g))
    converse = normal and not t.sat[t.full]
    for g in range(1 << t.n):
        trivial = closure(ls, g) == t.full
        if not t.sat[g]:
            counts["unsat_trivial"] += 1
            if not trivial:
                violations.append(("unsat_trivial", g))
        if converse and trivial:
            counts["trivial_unsat"] += 1
            if t.sat[g]:
                violations.append(("trivial_unsat", g))
    return verdict("lemmas", violations, counts=counts)


def shared_consequence_transfer(amst1: FiniteAmst, amst2: FiniteAmst) -> Verdict:
    """If ``amst1`` is compact and both induce the same consequence, ``amst2`` is compact."""
    if amst1.sentence_labels != amst2.sentence_labels:
        raise ArgumentError("the two amsts must share the sentence alphabet")
    name = "shared_consequence"
    failed = []
    for label, a in (("first", amst1), ("second", amst2)):
        if not is_normal(a):
            failed.append(f"{label} not normal")
        if mod_of(a, a.all_sentences):
            failed.append(f"L satisfiable in {label}")
    if not failed and induced_consequence(amst1) != induced_consequence(amst2):
        failed.append("induced consequences differ")
    if failed:
        return Verdict(name, VACUOUS, detail="hypothesis failed: " + ", ".join(failed))
    if not is_compact(amst1):
        return Verdict(name, VACUOUS, detail="hypothesis failed: first amst not compact")
    second = is_compact(amst2)
    return verdict(name, [] if second else [second.witness])
