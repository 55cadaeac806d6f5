"""Theorem registry, suite runner, shrinker and fuzzer.

Each registered check draws its instances from a generator seeded by the run
seed and the check's own name, so any single check can be rerun in isolation
and reproduces the same instances.
"""

import zlib
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterable, Optional

import numpy as np

from . import adapters, compactness, consequence, counterexample, cpl, topology, ultra
from .bits import popcount
from .core import FiniteAmst, finsat_table, galois_check, induced_consequence
from .errors import ArgumentError, AxiomViolation, EmptinessError
from .generate import DEFAULT_SEED, GenParams, all_normal_amsts, random_amst, random_tarski, small_grid
from .io import amst_to_json, digest
from .report import VACUOUS, VERIFIED, VIOLATED, Verdict


@dataclass
class SuiteConfig:
    """What to run.  ``theorems=None`` means every registered check; ``count``
    overrides the number of random instances where a check draws them."""

    theorems: Optional[list] = None
    seed: int = DEFAULT_SEED
    count: Optional[int] = None
    max_sentences: Optional[int] = None
    max_models: Optional[int] = None
    mutants: tuple = ()


@dataclass
class _Run:
    config: SuiteConfig
    name: str

    @property
    def rng(self) -> np.random.Generator:
        return np.random.default_rng([self.config.seed, zlib.crc32(self.name.encode())])

    def count(self, default: int) -> int:
        return default if self.config.count is None else self.config.count

    def params(self, max_models: int, max_sentences: int, min_sentences: int = 1) -> GenParams:
        return GenParams(
            seed=self.config.seed,
            max_models=min(max_models, self.config.max_models or max_models),
            max_sentences=min(max_sentences, self.config.max_sentences or max_sentences),
            min_sentences=min_sentences,
        )


@dataclass
class Tally:
    """Aggregates per-instance verdicts of one theorem into a single verdict."""

    theorem: str
    seed: int
    verified: int = 0
    vacuous: Counter = field(default_factory=Counter)
    violation: Optional[Verdict] = None
    violations: int = 0

    def add(self, v: Verdict, instance: Optional[dict] = None):
        if v.status == VERIFIED:
            self.verified += 1
        elif v.status == VACUOUS:
            self.vacuous[v.detail or "hypothesis failed"] += 1
        else:
            self.violations += 1
            if self.violation is None:
                self.violation = v
                if instance is not None:
                    self.violation.digest = digest(instance)
                    self.violation.witness = {"instance": instance, "detail": v.witness}

    def verdict(self) -> Verdict:
        counts = {"verified": self.verified, "vacuous": sum(self.vacuous.values()), "violated": self.violations}
        detail = "; ".join(f"{reason} (x{n})" for reason, n in sorted(self.vacuous.items()))
        if self.violation is not None:
            return Verdict(
                self.theorem,
                VIOLATED,
                witness=self.violation.witness,
                detail=detail,
                digest=self.violation.digest,
                seed=self.seed,
                counts=counts,
            )
        status = VERIFIED if self.verified or not self.vacuous else VACUOUS
        return Verdict(self.theorem, status, detail=detail, seed=self.seed, counts=counts)


def _tally_amsts(run: _Run, amsts: Iterable[FiniteAmst], check: Callable[[FiniteAmst], Verdict]) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for a in amsts:
        tally.add(check(a), amst_to_json(a))
    return tally.verdict()


def _random_amsts(run: _Run, n: int, max_models: int, max_sentences: int, min_sentences: int = 1):
    rng = run.rng
    p = run.params(max_models, max_sentences, min_sentences)
    return [random_amst(p, rng) for _ in range(n)]


def _exhaustive(max_models: int, max_sentences: int, min_sentences: int = 0):
    for k, n in product(range(1, max_models + 1), range(min_sentences, max_sentences + 1)):
        yield from all_normal_amsts(k, n)


# Registered checks ---------------------------------------------------------


def check_galois(run: _Run) -> Verdict:
    amsts = _random_amsts(run, run.count(500), 8, 8, min_sentences=0)
    return _tally_amsts(run, list(_exhaustive(2, 2)) + amsts, galois_check)


def _rep_tarski_instance(ls) -> Verdict:
    name = "rep_tarski"
    if not consequence.is_tarski_type(ls):
        return Verdict(name, VIOLATED, witness="generated structure is not Tarski-type")
    operator = consequence.closure_operator_report(ls)
    if not operator:
        return Verdict(name, VIOLATED, witness="closure operator checks disagree with Tarski checks")
    try:
        amst = consequence.canonical_normal_amst(ls)
    except EmptinessError:
        return Verdict(name, VACUOUS, detail="hypothesis failed: no nontrivial set")
    problems = []
    if induced_consequence(amst) != ls:
        problems.append("round trip changed the turnstile")
    if amst.mod_table[amst.all_sentences]:
        problems.append("L satisfiable in the canonical amst")
    return Verdict(name, VIOLATED, witness=problems) if problems else Verdict(name, VERIFIED)


def _random_tarski_structures(run: _Run, n: int):
    rng = run.rng
    p = run.params(6, 6)
    return [random_tarski(GenParams(p.seed, p.max_models, p.max_sentences, density=float(rng.random())), rng) for _ in range(n)]


def check_rep_tarski(run: _Run) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for ls in _random_tarski_structures(run, run.count(200)):
        tally.add(_rep_tarski_instance(ls), {"sentences": list(ls.sentence_labels), "turnstile": ls.turnstile.astype(int).tolist()})
    return tally.verdict()


def check_finitary_trivial(run: _Run) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for ls in _random_tarski_structures(run, run.count(200)):
        tally.add(consequence.check_finitary_trivial_theorem(ls))
    return tally.verdict()


def check_compact_normal_I(run: _Run) -> Verdict:
    config = compactness.SearchConfig(seed=run.config.seed)
    amsts = list(_exhaustive(3, 3)) + _random_amsts(run, run.count(300), 6, 6)
    return _tally_amsts(
        run, amsts, lambda a: compactness.characterization_verdict(a, config, mutants=run.config.mutants)
    )


def check_lemmas(run: _Run) -> Verdict:
    amsts = list(_exhaustive(3, 3)) + _random_amsts(run, run.count(300), 6, 6)
    return _tally_amsts(run, amsts, compactness.lemma_checks)


MUTATION_FIXTURE = FiniteAmst.normal("ab", ["m0", "m1"], [[1, 0], [0, 1]])

# The bug behind the shrinker's regression fixture; every failing instance
# shrinks to MUTATION_FIXTURE up to relabelling and row order.
SHRINK_FIXTURE_MUTANT = "maxsat_greatest"


def check_mutation(run: _Run) -> Verdict:
    """Every documented mutant makes the nine-way cross-check fail on the fixture."""
    missed = []
    for name in sorted(compactness.MUTANTS):
        report = compactness.characterization_report(MUTATION_FIXTURE, mutants=(name,))
        if not report.violated:
            missed.append(name)
    counts = {"mutants": len(compactness.MUTANTS), "caught": len(compactness.MUTANTS) - len(missed)}
    if missed:
        return Verdict(run.name, VIOLATED, witness={"missed": missed}, seed=run.config.seed, counts=counts)
    return Verdict(run.name, VERIFIED, seed=run.config.seed, counts=counts)


def check_shared_consequence(run: _Run) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for a in _random_amsts(run, run.count(100), 5, 5):
        try:
            b = consequence.canonical_normal_amst(induced_consequence(a))
        except EmptinessError:
            tally.add(Verdict(run.name, VACUOUS, detail="hypothesis failed: no nontrivial set"))
            continue
        tally.add(compactness.shared_consequence_transfer(a, b), amst_to_json(a))
    return tally.verdict()


def check_topology_generation(run: _Run) -> Verdict:
    """Subbase, base and neighbourhood routes give one topology; subbasic and full compactness agree."""
    rng = run.rng
    tally = Tally(run.name, run.config.seed)
    for _ in range(run.count(200)):
        n = int(rng.integers(1, 7))
        sigma = topology.random_subbase(n, rng)
        instance = {"ground_size": n, "subbase": sorted(sigma)}
        top = topology.generate_from_subbase(n, sigma)
        base = topology.intersection_closure(n, sigma)
        problems = []
        if topology.generate_from_base(n, base) != top:
            problems.append("base route differs")
        if topology.opens_via_neighbourhoods(n, base) != top.opens:
            problems.append("neighbourhood route differs")
        if bool(topology.is_compact_space(top)) != bool(topology.alexander_check(top, sigma)):
            problems.append("compactness and subbasic compactness disagree")
        v = Verdict(run.name, VIOLATED, witness=problems) if problems else Verdict(run.name, VERIFIED)
        tally.add(v, instance)
    return tally.verdict()


def _unsat_amsts(run: _Run, n: int, max_models: int, max_sentences: int):
    """Random normal amsts, half of them with an always-false sentence appended so L is unsatisfiable."""
    out = []
    rng = run.rng
    p = run.params(max_models, max_sentences)
    for i in range(n):
        a = random_amst(p, rng)
        if i % 2:
            matrix = np.hstack([a.matrix, np.zeros((a.n_models, 1), dtype=bool)])
            a = FiniteAmst.normal(a.sentence_labels + ("bot",), a.model_labels, matrix)
        out.append(a)
    return out


def check_compact_normal_II(run: _Run) -> Verdict:
    return _tally_amsts(run, _unsat_amsts(run, run.count(200), 6, 5), topology.compactness_equivalence_check)


def check_tarski_top(run: _Run) -> Verdict:
    return _tally_amsts(run, _unsat_amsts(run, run.count(200), 6, 5), topology.closed_sets_check)


def _family_check(n: int) -> list:
    """Problems found comparing filter machinery with brute force over every family on ``n`` indices."""
    problems = []
    subsets = range(1 << n)
    families = [ultra.family(n, [s for s in subsets if code >> s & 1]) for code in range(1 << (1 << n))]
    filters = [f for f in families if ultra.is_filter(f)]
    proper = [f for f in filters if ultra.is_proper(f)]
    maximal = [f for f in proper if not any(f.members < g.members for g in proper)]
    ultras = [f for f in families if ultra.is_ultrafilter(f)]
    expected = ultra.enumerate_ultrafilters(n)
    if len(expected) != n or set(ultras) != set(expected) or set(maximal) != set(expected):
        problems.append(("ultrafilters", n))
    for fam in families:
        if not ultra.has_fip(fam):
            continue
        generated = ultra.generated_filter(fam)
        smallest = [f for f in filters if fam.members <= f.members and all(f.members <= g.members for g in filters if fam.members <= g.members)]
        if not ultra.is_filter(generated) or not ultra.is_proper(generated) or smallest != [generated]:
            problems.append(("generated_filter", fam.sorted_members()))
            break
        if generated.members and ultra.extend_to_ultrafilter(generated).members < generated.members:
            problems.append(("extension", fam.sorted_members()))
            break
    return problems


def check_ultrafilters(run: _Run) -> Verdict:
    problems = []
    checked = 0
    for n in range(1, 4):
        problems += _family_check(n)
        checked += 1 << (1 << n)
    fams4 = _four_point_families(run)
    filters4 = _all_filters(4)
    for fam in fams4:
        checked += 1
        if not ultra.has_fip(fam):
            continue
        generated = ultra.generated_filter(fam)
        containing = [f for f in filters4 if fam.members <= f]
        least = min(containing, key=len)
        if not all(least <= f for f in containing) or generated.members != least:
            problems.append(("generated_filter", 4, fam.sorted_members()))
            break
    counts = {"families": checked}
    if problems:
        return Verdict(run.name, VIOLATED, witness=problems[0], seed=run.config.seed, counts=counts)
    return Verdict(run.name, VERIFIED, seed=run.config.seed, counts=counts)


def _all_filters(n: int) -> list:
    """Every filter on ``n`` indices, found by brute force over families of up-sets.

    On a finite set a filter is closed under intersection, so it is either
    empty or the up-set of its least member; the brute force still tests each
    candidate against the definition rather than trusting that shape.
    """
    full = (1 << n) - 1
    candidates = {frozenset()}
    for core in range(1 << n):
        candidates.add(frozenset(s for s in range(full + 1) if s & core == core))
    return [c for c in candidates if ultra.is_filter(ultra.family(n, c))]


def _four_point_families(run: _Run) -> list:
    """Every family of at most two members on four indices plus seeded random larger families."""
    out = [ultra.family(4, [])]
    for a in range(16):
        out.append(ultra.family(4, [a]))
        for b in range(a + 1, 16):
            out.append(ultra.family(4, [a, b]))
    rng = run.rng
    for _ in range(run.count(500)):
        size = int(rng.integers(3, 9))
        out.append(ultra.family(4, [int(x) for x in rng.integers(16, size=size)]))
    return out


def check_los_grid(run: _Run) -> Verdict:
    """Every canonical normal amst with at most 4 models and 4 sentences, every sequence of length ≤ 3."""
    tally = Tally(run.name, run.config.seed)
    for a in small_grid(4, 4):
        if topology.tau_n_eligible(a):
            tally.add(Verdict(run.name, VACUOUS, detail="hypothesis failed: " + topology.tau_n_eligible(a)))
            continue
        problems = []
        for n in (1, 2, 3):
            for seq in product(range(a.n_models), repeat=n):
                for j, u in enumerate(ultra.enumerate_ultrafilters(n)):
                    found = ultra.los_instance_check(a, seq, u)
                    if found:
                        problems.append({"sequence": list(seq), "ultrafilter": j, "mismatches": found})
        v = Verdict(run.name, VIOLATED, witness=problems[0]) if problems else Verdict(run.name, VERIFIED)
        tally.add(v, amst_to_json(a))
    return tally.verdict()


def _sigmas(amst: FiniteAmst) -> list:
    """Finitely satisfiable σ with |σ| ≤ 2, plus the first one of size 3."""
    fs = finsat_table(amst)
    small = [s for s in range(1 << amst.n_sentences) if fs[s] and popcount(s) <= 2]
    three = [s for s in range(1 << amst.n_sentences) if fs[s] and popcount(s) == 3]
    return small + three[:1]


def check_order_maxsat(run: _Run) -> Verdict:
    return _tally_amsts(run, _unsat_amsts(run, run.count(200), 5, 4), ultra.order_maxsat_check)


def _per_sigma(run: _Run, fn) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for i, a in enumerate(_unsat_amsts(run, run.count(200), 5, 4)):
        for s in _sigmas(a):
            tally.add(fn(a, s, seed=run.config.seed + i), {"amst": amst_to_json(a), "sigma": s})
    return tally.verdict()


def check_compact_normal_III(run: _Run) -> Verdict:
    return _per_sigma(run, ultra.theorem_III_check)


def check_compact_normal_IV(run: _Run) -> Verdict:
    return _per_sigma(run, ultra.theorem_IV_check)


def check_cpl(run: _Run) -> Verdict:
    tally = Tally(run.name, run.config.seed)
    for n_vars in (1, 2, 3):
        variables = "pqr"[:n_vars]
        reps = cpl.truth_function_representatives(variables, 3)
        result = cpl.ultravaluation_sweep(variables, reps.values())
        v = Verdict(run.name, VIOLATED, witness=result["failure"]) if result["failure"] else Verdict(run.name, VERIFIED)
        tally.add(v, {"variables": list(variables), "depth": 3, "mode": "truth functions"})
    for n_vars in (1, 2):
        variables = "pq"[:n_vars]
        result = cpl.ultravaluation_sweep(variables, cpl.formulas_up_to_depth(variables, 2))
        v = Verdict(run.name, VIOLATED, witness=result["failure"]) if result["failure"] else Verdict(run.name, VERIFIED)
        tally.add(v, {"variables": list(variables), "depth": 2, "mode": "every formula"})
    return tally.verdict()


def check_counterexample(run: _Run) -> Verdict:
    report = counterexample.verify_counterexample(16)
    failed = [c["id"] for c in report["claims"] if not c["verified"]]
    counts = {"claims": len(report["claims"])}
    if failed:
        return Verdict(run.name, VIOLATED, witness={"failed_claims": failed}, seed=run.config.seed, counts=counts)
    return Verdict(run.name, VERIFIED, seed=run.config.seed, counts=counts)


def check_adapters(run: _Run) -> Verdict:
    rng = run.rng
    problems = []
    n = run.count(100)
    for _ in range(n):
        q = adapters.random_quiver(rng)
        if adapters.amst_to_quiver(adapters.quiver_to_amst(q), q.vertices) != q:
            problems.append(("quiver", q))
        ls = adapters.random_logical_structure(rng)
        if adapters.amst_to_logical_structure(adapters.logical_structure_to_amst(ls)) != ls:
            problems.append(("logic", ls.sentence_labels))
    for i in range(n):
        c = adapters.random_monoid_category(rng) if i % 2 else adapters.random_poset_category(rng)
        if adapters.amst_to_category(adapters.category_to_amst(c)) != c:
            problems.append(("category", c.morphisms))
    for name, thunk, label in adapters.broken_fixtures():
        try:
            thunk()
            problems.append(("fixture accepted", name))
        except AxiomViolation as exc:
            if exc.label != label:
                problems.append(("fixture mislabelled", name, exc.label))
    counts = {"round_trips": 3 * n, "fixtures": len(adapters.broken_fixtures())}
    if problems:
        return Verdict(run.name, VIOLATED, witness=repr(problems[0]), seed=run.config.seed, counts=counts)
    return Verdict(run.name, VERIFIED, seed=run.config.seed, counts=counts)


REGISTRY: Dict[str, Callable[[_Run], Verdict]] = {
    "galois": check_galois,
    "rep_tarski": check_rep_tarski,
    "finitary_trivial": check_finitary_trivial,
    "compact_normal_I": check_compact_normal_I,
    "mutation": check_mutation,
    "lemmas": check_lemmas,
    "shared_consequence": check_shared_consequence,
    "topology_generation": check_topology_generation,
    "compact_normal_II": check_compact_normal_II,
    "tarski_top": check_tarski_top,
    "ultrafilters": check_ultrafilters,
    "los_grid": check_los_grid,
    "order_maxsat": check_order_maxsat,
    "compact_normal_III": check_compact_normal_III,
    "compact_normal_IV": check_compact_normal_IV,
    "cpl_ultravaluation": check_cpl,
    "counterexample": check_counterexample,
    "adapters": check_adapters,
}


def run_suite(config: SuiteConfig) -> list:
    """Run the configured checks in registry order and return one verdict per check."""
    names = list(REGISTRY) if config.theorems is None else list(config.theorems)
    unknown = [n for n in names if n not in REGISTRY]
    if unknown:
        raise ArgumentError(f"unknown theorem id(s): {', '.join(unknown)}")
    for m in config.mutants:
        if m not in compactness.MUTANTS:
            raise ArgumentError(f"unknown mutant {m!r}")
    return [REGISTRY[name](_Run(config, name)) for name in names]


def exit_code(verdicts: Iterable[Verdict]) -> int:
    return 1 if any(v.status == VIOLATED for v in verdicts) else 0


# Shrinking and fuzzing -------------------------------------------------------


def shrink(amst: FiniteAmst, passes: Callable[[FiniteAmst], bool], trace: Optional[list] = None) -> FiniteAmst:
    """Greedily drop models, then sentences, while ``passes`` stays false.

    Removal is tried in index order and restarts after every success, so the
    result is 1-minimal: removing any single model or sentence makes the
    predicate pass (or would leave no models).  Accepted intermediate
    instances are appended to ``trace`` when one is given.
    """
    if passes(amst):
        raise ArgumentError("the predicate already passes on the input")
    current = amst
    changed = True
    while changed:
        changed = False
        for axis in ("models", "sentences"):
            size = current.n_models if axis == "models" else current.n_sentences
            for i in range(size):
                if axis == "models":
                    if current.n_models == 1:
                        break
                    keep_m = [m for m in range(current.n_models) if m != i]
                    keep_l = list(range(current.n_sentences))
                else:
                    keep_m = list(range(current.n_models))
                    keep_l = [a for a in range(current.n_sentences) if a != i]
                candidate = current.restrict(keep_m, keep_l)
                if not passes(candidate):
                    current = candidate
                    changed = True
                    if trace is not None:
                        trace.append(candidate)
                    break
            if changed:
                break
    return current


def _instance_checks(config: compactness.SearchConfig, mutants=()) -> dict:
    return {
        "galois": galois_check,
        "compact_normal_I": lambda a: compactness.characterization_verdict(a, config, mutants=mutants),
        "lemmas": compactness.lemma_checks,
        "compact_normal_II": topology.compactness_equivalence_check,
        "tarski_top": topology.closed_sets_check,
        "order_maxsat": ultra.order_maxsat_check,
    }


def fuzz(budget: int, seed: int = DEFAULT_SEED, mutants=()) -> list:
    """Check ``budget`` random normal amsts against every per-instance checker.

    Violations are shrunk to 1-minimal instances and reported as verdicts
    whose witness carries the shrunk amst.
    """
    if budget < 0:
        raise ArgumentError("budget must be non-negative")
    rng = np.random.default_rng([seed, zlib.crc32(b"fuzz")])
    config = compactness.SearchConfig(seed=seed)
    checks = _instance_checks(config, mutants)
    tallies = {name: Tally(name, seed) for name in checks}
    for i in range(budget):
        p = GenParams(seed=seed, max_models=5, max_sentences=4, density=float(rng.uniform(0.2, 0.8)))
        a = random_amst(p, rng)
        if i % 2:
            matrix = np.hstack([a.matrix, np.zeros((a.n_models, 1), dtype=bool)])
            a = FiniteAmst.normal(a.sentence_labels + ("bot",), a.model_labels, matrix)
        for name, check in checks.items():
            v = check(a)
            if v.status == VIOLATED and tallies[name].violation is None:
                small = shrink(a, lambda b, check=check: check(b).status != VIOLATED)
                v = Verdict(name, VIOLATED, witness={"shrunk": amst_to_json(small), "detail": check(small).witness})
            tallies[name].add(v)
    return [t.verdict() for t in tallies.values()]
