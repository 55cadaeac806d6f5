import numpy as np
import pytest

from amst import compactness, harness
from amst.core import FiniteAmst
from amst.errors import ArgumentError
from amst.generate import GenParams, random_amst
from amst.io import dumps


def injected(mutant):
    return lambda a: not compactness.characterization_report(a, mutants=(mutant,)).violated


def failing_instances(mutant, count, seed=5):
    rng = np.random.default_rng(seed)
    p = GenParams(max_models=5, max_sentences=4, min_models=3, min_sentences=3)
    passes = injected(mutant)
    out = []
    while len(out) < count:
        a = random_amst(p, rng)
        if not passes(a):
            out.append(a)
    return out


def canonical_rows(a):
    return sorted(a.matrix.astype(int).tolist())


class TestShrink:
    def test_reaches_documented_witness(self):
        passes = injected(harness.SHRINK_FIXTURE_MUTANT)
        witness = canonical_rows(harness.MUTATION_FIXTURE)
        for a in failing_instances(harness.SHRINK_FIXTURE_MUTANT, 5):
            assert canonical_rows(harness.shrink(a, passes)) == witness

    @pytest.mark.parametrize("mutant", sorted(compactness.MUTANTS))
    def test_one_minimal_and_monotone(self, mutant):
        passes = injected(mutant)
        for a in failing_instances(mutant, 3):
            trace = []
            small = harness.shrink(a, passes, trace)
            sizes = [(a.n_models, a.n_sentences)] + [(t.n_models, t.n_sentences) for t in trace]
            assert all(x[0] + x[1] > y[0] + y[1] for x, y in zip(sizes, sizes[1:]))
            assert not any(passes(t) for t in trace)
            for m in range(small.n_models if small.n_models > 1 else 0):
                keep = [i for i in range(small.n_models) if i != m]
                assert passes(small.restrict(keep, range(small.n_sentences)))
            for s in range(small.n_sentences):
                keep = [i for i in range(small.n_sentences) if i != s]
                assert passes(small.restrict(range(small.n_models), keep))

    def test_already_minimal_is_unchanged(self):
        a = harness.MUTATION_FIXTURE
        assert harness.shrink(a, injected(harness.SHRINK_FIXTURE_MUTANT)) == a

    def test_passing_input_is_rejected(self):
        with pytest.raises(ArgumentError):
            harness.shrink(harness.MUTATION_FIXTURE, lambda a: True)


class TestRunSuite:
    def test_empty_config(self):
        verdicts = harness.run_suite(harness.SuiteConfig(theorems=[]))
        assert verdicts == [] and harness.exit_code(verdicts) == 0

    def test_unknown_theorem(self):
        with pytest.raises(ArgumentError):
            harness.run_suite(harness.SuiteConfig(theorems=["nope"]))

    def test_unknown_mutant(self):
        with pytest.raises(ArgumentError):
            harness.run_suite(harness.SuiteConfig(theorems=["galois"], mutants=("nope",)))

    def test_injected_bug_fails(self):
        config = harness.SuiteConfig(theorems=["compact_normal_I"], count=5, mutants=(harness.SHRINK_FIXTURE_MUTANT,))
        verdicts = harness.run_suite(config)
        assert harness.exit_code(verdicts) == 1
        v = verdicts[0]
        assert v.status == "violated" and v.witness["instance"] and v.digest

    def test_deterministic_report(self):
        config = harness.SuiteConfig(theorems=["galois", "compact_normal_III", "adapters"], count=10, seed=3)
        first = dumps([v.to_dict() for v in harness.run_suite(config)])
        assert first == dumps([v.to_dict() for v in harness.run_suite(config)])

    def test_checks_are_independent_of_selection(self):
        alone = harness.run_suite(harness.SuiteConfig(theorems=["lemmas"], count=10))
        together = harness.run_suite(harness.SuiteConfig(theorems=["galois", "lemmas"], count=10))
        assert alone[0].to_dict() == together[1].to_dict()

    def test_vacuous_counts_are_logged(self):
        (v,) = harness.run_suite(harness.SuiteConfig(theorems=["compact_normal_III"], count=20))
        if v.counts["vacuous"]:
            assert "hypothesis failed" in v.detail


class TestTally:
    def test_witness_iff_violated(self):
        t = harness.Tally("x", 0)
        t.add(harness.Verdict("x", "verified"))
        assert t.verdict().witness is None
        t.add(harness.Verdict("x", "violated", witness="w"), {"k": 1})
        v = t.verdict()
        assert v.status == "violated" and v.witness == {"instance": {"k": 1}, "detail": "w"}


class TestFuzz:
    def test_clean(self):
        assert harness.exit_code(harness.fuzz(10, seed=1)) == 0

    def test_injected_bug_is_shrunk(self):
        verdicts = harness.fuzz(30, seed=1, mutants=(harness.SHRINK_FIXTURE_MUTANT,))
        (bad,) = [v for v in verdicts if v.status == "violated"]
        shrunk = FiniteAmst.normal(["a", "b"], ["x", "y"], bad.witness["shrunk"]["matrix"])
        assert canonical_rows(shrunk) == canonical_rows(harness.MUTATION_FIXTURE)

    def test_negative_budget(self):
        with pytest.raises(ArgumentError):
            harness.fuzz(-1)
