import numpy as np
import pytest
from hypothesis import given

from amst import compactness as cp
from amst.consequence import canonical_normal_amst
from amst.core import FiniteAmst, induced_consequence
from amst.errors import ArgumentError
from amst.generate import all_normal_amsts

from conftest import make_a2, normal_amsts, unsat_normal_amsts
from oracle import Amst, powerset


@pytest.fixture
def canon_t0(t0):
    return canonical_normal_amst(t0)


class TestExamples:
    @pytest.mark.parametrize("idx", sorted(cp.CONDITIONS))
    def test_every_condition_holds_on_a2(self, a2, idx):
        assert cp.characterization_report(a2).conditions[idx]

    def test_a1_report(self, a1):
        report = cp.characterization_report(a1)
        assert not report.hypothesis_ok and len(report.conditions) == 9
        assert cp.characterization_verdict(a1).status == "vacuous"

    def test_canonical_t0_report(self, canon_t0):
        report = cp.characterization_report(canon_t0)
        assert report.hypothesis_ok and all(report.values.values())

    def test_to_dict_shape(self, a2):
        d = cp.characterization_report(a2).to_dict()
        assert set(d) == {"hypothesis_ok", "conditions", "witnesses"}
        assert list(d["conditions"]) == [str(i) for i in range(1, 10)]

    def test_directedness(self):
        assert not cp.is_directed([0b01, 0b10])
        assert cp.is_directed([0b01, 0b11])
        assert cp.is_directed([0b11, 0b01], upward=False)

    def test_no_trivial_sets(self):
        a = FiniteAmst.normal("a", ["m"], [[1]])
        assert cp.cond_trivial_finite_subset(a)


class TestLemmasAndTransfer:
    def test_lemmas_a2(self, a2):
        assert cp.lemma_checks(a2).status == "verified"

    def test_transfer(self, a2):
        canon = canonical_normal_amst(induced_consequence(a2))
        assert cp.shared_consequence_transfer(canon, a2).status == "verified"
        assert cp.shared_consequence_transfer(a2, a2).status == "verified"

    def test_transfer_vacuous(self, a1, a2):
        v = cp.shared_consequence_transfer(a1, a2)
        assert v.status == "vacuous" and v.detail.startswith("hypothesis failed")

    @given(normal_amsts(max_models=4, max_sentences=3))
    def test_lemmas_hold(self, a):
        assert cp.lemma_checks(a).status != "violated"


class TestEquivalence:
    def test_exhaustive_two_by_two(self):
        checked = 0
        for k in (1, 2):
            for n in (1, 2):
                for a in all_normal_amsts(k, n):
                    report = cp.characterization_report(a)
                    if report.hypothesis_ok:
                        checked += 1
                        assert all(report.values.values())
        assert checked > 0

    @given(unsat_normal_amsts(max_models=4, max_sentences=3))
    def test_all_true_under_hypothesis(self, a):
        report = cp.characterization_report(a)
        assert report.hypothesis_ok and all(report.values.values())

    @given(unsat_normal_amsts(max_models=4, max_sentences=2))
    def test_condition_three_matches_oracle(self, a):
        o = Amst(a)
        maxsat = o.maximal_satisfiable()
        expected = all(any(g <= d for d in maxsat) for g in powerset(o.sentences) if o.finsat(g))
        assert bool(cp.cond_maximal_satisfiable(a)) == expected


class TestMutants:
    @pytest.mark.parametrize("name", sorted(cp.MUTANTS))
    def test_caught_on_a2(self, name):
        assert cp.characterization_report(make_a2(), mutants=(name,)).violated

    def test_unknown_mutant(self, a2):
        with pytest.raises(ArgumentError):
            cp.characterization_report(a2, mutants=("nope",))

    def test_greatest_needs_two_incomparable_maxima(self):
        chain = FiniteAmst.normal("ab", ["m0", "m1"], np.array([[1, 0], [1, 1]]))
        assert cp.mutant_maxsat_greatest(chain)
        assert not cp.mutant_maxsat_greatest(make_a2())
