import numpy as np
import pytest
from hypothesis import given, strategies as st

from amst import topology as tp
from amst.consequence import canonical_normal_amst
from amst.errors import BaseAxiomError, InvariantError, SubbaseError, TauNError

from conftest import normal_amsts, unsat_normal_amsts
from oracle import opens_from_subbase, to_mask

DISCRETE_2 = frozenset({0, 1, 2, 3})


@st.composite
def subbases(draw, max_points=5):
    n = draw(st.integers(1, max_points))
    sigma = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=n + 1))
    missing = (1 << n) - 1
    for s in sigma:
        missing &= ~s
    return n, sigma + ([missing] if missing else [])


class TestGeneration:
    def test_discrete(self):
        assert tp.generate_from_subbase(2, [0b01, 0b10]).opens == DISCRETE_2

    def test_indiscrete(self):
        assert tp.generate_from_subbase(2, [0b11]).opens == {0, 0b11}

    def test_three_points(self):
        top = tp.generate_from_subbase(3, [0b011, 0b110])
        assert top.opens == {0, 0b010, 0b011, 0b110, 0b111}

    def test_base(self):
        assert tp.generate_from_base(2, [0b01, 0b10]).opens == DISCRETE_2
        assert tp.generate_from_base(3, [0b111]).opens == {0, 0b111}

    def test_base_axiom_failure(self):
        with pytest.raises(BaseAxiomError) as exc:
            tp.generate_from_base(3, [0b011, 0b110])
        assert exc.value.witness == (0b011, 0b110)

    def test_uncovered_subbase(self):
        with pytest.raises(SubbaseError):
            tp.generate_from_subbase(2, [0b01])

    def test_invariants_enforced(self):
        with pytest.raises(InvariantError):
            tp.FiniteTopology(2, {0, 0b01, 0b11, 0b10, 0b100})
        with pytest.raises(InvariantError):
            tp.FiniteTopology(2, {0, 0b01})

    @given(subbases())
    def test_three_routes_agree_with_oracle(self, case):
        n, sigma = case
        top = tp.generate_from_subbase(n, sigma)
        expected = {to_mask(u) for u in opens_from_subbase(n, [{i for i in range(n) if s >> i & 1} for s in sigma])}
        assert top.opens == expected
        base = tp.intersection_closure(n, sigma)
        assert tp.generate_from_base(n, base) == top
        assert tp.opens_via_neighbourhoods(n, base) == top.opens


class TestCompactness:
    @given(subbases(max_points=4))
    def test_alexander_agrees(self, case):
        n, sigma = case
        top = tp.generate_from_subbase(n, sigma)
        assert bool(tp.is_compact_space(top)) == bool(tp.alexander_check(top, sigma))
        assert tp.is_compact_space(top)

    def test_discrete_two_point(self):
        top = tp.FiniteTopology(2, DISCRETE_2)
        assert tp.alexander_check(top, [0b01, 0b10])
        assert tp.smallest_subcover([0b01, 0b10], 0b11) == (0b01, 0b10)

    def test_smallest_subcover_none(self):
        assert tp.smallest_subcover([0b01], 0b11) is None


class TestAmstTopologies:
    def test_tau_n_a2(self, a2):
        top, subbase = tp.tau_N(a2)
        assert subbase == [0b10, 0b01] and top.opens == DISCRETE_2

    def test_tau_n_a1(self, a1):
        with pytest.raises(TauNError):
            tp.tau_N(a1)

    def test_tau_n_canonical_covers(self, t0):
        amst = canonical_normal_amst(t0)
        _, subbase = tp.tau_N(amst)
        cover = 0
        for s in subbase:
            cover |= s
        assert cover == amst.all_models

    def test_tau_c(self, a1, a2):
        top, base = tp.tau_C(a2)
        assert set(base) == {0b11, 0b01, 0b10, 0} and top.opens == DISCRETE_2
        _, base = tp.tau_C(a1)
        assert set(base) == {0b111, 0b101, 0b110, 0b100}

    def test_closed_sets_a2(self, a2):
        top, _ = tp.tau_N(a2)
        assert top.is_closed(0b01)
        assert tp.closed_sets_check(a2).status == "verified"
        assert tp.compactness_equivalence_check(a2).status == "verified"

    def test_vacuous_logs_hypothesis(self, a1):
        v = tp.closed_sets_check(a1)
        assert v.status == "vacuous" and v.detail == "hypothesis failed: L satisfiable"

    @given(normal_amsts(max_models=4, max_sentences=4))
    def test_tau_c_base_is_valid(self, a):
        _, base = tp.tau_C(a)
        assert tp.base_axiom_witness(base) is None

    @given(unsat_normal_amsts())
    def test_theorems_hold(self, a):
        assert tp.closed_sets_check(a).status == "verified"
        assert tp.compactness_equivalence_check(a).status == "verified"

    def test_random_subbase_covers(self):
        rng = np.random.default_rng(0)
        for n in range(1, 7):
            cover = 0
            for s in tp.random_subbase(n, rng):
                cover |= s
            assert cover == (1 << n) - 1
