import numpy as np
import pytest
from hypothesis import given

from amst import core
from amst.core import FiniteAmst
from amst.errors import ArgumentError, CapacityError, PreconditionError

from conftest import general_amsts, normal_amsts
from oracle import Amst, powerset, to_mask, to_set


class TestA1A2:
    def test_satisfies(self, a1):
        assert core.satisfies(a1, 2, a1.sentences("a", "b"))
        assert core.satisfies(a1, 0, 0)
        assert not core.satisfies(a1, 0, a1.sentences("b"))

    def test_mod(self, a1, a2):
        assert core.mod_of(a1, 0) == a1.models("m0", "m1", "m2")
        assert core.mod_of(a1, a1.sentences("a", "b")) == a1.models("m2")
        assert core.mod_of(a2, a2.sentences("a", "b")) == 0

    def test_th(self, a1):
        assert core.th_of(a1, 0) == a1.sentences("a", "b")
        assert core.th_of(a1, a1.models("m2")) == a1.sentences("a", "b")
        assert core.th_of(a1, a1.models("m0", "m2")) == a1.sentences("a")

    def test_satisfiable(self, a1, a2):
        assert core.is_satisfiable(a1, 0b11) == 2
        assert core.is_satisfiable(a2, 0b11) is None
        assert core.is_satisfiable(a1, 0) == 0

    def test_finitely_satisfiable(self, a1, a2):
        check = core.is_finitely_satisfiable(a2, 0b11)
        assert not check and check.witness == 0b11
        assert core.is_finitely_satisfiable(a1, 0b11)
        assert core.is_finitely_satisfiable(a2, 0)

    def test_compact(self, a1, a2):
        assert core.is_compact(a1) and core.is_compact(a2)

    def test_complete(self, a1, a2):
        assert core.is_complete_set(a1, 0b11)
        assert not core.is_complete_set(a1, 0)
        assert not core.is_complete_set(a2, 0b11)

    def test_maximal_extension(self, a1, a2):
        assert core.maximal_finitely_satisfiable_extension(a1, 0b01) == 0b11
        assert core.maximal_finitely_satisfiable_extension(a2, 0b01) == 0b01
        assert core.maximal_finitely_satisfiable_extension(a1, 0) == 0b11
        with pytest.raises(PreconditionError):
            core.maximal_finitely_satisfiable_extension(a2, 0b11)

    def test_induced_consequence(self, a1, a2):
        ls = core.induced_consequence(a2)
        assert ls.entails(0b01, 0) and not ls.entails(0b01, 1)
        assert ls.entails(0b11, 0) and ls.entails(0b11, 1)
        assert not core.induced_consequence(a1).entails(0, 0)


class TestNormality:
    def test_normal_matrix_is_normal(self, a1):
        assert core.is_normal(a1)

    def test_general_table_not_normal(self):
        # m satisfies {a,b} but not {a}
        table = np.array([[1, 0, 1, 1]], dtype=bool)
        check = core.is_normal(FiniteAmst.general("ab", ["m"], table))
        assert not check and check.witness == (0, 0b01)

    def test_general_table_of_normal_amst(self, a1):
        assert core.is_normal(a1.to_general())

    @given(general_amsts())
    def test_agrees_with_oracle(self, a):
        assert bool(core.is_normal(a)) == Amst(a).is_normal()


class TestValidation:
    def test_needs_a_model(self):
        with pytest.raises(ArgumentError):
            FiniteAmst.normal("a", [], np.zeros((0, 1)))

    def test_shape(self):
        with pytest.raises(ArgumentError):
            FiniteAmst.normal("ab", ["m"], [[1, 0, 1]])

    def test_general_cap(self):
        with pytest.raises(CapacityError):
            FiniteAmst.general([f"s{i}" for i in range(17)], ["m"], np.zeros((1, 1)))

    def test_sentence_range(self, a1):
        with pytest.raises(ArgumentError):
            core.mod_of(a1, 0b100)

    def test_unknown_label(self, a1):
        with pytest.raises(ArgumentError):
            a1.sentences("z")


class TestAgainstOracle:
    @given(normal_amsts())
    def test_mod_and_th(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            assert to_set(core.mod_of(a, to_mask(g))) == o.mod(g)
        for x in powerset(o.models):
            assert to_set(core.th_of(a, to_mask(x))) == o.th(x)

    @given(general_amsts())
    def test_general_mod_and_finsat(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            assert to_set(core.mod_of(a, to_mask(g))) == o.mod(g)
            assert bool(core.is_finitely_satisfiable(a, to_mask(g))) == o.finsat(g)
            assert core.finsat_table(a)[to_mask(g)] == o.finsat(g)

    @given(general_amsts())
    def test_compact(self, a):
        o = Amst(a)
        expected = all(o.satisfiable(g) == o.finsat(g) for g in powerset(o.sentences))
        assert bool(core.is_compact(a)) == expected

    @given(normal_amsts())
    def test_complete(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            assert core.is_complete_set(a, to_mask(g)) == o.complete(g)

    @given(general_amsts())
    def test_induced_consequence(self, a):
        o = Amst(a)
        ls = core.induced_consequence(a)
        for g in powerset(o.sentences):
            for s in o.sentences:
                assert ls.entails(to_mask(g), s) == o.entails(g, s)

    @given(general_amsts())
    def test_finsat_witness_is_minimal(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            check = core.is_finitely_satisfiable(a, to_mask(g))
            if not check:
                w = to_set(check.witness)
                assert w <= g and not o.satisfiable(w)
                assert all(o.satisfiable(s) for s in powerset(g) if len(s) < len(w))


class TestLaws:
    @given(normal_amsts())
    def test_mod_antitone_and_meets(self, a):
        o = Amst(a)
        subsets = powerset(o.sentences)
        for g in subsets:
            for h in subsets:
                if g <= h:
                    assert core.mod_of(a, to_mask(h)) & ~core.mod_of(a, to_mask(g)) == 0
                assert core.mod_of(a, to_mask(g | h)) == core.mod_of(a, to_mask(g)) & core.mod_of(a, to_mask(h))

    @given(normal_amsts())
    def test_th_laws(self, a):
        o = Amst(a)
        assert core.th_of(a, 0) == a.all_sentences
        for x in powerset(o.models):
            for y in powerset(o.models):
                tx, ty = core.th_of(a, to_mask(x)), core.th_of(a, to_mask(y))
                if x <= y:
                    assert ty & ~tx == 0
                assert core.th_of(a, to_mask(x | y)) == tx & ty

    @given(normal_amsts())
    def test_th_mod_fixed_points(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            closed = core.th_of(a, core.mod_of(a, to_mask(g)))
            assert to_mask(g) & ~closed == 0
            if g != o.sentences:
                fixed = closed == to_mask(g)
                assert fixed == (o.satisfiable(g) and o.closure(g) == g)

    @given(general_amsts())
    def test_unsatisfiable_sets_are_trivial(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            if not o.satisfiable(g):
                assert o.closure(g) == o.sentences

    @given(normal_amsts())
    def test_trivial_sets_unsatisfiable_when_l_is(self, a):
        o = Amst(a)
        if o.satisfiable(o.sentences):
            return
        ls = core.induced_consequence(a)
        for g in powerset(o.sentences):
            if to_set(int(ls.closures[to_mask(g)])) == o.sentences:
                assert not o.satisfiable(g)

    @given(general_amsts())
    def test_maximal_extension_is_maximal(self, a):
        o = Amst(a)
        for g in powerset(o.sentences):
            if not o.finsat(g):
                continue
            d = to_set(core.maximal_finitely_satisfiable_extension(a, to_mask(g)))
            assert g <= d and o.finsat(d)
            assert not any(o.finsat(d | {s}) for s in o.sentences - d)


class TestGaloisCheck:
    @given(normal_amsts(max_models=5, max_sentences=5))
    def test_verified(self, a):
        assert core.galois_check(a).status == "verified"

    def test_general_is_vacuous(self, a1):
        assert core.galois_check(a1.to_general()).status == "vacuous"
