import numpy as np
import pytest

from amst import adapters as ad
from amst.bits import bits
from amst.core import induced_consequence, is_normal
from amst.errors import ArgumentError, AxiomViolation, EmptinessError


@pytest.fixture
def rng():
    return np.random.default_rng(11)


class TestInformationSystems:
    def test_minimal_system_passes(self):
        report = ad.validate_information_system(ad._minimal_info_system())
        assert all(report.values())

    def test_missing_reflexive_pair(self):
        info = ad._minimal_info_system()
        broken = ad.InformationSystem(info.tokens, info.con, info.entail - {(0b01, 0)})
        report = ad.validate_information_system(broken)
        assert not report["d"] and report["d"].witness == (0b01, 0)

    def test_token_satisfies_itself(self):
        amst = ad.info_system_to_amst(ad._minimal_info_system())
        assert amst.matrix[0, 0b01]

    def test_induced_relation_on_con_misses_entailments(self):
        # Γ = {a, b} is satisfied by both tokens, so Mod(Γ) ⊆ Mod({α}) fails for both α,
        # although {a, b} entails a and b in the system itself
        info = ad._minimal_info_system()
        ls = induced_consequence(ad.info_system_to_amst(info))
        assert info.entails(0b11, 0) and not ls.entails(0b11, 0)


class TestChu:
    def test_single_point(self):
        amst = ad.chu_to_amst(ad.ChuSpace(["x"], ["a"], ["0", "1"], [[0]]))
        assert amst.model_labels == ("(x,a)",)
        assert [g for g in range(4) if amst.matrix[0, g]] == [0b01]

    def test_never_normal(self, rng):
        chu = ad.ChuSpace(["x", "y"], ["a"], ["0", "1", "2"], [[2], [0]])
        assert not is_normal(ad.chu_to_amst(chu))

    def test_empty_alphabet_needs_empty_relation(self):
        with pytest.raises(ArgumentError):
            ad.ChuSpace(["x"], ["a"], [], [[0]])
        with pytest.raises(EmptinessError):
            ad.chu_to_amst(ad.ChuSpace([], ["a"], [], []))


class TestQuivers:
    def test_one_edge(self):
        q = ad.Quiver(("u", "v"), ("e",), (0,), (1,))
        amst = ad.quiver_to_amst(q)
        satisfied = [g for g in range(1 << 4) if amst.matrix[0, g]]
        assert [amst.sentence_labels[a] for a in bits(satisfied[0])] == ["(u,v)"] and len(satisfied) == 1
        assert ad.amst_to_quiver(amst, q.vertices) == q

    def test_random_round_trips(self, rng):
        for _ in range(100):
            q = ad.random_quiver(rng)
            assert ad.amst_to_quiver(ad.quiver_to_amst(q), q.vertices) == q


class TestLogicalStructures:
    def test_t0(self, t0):
        amst = ad.logical_structure_to_amst(t0)
        for g in range(4):
            for a in range(2):
                assert amst.matrix[a, g] == (not t0.entails(g, a))
        assert ad.amst_to_logical_structure(amst) == t0

    def test_empty_turnstile(self):
        ls = ad.LogicalStructure("pq", np.zeros((4, 2), dtype=bool))
        assert ad.logical_structure_to_amst(ls).matrix.all()

    def test_random_round_trips(self, rng):
        for _ in range(100):
            ls = ad.random_logical_structure(rng)
            assert ad.amst_to_logical_structure(ad.logical_structure_to_amst(ls)) == ls

    def test_label_mismatch(self, a1):
        with pytest.raises(ArgumentError):
            ad.amst_to_logical_structure(a1)


class TestCategories:
    def test_trivial_monoid(self):
        c = ad.monoid_category(["id"], [[0]])
        assert all(ad.validate_object_free_category(c).values())
        amst = ad.category_to_amst(c)
        assert amst.matrix[0].sum() == 1

    def test_two_arrow_category(self):
        c = ad._two_arrow_category()
        assert all(ad.validate_object_free_category(c).values())
        assert sorted(ad.units(c)) == [0, 1]

    def test_broken_associativity_witness(self):
        report = ad.validate_object_free_category(ad._broken_z3())
        assert not report["b_P"] and len(report["b_P"].witness) == 3

    def test_random_round_trips(self, rng):
        for i in range(100):
            c = ad.random_monoid_category(rng) if i % 2 else ad.random_poset_category(rng)
            assert ad.amst_to_category(ad.category_to_amst(c)) == c


@pytest.mark.parametrize("name, thunk, label", ad.broken_fixtures(), ids=[f[0] for f in ad.broken_fixtures()])
def test_broken_fixture_is_rejected(name, thunk, label):
    with pytest.raises(AxiomViolation) as exc:
        thunk()
    assert exc.value.label == label
