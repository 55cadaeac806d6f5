import pytest
from hypothesis import given, strategies as st

from amst import cpl
from amst.core import induced_consequence, is_normal
from amst.consequence import is_tarski_type
from amst.errors import EvaluationError, ParseError
from amst.ultra import enumerate_ultrafilters, principal

from oracle import powerset

P, Q, R = cpl.Var("p"), cpl.Var("q"), cpl.Var("r")


def formulas(variables=("p", "q", "r")):
    atoms = st.sampled_from([cpl.Var(v) for v in variables])
    return st.recursive(
        atoms,
        lambda sub: st.one_of(
            st.builds(cpl.Not, sub),
            *(st.builds(op, sub, sub) for op in cpl.BINARY),
        ),
        max_leaves=8,
    )


class TestParser:
    def test_examples(self):
        assert cpl.parse_formula("p & ~q") == cpl.And(P, cpl.Not(Q))
        assert cpl.parse_formula("p -> q -> r") == cpl.Implies(P, cpl.Implies(Q, R))
        assert cpl.parse_formula("p & q | r") == cpl.Or(cpl.And(P, Q), R)
        assert cpl.parse_formula("p <-> q <-> r") == cpl.Iff(cpl.Iff(P, Q), R)

    @pytest.mark.parametrize(
        "text, offset",
        [("p &", 3), ("p $ q", 2), ("(p | q", 6), ("p q", 2), ("", 0), ("é & p", 0)],
    )
    def test_errors_carry_offsets(self, text, offset):
        with pytest.raises(ParseError) as exc:
            cpl.parse_formula(text)
        assert exc.value.offset == offset

    def test_offset_is_in_bytes(self):
        with pytest.raises(ParseError) as exc:
            cpl.parse_formula("p & é")
        assert exc.value.offset == 4

    @given(formulas())
    def test_print_parse_round_trip(self, f):
        assert cpl.parse_formula(cpl.to_text(f)) == f


class TestEvaluation:
    def test_examples(self):
        assert cpl.evaluate({"p": 1}, cpl.parse_formula("~p")) == 0
        assert cpl.evaluate({"p": 1, "q": 0}, cpl.parse_formula("p -> q")) == 0
        assert cpl.evaluate({"p": 1, "q": 0}, cpl.parse_formula("p | q")) == 1

    def test_undeclared(self):
        with pytest.raises(EvaluationError):
            cpl.evaluate({"p": 1}, Q)

    def test_depth_and_variables(self):
        f = cpl.parse_formula("~(p & q) -> r")
        assert cpl.depth(f) == 3 and cpl.variables_of(f) == {"p", "q", "r"}


class TestUltravaluation:
    def test_examples(self):
        assert cpl.ultravaluation([{"p": 1}, {"p": 0}], principal(2, 1)) == {"p": 0}
        assert cpl.ultravaluation([{"p": 1}, {"p": 1}, {"p": 0}], principal(3, 0)) == {"p": 1}
        const = [{"p": 1, "q": 0}] * 3
        assert all(cpl.ultravaluation(const, u) == const[0] for u in enumerate_ultrafilters(3))

    @given(formulas(), st.lists(st.integers(0, 7), min_size=1, max_size=3))
    def test_theorem_and_principal_reduction(self, f, picks):
        rows = cpl.assignments(["p", "q", "r"])
        seq = [rows[k] for k in picks]
        for i, u in enumerate(enumerate_ultrafilters(len(seq))):
            assert cpl.ultravaluation_theorem_check(seq, u, f)
            assert cpl.evaluate(cpl.ultravaluation(seq, u), f) == cpl.evaluate(seq[i], f)

    def test_tautology_and_contradiction(self):
        seq = cpl.assignments(["p", "q"])[:3]
        for u in enumerate_ultrafilters(3):
            assert cpl.evaluate(cpl.ultravaluation(seq, u), cpl.parse_formula("p | ~p")) == 1
            assert cpl.evaluate(cpl.ultravaluation(seq, u), cpl.parse_formula("p & ~p")) == 0
            assert cpl.ultravaluation_theorem_check(seq, u, cpl.parse_formula("p & ~p"))

    def test_literal_sweep_depth_two(self):
        result = cpl.ultravaluation_sweep(["p", "q"], list(cpl.formulas_up_to_depth(["p", "q"], 2)))
        assert result["failure"] is None and result["checked"] > 0


class TestEnumeration:
    def test_formula_counts(self):
        # depth 0: 2 atoms; depth 1: 2 negations + 4 ops * 4 pairs
        assert len(list(cpl.formulas_up_to_depth(["p", "q"], 1))) == 2 + 2 + 16
        assert all(cpl.depth(f) <= 2 for f in cpl.formulas_up_to_depth(["p", "q"], 2))

    def test_representatives_cover_every_truth_function(self):
        reps = cpl.truth_function_representatives(["p", "q"], 3)
        assert len(reps) == 16
        for table, f in reps.items():
            assert cpl.truth_table(["p", "q"], f) == table

    def test_representatives_match_literal_enumeration(self):
        variables = ["p", "q"]
        literal = {cpl.truth_table(variables, f) for f in cpl.formulas_up_to_depth(variables, 2)}
        assert set(cpl.truth_function_representatives(variables, 2)) == literal


class TestValuationAmst:
    def test_single_variable(self):
        a = cpl.valuation_amst(["p"], [P])
        assert a.n_models == 2 and a.mod_table[1] == 0b10

    def test_tautology_and_contradiction(self):
        a = cpl.valuation_amst(["p"], [cpl.parse_formula("p | ~p"), cpl.parse_formula("p & ~p")])
        assert a.mod_table[0b01] == a.all_models
        assert a.mod_table[a.all_sentences] == 0

    @given(st.lists(formulas(("p", "q")), min_size=1, max_size=4))
    def test_normal_and_tarski(self, fs):
        a = cpl.valuation_amst(["p", "q"], fs)
        assert is_normal(a) and is_tarski_type(induced_consequence(a))
        for g in powerset(range(len(fs))):
            mods = sum(1 << m for m, v in enumerate(cpl.assignments(["p", "q"])) if all(cpl.evaluate(v, fs[i]) for i in g))
            assert a.mod_table[sum(1 << i for i in g)] == mods

    def test_undeclared_variable(self):
        with pytest.raises(EvaluationError):
            cpl.valuation_amst(["p"], [Q])
