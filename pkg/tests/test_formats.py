import pytest

from evencob.errors import (
    DimensionMismatchError,
    FileSyntaxError,
    NonSkewFormError,
    NotLagrangianError,
    UnknownNameError,
)
from evencob.formats import (
    Pipeline,
    parse_pipeline,
    parse_rational,
    parse_scenario,
    pipeline_for_morphism,
    serialize_pipeline,
    serialize_scenario,
)
from evencob.generators import disjoint_union, handlebody
from evencob.linalg import canonical_basis
from evencob.sampling import random_even_pair
from evencob.symplectic import standard_surface_space

GENUS_ONE_SSF = """\
# genus-1 standard form with the transverse triple
form 2
0 1
-1 0
subspace L1 1
1 0
subspace L2 1
0 1
subspace L3 1
1 1
triple L1 L2 L3
"""

HANDLEBODY_CAP_CBF = """\
object E genera
lagrangian 0
object T genera 1
lagrangian 1
1 0
morphism H E T weight 1 h1 1 h0 1
jsrc_h1
jtgt_h1
1 0
jsrc_h0
jtgt_h0
1
generator K T E cap weight=1
"""


class TestScenarioParsing:
    def test_genus_one_fixture(self):
        s = parse_scenario(GENUS_ONE_SSF)
        assert s.space == standard_surface_space((1,))
        assert set(s.named_subspaces) == {"L1", "L2", "L3"}
        assert s.queries == (("L1", "L2", "L3"),)

    def test_empty_file_is_valid(self):
        s = parse_scenario("")
        assert s.space.dim == 0
        assert not s.named_subspaces and not s.queries

    def test_comments_and_blank_lines_ignored(self):
        s = parse_scenario("# nothing\n\nform 1\n0  # trailing comment\n")
        assert s.space.dim == 1

    def test_non_skew_form_names_entry(self):
        text = "form 2\n0 1\n1 0\n"
        with pytest.raises(NonSkewFormError, match=r"line 1: .*gram\[0\]\[1\]"):
            parse_scenario(text)

    def test_dangling_triple_name(self):
        text = GENUS_ONE_SSF + "triple L1 L2 MISSING\n"
        with pytest.raises(UnknownNameError, match="MISSING"):
            parse_scenario(text)

    def test_wrong_row_width_is_dimension_error(self):
        text = "form 2\n0 1\n-1 0\nsubspace A 1\n1 0 0\n"
        with pytest.raises(DimensionMismatchError):
            parse_scenario(text)

    def test_unknown_statement(self):
        with pytest.raises(FileSyntaxError, match="line 1"):
            parse_scenario("surface 2\n")

    def test_duplicate_form(self):
        with pytest.raises(FileSyntaxError, match="duplicate"):
            parse_scenario("form 1\n0\nform 1\n0\n")

    def test_subspace_before_form(self):
        with pytest.raises(FileSyntaxError, match="before the form"):
            parse_scenario("subspace A 0\n")

    def test_float_tokens_rejected(self):
        with pytest.raises(FileSyntaxError):
            parse_scenario("form 1\n0.5\n")

    def test_dependent_rows_are_canonicalized(self):
        text = "form 2\n0 1\n-1 0\nsubspace A 2\n1 0\n2 0\n"
        s = parse_scenario(text)
        assert s.named_subspaces["A"].dim == 1


class TestScenarioRoundTrip:
    def test_fixture_round_trip(self):
        s = parse_scenario(GENUS_ONE_SSF)
        assert parse_scenario(serialize_scenario(s)) == s

    def test_empty_round_trip(self):
        s = parse_scenario("")
        assert parse_scenario(serialize_scenario(s)) == s

    def test_rational_entries_round_trip(self):
        text = "form 2\n0 2/3\n-2/3 0\nsubspace A 1\n1 -5/7\n"
        s = parse_scenario(text)
        assert parse_scenario(serialize_scenario(s)) == s


class TestPipelineParsing:
    def test_fixture(self):
        p = parse_pipeline(HANDLEBODY_CAP_CBF)
        assert set(p.objects) == {"E", "T"}
        assert [e.name for e in p.entries] == ["H", "K"]
        assert p.entries[0].morphism == handlebody(1, canonical_basis([(1, 0)], 2), 1)

    def test_undeclared_object(self):
        text = "object E genera\nlagrangian 0\ngenerator K T E cap\n"
        with pytest.raises(UnknownNameError, match="T"):
            parse_pipeline(text)

    def test_non_lagrangian_object(self):
        text = "object T genera 1\nlagrangian 2\n1 0\n0 1\n"
        with pytest.raises(NotLagrangianError, match="line 1"):
            parse_pipeline(text)

    def test_block_order_enforced(self):
        text = (
            "object E genera\nlagrangian 0\nobject T genera 1\nlagrangian 1\n1 0\n"
            "morphism H E T weight 1 h1 1 h0 1\njtgt_h1\n1 0\n"
        )
        with pytest.raises(FileSyntaxError, match="jsrc_h1"):
            parse_pipeline(text)

    def test_morphism_shape_mismatch(self):
        text = (
            "object E genera\nlagrangian 0\nobject T genera 1\nlagrangian 1\n1 0\n"
            "morphism H E T weight 1 h1 2 h0 1\njsrc_h1\njtgt_h1\n1 0\njsrc_h0\njtgt_h0\n1\n"
        )
        with pytest.raises(DimensionMismatchError):
            parse_pipeline(text)

    def test_duplicate_object_name(self):
        text = "object E genera\nlagrangian 0\nobject E genera\nlagrangian 0\n"
        with pytest.raises(FileSyntaxError, match="duplicate"):
            parse_pipeline(text)

    def test_non_composable_chain_rejected(self):
        from evencob.errors import LagrangianMismatchError

        text = (
            "object E genera\nlagrangian 0\n"
            "object T genera 1\nlagrangian 1\n1 0\n"
            "object U genera 1\nlagrangian 1\n0 1\n"
            "generator H E T handlebody weight=1\n"
            "generator K U E cap weight=1\n"
        )
        with pytest.raises(LagrangianMismatchError, match="line 10"):
            parse_pipeline(text)

    def test_genera_chain_mismatch_rejected(self):
        from evencob.errors import GeneraMismatchError

        text = (
            "object E genera\nlagrangian 0\n"
            "object T genera 1\nlagrangian 1\n1 0\n"
            "object G2 genera 2\nlagrangian 2\n1 0 0 0\n0 0 1 0\n"
            "generator H E T handlebody weight=1\n"
            "generator K G2 E cap weight=1\n"
        )
        with pytest.raises(GeneraMismatchError):
            parse_pipeline(text)


class TestPipelineRoundTrip:
    def test_fixture_round_trip(self):
        p = parse_pipeline(HANDLEBODY_CAP_CBF)
        assert parse_pipeline(serialize_pipeline(p)) == p

    def test_random_morphisms_round_trip(self):
        from evencob.formats import PipelineEntry

        for seed in range(6):
            m1, m2 = random_even_pair(seed)
            objects = {"a": m1.source, "b": m1.target, "c": m2.target}
            p = Pipeline(
                objects,
                (PipelineEntry("m1", "a", "b", m1), PipelineEntry("m2", "b", "c", m2)),
            )
            assert parse_pipeline(serialize_pipeline(p)) == p

    def test_multi_component_round_trip(self):
        u = disjoint_union(
            handlebody(1, canonical_basis([(1, 0)], 2), 1),
            handlebody(2, canonical_basis([(1, 0, 0, 0), (0, 0, 1, 0)], 4), 0),
        )
        p = pipeline_for_morphism(u)
        assert parse_pipeline(serialize_pipeline(p)) == p


class TestParserRobustness:
    # mutated input must parse or raise a package error, never crash otherwise

    def _mutations(self, text, rng, count):
        lines = text.splitlines()
        for _ in range(count):
            mutated = list(lines)
            op = rng.randrange(4)
            idx = rng.randrange(len(mutated))
            if op == 0:
                del mutated[idx]
            elif op == 1:
                mutated.insert(idx, rng.choice(["garbage", "form x", "1 2 3", "triple A", ""]))
            elif op == 2:
                mutated[idx] = mutated[idx].replace("1", rng.choice(["x", "1.5", "-", "9"]), 1)
            else:
                mutated[idx], mutated[idx - 1] = mutated[idx - 1], mutated[idx]
            yield "\n".join(mutated) + "\n"

    def test_scenario_mutations(self):
        import random

        from evencob.errors import EvencobError

        rng = random.Random(2024)
        for mutated in self._mutations(GENUS_ONE_SSF, rng, 300):
            try:
                parse_scenario(mutated)
            except EvencobError:
                pass

    def test_pipeline_mutations(self):
        import random

        from evencob.errors import EvencobError

        rng = random.Random(2025)
        for mutated in self._mutations(HANDLEBODY_CAP_CBF, rng, 300):
            try:
                parse_pipeline(mutated)
            except EvencobError:
                pass


def test_parse_rational_accepts_only_exact_tokens():
    from fractions import Fraction

    assert parse_rational("3") == Fraction(3)
    assert parse_rational("-4/5") == Fraction(-4, 5)
    for bad in ("1.5", "1/0", "1e3", "/2", "x"):
        with pytest.raises(FileSyntaxError):
            parse_rational(bad)
