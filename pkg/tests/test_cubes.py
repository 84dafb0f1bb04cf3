import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridsyn import (
    CapacityError,
    Cover,
    MintermSet,
    ParseError,
    PhaseVector,
    apply_phase,
    cover_to_minterms,
    eval_cover,
    literal_density,
    minterm_index,
    parse_pla,
    parse_pla_outputs,
    permute_inputs,
    permute_minterms,
    phase_minterms,
    write_pla,
)
from gridsyn.cubes import cube_dc_count, index_to_minterm

from helpers import all_assignments, random_cover

XOR_PAIR_PLA = """\
.i 4
.ilb a b c d
.o 1
.p 4
1010 1
1001 1
0110 1
0101 1
.e
"""

CARRY = Cover(("a", "b", "c"), ("11-", "1-1", "-11"))


class TestParse:
    def test_header_dialect(self):
        c = parse_pla(XOR_PAIR_PLA)
        assert c.n == 4 and c.m == 4
        assert c.input_names == ("a", "b", "c", "d")
        assert c.cubes == ("1010", "1001", "0110", "0101")

    def test_bare_dialect_infers_width(self):
        c = parse_pla("11-\n1-1\n-11\n")
        assert c.n == 3 and c.m == 3
        assert c.input_names == ("x0", "x1", "x2")

    def test_single_tautology_cube(self):
        c = parse_pla(".i 1\n-\n")
        assert len(cover_to_minterms(c)) == 2

    def test_comments_and_blank_lines(self):
        c = parse_pla("# heading\n\n.i 2\n10 1  # trailing\n")
        assert c.cubes == ("10",)

    def test_multi_output_split(self):
        text = ".i 2\n.o 2\n.ob f g\n11 10\n00 01\n1- 11\n"
        outs = parse_pla_outputs(text)
        assert [name for name, _ in outs] == ["f", "g"]
        assert outs[0][1].cubes == ("11", "1-")
        assert outs[1][1].cubes == ("00", "1-")

    def test_multi_output_rejected_by_single_parser(self):
        with pytest.raises(ParseError, match="single-output"):
            parse_pla(".i 2\n.o 2\n11 10\n")

    @pytest.mark.parametrize(
        "text,match",
        [
            (".i 2\n1x 1\n", "invalid cube character"),
            (".i 3\n10 1\n", "width"),
            (".i 0\n", "positive"),
            (".i 2\n.ilb a a\n10 1\n", "duplicate"),
            (".i 2\n.p 3\n10 1\n", ".p declares"),
            (".i 2\n10 1\n11\n", "mixed"),
            (".i 2\n10 -\n", "don't-cares"),
            (".i 2\n.bogus\n", "unknown directive"),
            (".i 2\n.e\n10 1\n", "after end"),
            ("", "no inputs"),
        ],
    )
    def test_errors(self, text, match):
        with pytest.raises(ParseError, match=match):
            parse_pla_outputs(text)

    def test_parse_error_carries_line(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_pla(".i 2\n1x 1\n")

    def test_write_round_trip_bit_exact(self):
        text = write_pla(CARRY)
        again = parse_pla(text)
        assert again == CARRY
        assert write_pla(again) == text


class TestSemantics:
    def test_carry_minterms(self):
        s = cover_to_minterms(CARRY)
        assert set(s.to_strings()) == {"110", "101", "011", "111"}

    def test_tautology_cube_covers_everything(self):
        c = Cover(("a", "b", "c", "d"), ("----",))
        assert len(cover_to_minterms(c)) == 16

    def test_overlapping_cubes_deduplicate(self):
        c = Cover(("a", "b"), ("1-", "11"))
        assert len(cover_to_minterms(c)) == 2

    def test_expansion_cap(self):
        wide = Cover(tuple(f"x{i}" for i in range(25)), ())
        with pytest.raises(CapacityError):
            cover_to_minterms(wide)

    def test_eval_examples(self):
        assert eval_cover(CARRY, (1, 1, 0)) == 1
        assert eval_cover(CARRY, (1, 0, 0)) == 0
        assert eval_cover(Cover(("a",), ()), (0,)) == 0

    def test_eval_length_mismatch(self):
        with pytest.raises(ValueError):
            eval_cover(CARRY, (1, 1))

    def test_minterms_match_eval_exhaustively(self):
        import random

        rng = random.Random(5)
        for _ in range(25):
            c = random_cover(rng, rng.randint(1, 8), rng.randint(0, 12))
            s = cover_to_minterms(c)
            for a in all_assignments(c.n):
                idx = sum(b << i for i, b in enumerate(a))
                assert (idx in s) == bool(eval_cover(c, a))

    def test_size_bound_with_disjoint_equality(self):
        disjoint = Cover(("a", "b", "c"), ("1--", "01-"))
        s = cover_to_minterms(disjoint)
        assert len(s) == sum(1 << cube_dc_count(q) for q in disjoint.cubes)
        overlapping = Cover(("a", "b", "c"), ("1--", "1-1"))
        s2 = cover_to_minterms(overlapping)
        assert len(s2) < sum(1 << cube_dc_count(q) for q in overlapping.cubes)


class TestTransforms:
    def test_phase_single_column(self):
        c = Cover(("a", "b", "c"), ("10-",))
        assert apply_phase(c, PhaseVector.inverting(3, [0])).cubes == ("00-",)

    def test_phase_of_pair_product(self):
        c = parse_pla(XOR_PAIR_PLA)
        phased = apply_phase(c, PhaseVector.inverting(4, [1, 2]))
        assert set(cover_to_minterms(phased).to_strings()) == {"0000", "0011", "1100", "1111"}

    @given(st.integers(1, 6), st.data())
    @settings(max_examples=50, deadline=None)
    def test_phase_involution(self, n, data):
        import random

        rng = random.Random(data.draw(st.integers(0, 10**6)))
        c = random_cover(rng, n, rng.randint(0, 8))
        p = PhaseVector(tuple(data.draw(st.booleans()) for _ in range(n)))
        assert apply_phase(apply_phase(c, p), p) == c

    def test_permute_identity(self):
        c = parse_pla(XOR_PAIR_PLA)
        assert permute_inputs(c, (0, 1, 2, 3)) == c

    def test_permute_reorders_names_and_columns(self):
        c = parse_pla(XOR_PAIR_PLA)
        p = permute_inputs(c, (0, 2, 1, 3))
        assert p.input_names == ("a", "c", "b", "d")
        assert set(cover_to_minterms(p).to_strings()) == {"1100", "1001", "0110", "0011"}

    def test_permute_transposition_involution(self):
        c = parse_pla(XOR_PAIR_PLA)
        t = (1, 0, 2, 3)
        assert permute_inputs(permute_inputs(c, t), t) == c

    def test_permute_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            permute_inputs(CARRY, (0, 0, 1))

    def test_transforms_commute_with_expansion(self):
        import random

        rng = random.Random(9)
        for _ in range(20):
            n = rng.randint(2, 7)
            c = random_cover(rng, n, rng.randint(1, 10))
            perm = tuple(rng.sample(range(n), n))
            p = PhaseVector(tuple(rng.random() < 0.5 for _ in range(n)))
            assert cover_to_minterms(apply_phase(c, p)) == phase_minterms(cover_to_minterms(c), p)
            assert cover_to_minterms(permute_inputs(c, perm)) == permute_minterms(
                cover_to_minterms(c), perm
            )


class TestMisc:
    def test_minterm_index_convention(self):
        # leftmost character is input 0, which is the least significant bit
        assert minterm_index("1010") == 0b0101
        assert index_to_minterm(5, 4) == "1010"

    def test_minterm_set_validation(self):
        with pytest.raises(ValueError):
            MintermSet(2, 1 << 4)

    def test_density(self):
        assert literal_density(CARRY) == pytest.approx(100.0 * 6 / 9)
        assert literal_density(Cover(("a",), ())) == 0.0

    def test_cover_validation(self):
        with pytest.raises(ValueError, match="duplicate"):
            Cover(("a", "a"), ())
        with pytest.raises(ValueError, match="width"):
            Cover(("a", "b"), ("1",))
        with pytest.raises(ValueError, match="invalid cube"):
            Cover(("a",), ("2",))
