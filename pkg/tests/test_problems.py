"""Family catalog, descriptors, validation bounds, and evaluation parity."""

import pytest

from bibench.bitstring import BitString, all_strings, blocks
from bibench.errors import DescriptorError, ValidationError
from bibench.problems import (
    FAMILY_NAMES,
    ProblemInstance,
    evaluate,
    family_catalog,
    index_evaluator,
    parse_descriptor,
    validate,
)


class TestCatalog:
    def test_eleven_families_in_order(self):
        assert FAMILY_NAMES == (
            "omm",
            "lotz",
            "ojzj",
            "cocz",
            "orzr",
            "omtz",
            "omzj",
            "omzr",
            "lozj",
            "lozr",
            "ojzr",
        )

    def test_parameter_requirements(self):
        params = {info.name: info.params for info in family_catalog()}
        assert params["omm"] == ()
        assert params["ojzj"] == ("k",)
        assert params["orzr"] == ("l",)
        assert params["ojzr"] == ("k", "l")


class TestDescriptors:
    @pytest.mark.parametrize(
        "text",
        ["omm:n=8", "lotz:n=10", "ojzj:n=8,k=2", "orzr:n=8,l=4", "ojzr:n=12,k=5,l=3"],
    )
    def test_round_trip(self, text):
        inst = parse_descriptor(text)
        assert inst.descriptor == text
        assert parse_descriptor(inst.descriptor) == inst

    def test_case_insensitive(self):
        assert parse_descriptor("OJZR:N=12,K=5,L=3") == validate("ojzr", 12, k=5, l=3)

    def test_unknown_family(self):
        with pytest.raises(ValidationError):
            parse_descriptor("ommx:n=8")

    def test_duplicate_key(self):
        with pytest.raises(DescriptorError):
            parse_descriptor("omm:n=8,n=9")

    def test_bad_value(self):
        with pytest.raises(DescriptorError):
            parse_descriptor("omm:n=eight")

    def test_missing_n(self):
        with pytest.raises(DescriptorError):
            parse_descriptor("omm:k=2")

    def test_missing_colon(self):
        with pytest.raises(DescriptorError):
            parse_descriptor("omm")

    def test_unknown_key(self):
        with pytest.raises(DescriptorError):
            parse_descriptor("omm:n=8,m=2")


class TestValidation:
    def test_n_bounds(self):
        with pytest.raises(ValidationError):
            validate("omm", 0)
        with pytest.raises(ValidationError):
            validate("omm", 64)
        assert validate("omm", 63).n == 63

    def test_param_presence_is_exact(self):
        with pytest.raises(ValidationError):
            validate("omm", 8, k=2)
        with pytest.raises(ValidationError):
            validate("ojzj", 8)
        with pytest.raises(ValidationError):
            validate("ojzr", 8, k=3)
        with pytest.raises(ValidationError):
            validate("ojzr", 8, l=2)

    def test_cocz_needs_even_n(self):
        with pytest.raises(ValidationError):
            validate("cocz", 7)
        assert validate("cocz", 8).family == "cocz"

    def test_ojzj_gap_bounds(self):
        assert validate("ojzj", 8, k=1).k == 1
        assert validate("ojzj", 8, k=3).k == 3
        with pytest.raises(ValidationError):
            validate("ojzj", 8, k=0)
        with pytest.raises(ValidationError):
            validate("ojzj", 8, k=4)

    @pytest.mark.parametrize("family", ["omzj", "lozj"])
    def test_mixed_jump_needs_k_above_one(self, family):
        assert validate(family, 8, k=2).k == 2
        with pytest.raises(ValidationError):
            validate(family, 8, k=1)
        with pytest.raises(ValidationError):
            validate(family, 8, k=4)

    def test_ojzr_admits_k_equal_n_halves(self):
        assert validate("ojzr", 12, k=6, l=3).k == 6
        with pytest.raises(ValidationError):
            validate("ojzr", 12, k=7, l=3)
        with pytest.raises(ValidationError):
            validate("ojzr", 12, k=1, l=3)

    @pytest.mark.parametrize("family", ["orzr", "omzr", "lozr"])
    def test_royal_block_divisibility(self, family):
        assert validate(family, 8, l=4).l == 4
        assert validate(family, 8, l=1).l == 1
        with pytest.raises(ValidationError):
            validate(family, 8, l=3)
        with pytest.raises(ValidationError):
            validate(family, 8, l=8)
        with pytest.raises(ValidationError):
            validate(family, 8, l=0)

    def test_non_integer_parameters(self):
        with pytest.raises(ValidationError):
            validate("ojzj", 8, k="2")
        with pytest.raises(ValidationError):
            validate("omm", True)


def naive_pair(inst, text):
    """String-level reimplementation of every family, for parity checks."""
    n = inst.n
    ones = text.count("1")
    zeroes = text.count("0")
    lead = len(text) - len(text.lstrip("1"))
    trail = len(text) - len(text.rstrip("0"))

    def jump(count):
        return inst.k + count if (count <= n - inst.k or count == n) else n - count

    def royal(want):
        step = inst.l
        return step * sum(
            1
            for i in range(0, n, step)
            if text[i : i + step] == want * step
        )

    if inst.family == "omm":
        return (ones, zeroes)
    if inst.family == "lotz":
        return (lead, trail)
    if inst.family == "ojzj":
        return (jump(ones), jump(zeroes))
    if inst.family == "cocz":
        half = n // 2
        return (ones, text[:half].count("1") + text[half:].count("0"))
    if inst.family == "orzr":
        return (royal("1"), royal("0"))
    if inst.family == "omtz":
        return (ones, trail)
    if inst.family == "omzj":
        return (ones, jump(zeroes))
    if inst.family == "omzr":
        return (ones, royal("0"))
    if inst.family == "lozj":
        return (lead, jump(zeroes))
    if inst.family == "lozr":
        return (lead, royal("0"))
    if inst.family == "ojzr":
        return (jump(ones), royal("0"))
    raise AssertionError(inst.family)


EIGHT_BIT_INSTANCES = [
    validate("omm", 8),
    validate("lotz", 8),
    validate("ojzj", 8, k=1),
    validate("ojzj", 8, k=2),
    validate("ojzj", 8, k=3),
    validate("cocz", 8),
    validate("orzr", 8, l=1),
    validate("orzr", 8, l=2),
    validate("orzr", 8, l=4),
    validate("omtz", 8),
    validate("omzj", 8, k=2),
    validate("omzj", 8, k=3),
    validate("omzr", 8, l=2),
    validate("omzr", 8, l=4),
    validate("lozj", 8, k=2),
    validate("lozj", 8, k=3),
    validate("lozr", 8, l=2),
    validate("lozr", 8, l=4),
    validate("ojzr", 8, k=2, l=2),
    validate("ojzr", 8, k=3, l=2),
    validate("ojzr", 8, k=4, l=2),
    validate("ojzr", 8, k=3, l=4),
]


class TestEvaluation:
    def test_frozen_examples(self):
        cases = [
            ("lotz:n=8", "11100000", (3, 5)),
            ("omm:n=8", "10110010", (4, 4)),
            ("cocz:n=8", "11110101", (6, 6)),
            ("ojzj:n=8,k=2", "11111111", (10, 2)),
            ("ojzj:n=8,k=2", "11111110", (1, 3)),
            ("orzr:n=8,l=4", "11110000", (4, 4)),
            ("omtz:n=8", "11100100", (4, 2)),
            ("omzj:n=8,k=3", "00000000", (0, 11)),
            ("omzr:n=8,l=2", "11010000", (3, 4)),
            ("lozj:n=8,k=3", "11100000", (3, 8)),
            ("lozr:n=8,l=2", "11001100", (2, 4)),
            ("ojzr:n=12,k=5,l=3", "111111111111", (17, 0)),
            ("ojzr:n=12,k=5,l=3", "111111100000", (12, 3)),
        ]
        for descriptor, text, expected in cases:
            inst = parse_descriptor(descriptor)
            assert evaluate(inst, BitString.from_text(text)) == expected, descriptor

    @pytest.mark.parametrize("inst", EIGHT_BIT_INSTANCES, ids=lambda i: i.descriptor)
    def test_evaluate_matches_naive_exhaustively(self, inst):
        for x in all_strings(8):
            assert evaluate(inst, x) == naive_pair(inst, str(x))

    @pytest.mark.parametrize("inst", EIGHT_BIT_INSTANCES, ids=lambda i: i.descriptor)
    def test_index_evaluator_agrees_with_evaluate(self, inst):
        fn = index_evaluator(inst)
        for x in all_strings(8):
            assert fn(x.index) == evaluate(inst, x)

    def test_length_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            evaluate(validate("omm", 8), BitString.from_text("101"))

    def test_instances_are_value_objects(self):
        a = validate("ojzr", 12, k=5, l=3)
        b = ProblemInstance("ojzr", 12, 5, 3)
        assert a == b and hash(a) == hash(b)
