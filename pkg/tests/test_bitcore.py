"""Word arithmetic, the promise set, and the target functions.

Reference values are computed by string-level oracles (per-character sums)
that never touch the packed integer representation under test.
"""

import random

import pytest

from ghzcc.bitcore import (
    BitString,
    FunctionTable,
    PromiseTriple,
    PromiseViolation,
    enumerate_promise,
    f_ghz,
    f_inner_product,
    f_parity,
    ghz_table,
    inner_product_table,
    parity_table,
    random_promise_triple,
    reduce_to_inner_product,
)


def ref_parity(x: str, y: str) -> int:
    return sum(int(c) for c in x + y) % 2


def ref_ip(x: str, y: str) -> int:
    return sum(int(a) * int(b) for a, b in zip(x, y)) % 2


def ref_ghz(x: str, y: str, z: str) -> int:
    return sum(int(a) * int(b) * int(c) for a, b, c in zip(x, y, z)) % 2


def bs(text: str) -> BitString:
    return BitString.from_str(text)


class TestBitString:
    def test_round_trip(self):
        for text in ("0", "1", "011", "10100", "1" * 32):
            assert str(bs(text)) == text

    def test_one_indexed_access(self):
        w = bs("011")
        assert (w.bit(1), w.bit(2), w.bit(3)) == (0, 1, 1)

    @pytest.mark.parametrize("i", [0, 4, -1, 33])
    def test_out_of_range_index_raises(self, i):
        with pytest.raises(IndexError):
            bs("011").bit(i)

    def test_length_limits(self):
        with pytest.raises(ValueError):
            BitString(0, 0)
        with pytest.raises(ValueError):
            BitString(33, 0)
        with pytest.raises(ValueError):
            BitString(2, 0b100)  # set bit above the declared length

    def test_counts(self):
        w = bs("10100")
        assert w.count_ones() == 2
        assert w.count_zeros() == 3
        assert w.parity() == 0

    def test_index_round_trip(self):
        for v in range(8):
            assert BitString.from_index(v, 3).index == v

    def test_bad_text(self):
        with pytest.raises(ValueError):
            BitString.from_str("01a")
        with pytest.raises(ValueError):
            BitString.from_str("")


class TestParityFunction:
    def test_all_zero(self):
        assert f_parity(bs("000"), bs("000")) == 0

    def test_direct_values(self):
        # Frozen from the string oracle: 1+0+1 + 1+1+0 = 4 -> 0; 1+0+0 + 1+1+0 = 3 -> 1.
        assert ref_parity("101", "110") == 0
        assert f_parity(bs("101"), bs("110")) == 0
        assert ref_parity("100", "110") == 1
        assert f_parity(bs("100"), bs("110")) == 1

    def test_matches_oracle_exhaustively(self):
        for a in range(8):
            for b in range(8):
                x, y = format(a, "03b"), format(b, "03b")
                assert f_parity(bs(x), bs(y)) == ref_parity(x, y)

    def test_symmetric(self):
        for a in range(8):
            for b in range(8):
                x, y = bs(format(a, "03b")), bs(format(b, "03b"))
                assert f_parity(x, y) == f_parity(y, x)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            f_parity(bs("01"), bs("011"))


class TestInnerProduct:
    def test_all_ones(self):
        assert f_inner_product(bs("111"), bs("111")) == 1  # 3 mod 2

    def test_direct_value(self):
        assert ref_ip("011", "101") == 1
        assert f_inner_product(bs("011"), bs("101")) == 1

    def test_zero_operand(self):
        for b in range(8):
            assert f_inner_product(bs("000"), bs(format(b, "03b"))) == 0

    def test_matches_oracle_exhaustively(self):
        for a in range(8):
            for b in range(8):
                x, y = format(a, "03b"), format(b, "03b")
                assert f_inner_product(bs(x), bs(y)) == ref_ip(x, y)

    def test_symmetric(self):
        for a in range(8):
            for b in range(8):
                x, y = bs(format(a, "03b")), bs(format(b, "03b"))
                assert f_inner_product(x, y) == f_inner_product(y, x)

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            f_inner_product(bs("0"), bs("01"))


class TestPromiseTriple:
    def test_good_columns(self):
        PromiseTriple.from_strs("001", "001", "111")

    @pytest.mark.parametrize(
        "x,y,z",
        [("000", "000", "000"), ("111", "111", "110"), ("001", "001", "110")],
    )
    def test_bad_columns_rejected(self, x, y, z):
        with pytest.raises(PromiseViolation):
            PromiseTriple.from_strs(x, y, z)

    def test_length_mismatch_rejected(self):
        with pytest.raises(PromiseViolation):
            PromiseTriple(bs("01"), bs("011"), bs("011"))

    def test_columns_iterate_in_order(self):
        t = PromiseTriple.from_strs("001", "010", "100")
        assert list(t.columns()) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


class TestGhzFunction:
    def test_listed_values(self):
        assert f_ghz(PromiseTriple.from_strs("001", "001", "111")) == 1
        assert f_ghz(PromiseTriple.from_strs("001", "010", "100")) == 0

    @pytest.mark.parametrize("n", range(1, 7))
    def test_all_ones_is_n_mod_2(self, n):
        ones = "1" * n
        assert f_ghz(PromiseTriple.from_strs(ones, ones, ones)) == n % 2

    def test_matches_string_oracle_n3(self):
        for t in enumerate_promise(3):
            assert f_ghz(t) == ref_ghz(str(t.x), str(t.y), str(t.z))

    @pytest.mark.parametrize("n", range(1, 9))
    def test_equals_n_minus_k_mod_2(self, n):
        # k counts the AND-zero columns; the remaining n-k columns are 111
        # and each contributes 1 to the XOR. Column counting goes through
        # the string rendering, independent of the packed evaluation.
        for t in enumerate_promise(n):
            k = sum(
                1
                for a, b, c in zip(str(t.x), str(t.y), str(t.z))
                if (a, b, c) != ("1", "1", "1")
            )
            assert f_ghz(t) == (n - k) % 2


class TestEnumeratePromise:
    def test_n1_exact_order(self):
        triples = [(str(t.x), str(t.y), str(t.z)) for t in enumerate_promise(1)]
        assert triples == [("0", "0", "1"), ("0", "1", "0"), ("1", "0", "0"), ("1", "1", "1")]

    @pytest.mark.parametrize("n,count", [(1, 4), (2, 16), (3, 64)])
    def test_cardinality(self, n, count):
        assert sum(1 for _ in enumerate_promise(n)) == count

    def test_no_duplicates_and_all_valid(self):
        seen = set()
        for t in enumerate_promise(3):
            key = (t.x.bits, t.y.bits, t.z.bits)
            assert key not in seen
            seen.add(key)
            for col in t.columns():
                assert col in ((0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1))
        assert len(seen) == 64

    def test_lexicographic_by_column_codes(self):
        codes = {(0, 0, 1): 0, (0, 1, 0): 1, (1, 0, 0): 2, (1, 1, 1): 3}
        sequences = [tuple(codes[c] for c in t.columns()) for t in enumerate_promise(2)]
        assert sequences == sorted(sequences)

    @pytest.mark.parametrize("n", [0, -3, 17])
    def test_range_errors(self, n):
        with pytest.raises(ValueError):
            list(enumerate_promise(n))


class TestRandomPromiseTriple:
    def test_valid_and_seeded(self):
        rng = random.Random(7)
        triples = [random_promise_triple(12, rng) for _ in range(50)]
        again = random.Random(7)
        assert triples == [random_promise_triple(12, again) for _ in range(50)]

    def test_covers_all_columns(self):
        rng = random.Random(0)
        seen = set()
        for _ in range(200):
            seen.update(random_promise_triple(4, rng).columns())
        assert seen == {(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)}

    def test_large_n(self):
        t = random_promise_triple(32, random.Random(3))
        assert t.length == 32


class TestReduction:
    def test_listed_example(self):
        t = PromiseTriple.from_strs("001", "001", "111")
        x, y = reduce_to_inner_product(t)
        assert f_inner_product(x, y) == 1 == f_ghz(t)

    def test_trivial_zero(self):
        t = PromiseTriple.from_strs("000", "000", "111")
        x, y = reduce_to_inner_product(t)
        assert f_inner_product(x, y) == 0 == f_ghz(t)

    def test_all_64_triples(self):
        for t in enumerate_promise(3):
            x, y = reduce_to_inner_product(t)
            assert f_inner_product(x, y) == f_ghz(t)

    def test_wrong_length_rejected(self):
        t = PromiseTriple.from_strs("0011", "0101", "1001")
        with pytest.raises(ValueError):
            reduce_to_inner_product(t)


class TestFunctionTable:
    def test_parity_table_total_and_correct(self):
        table = parity_table(2)
        assert len(table) == 16
        for a in range(4):
            for b in range(4):
                x, y = BitString.from_index(a, 2), BitString.from_index(b, 2)
                assert table.value(x, y) == f_parity(x, y)

    def test_inner_product_table(self):
        table = inner_product_table(3)
        assert len(table) == 64
        assert table.value(bs("011"), bs("101")) == 1

    def test_ghz_table_domain_is_promise_set(self):
        table = ghz_table(2)
        assert len(table) == 16
        for (x, y, z), value in table.values.items():
            assert value == f_ghz(PromiseTriple(x, y, z))

    def test_out_of_domain_lookup_raises(self):
        table = ghz_table(1)
        with pytest.raises(KeyError):
            table.value(bs("0"), bs("0"), bs("0"))  # violates the promise

    def test_non_bit_value_rejected(self):
        with pytest.raises(ValueError):
            FunctionTable(1, 1, {(bs("0"),): 2})
