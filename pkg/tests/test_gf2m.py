import random

import pytest
from hypothesis import given, strategies as st

from lrpc_ms.gf2m import (FieldParams, ZeroInverse, clmul, field_for,
                          find_irreducible, is_irreducible, poly_mod)

PRODUCTION_M = (73, 83, 97, 107, 109, 113, 151)


def schoolbook_mul(a, b, m, modulus):
    """Independent oracle: shift-and-add, then bit-at-a-time reduction."""
    acc = 0
    for i in range(m):
        if b >> i & 1:
            acc ^= a << i
    for i in range(2 * m - 2, m - 1, -1):
        if acc >> i & 1:
            acc ^= modulus << (i - m)
    return acc


class TestModulusSelection:
    def test_m3_prefers_smaller_integer_value(self):
        # X^3+X+1 (0b1011) comes before X^3+X^2+1 (0b1101)
        assert find_irreducible(3) == 0b1011

    def test_known_small_moduli(self):
        assert find_irreducible(1) == 0b11
        assert find_irreducible(2) == 0b111
        assert find_irreducible(4) == 0b10011

    @pytest.mark.parametrize("m", PRODUCTION_M)
    def test_production_moduli_shape(self, m):
        f = find_irreducible(m)
        assert f.bit_length() - 1 == m
        assert f & 1
        assert is_irreducible(f)

    def test_construction_rejects_reducible(self):
        with pytest.raises(ValueError):
            FieldParams(4, 0b10101)  # X^4+X^2+1 = (X^2+X+1)^2
        with pytest.raises(ValueError):
            FieldParams(3, 0b1111)   # X^3+X^2+X+1 has root 1

    def test_construction_rejects_wrong_degree(self):
        with pytest.raises(ValueError):
            FieldParams(5, 0b1011)


class TestFieldAxioms:
    @pytest.mark.parametrize("m", [2, 3, 4])
    def test_exhaustive_axioms_tiny(self, m):
        f = field_for(m)
        size = 1 << m
        for a in range(size):
            assert f.add(a, a) == 0
            assert f.add(a, 0) == a
            assert f.mul(a, 1) == a
            for b in range(size):
                assert f.mul(a, b) == f.mul(b, a)
                assert f.add(a, b) == f.add(b, a)
        for a in range(size):
            for b in range(size):
                for c in range(size):
                    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                    assert (f.mul(a, f.add(b, c))
                            == f.add(f.mul(a, b), f.mul(a, c)))

    @pytest.mark.parametrize("m", [5, 6, 7, 8])
    def test_exhaustive_inverses_and_group_order(self, m):
        f = field_for(m)
        for a in range(1, 1 << m):
            assert f.mul(a, f.inv(a)) == 1
            assert f.pow(a, (1 << m) - 1) == 1

    @pytest.mark.parametrize("m", [5, 6, 7, 8])
    def test_random_ring_identities(self, m):
        f = field_for(m)
        rng = random.Random(m)
        for _ in range(300):
            a, b, c = (rng.getrandbits(m) for _ in range(3))
            assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))

    def test_add_example_m3(self):
        f = field_for(3)
        assert f.add(0b011, 0b101) == 0b110

    def test_mul_examples_m3(self):
        f = field_for(3)  # modulus X^3+X+1
        assert f.mul(0b010, 0b010) == 0b100   # X*X = X^2
        assert f.mul(0b100, 0b010) == 0b011   # X^2*X = X+1

    def test_inv_examples_m3(self):
        f = field_for(3)
        assert f.inv(1) == 1
        # exhaustive-search oracle over the 7 nonzero elements
        wanted = [b for b in range(1, 8) if f.mul(0b010, b) == 1]
        assert wanted == [0b101]
        assert f.inv(0b010) == 0b101

    def test_zero_inverse_raises(self):
        with pytest.raises(ZeroInverse):
            field_for(8).inv(0)
        with pytest.raises(ZeroInverse):
            field_for(113).inv(0)


class TestAgainstSchoolbookOracle:
    @pytest.mark.parametrize("m", PRODUCTION_M)
    def test_production_fields(self, m):
        f = field_for(m)
        rng = random.Random(m)
        for _ in range(2000):
            a, b = rng.getrandbits(m), rng.getrandbits(m)
            assert f.mul(a, b) == schoolbook_mul(a, b, m, f.modulus)

    @pytest.mark.parametrize("m", [9, 13, 17, 37])
    def test_mixed_fields(self, m):
        f = field_for(m)
        rng = random.Random(m)
        for _ in range(1000):
            a, b = rng.getrandbits(m), rng.getrandbits(m)
            assert f.mul(a, b) == schoolbook_mul(a, b, m, f.modulus)

    def test_table_path_matches_generic_path(self):
        f = field_for(17)
        assert f._exp is not None  # table-backed
        rng = random.Random(7)
        for _ in range(500):
            a, b = rng.getrandbits(17), rng.getrandbits(17)
            assert f.mul(a, b) == f.reduce_wide(f.mul_nr(a, b))


class TestVectorHelpers:
    @pytest.mark.parametrize("m", [12, 37, 113])
    def test_mul_many_axpy(self, m):
        f = field_for(m)
        rng = random.Random(m)
        for _ in range(50):
            a = rng.getrandbits(m)
            src = [rng.getrandbits(m) for _ in range(9)]
            dst = [rng.getrandbits(m) for _ in range(9)]
            assert f.mul_many(a, src) == [f.mul(a, v) for v in src]
            assert f.axpy(a, src, dst) == [d ^ f.mul(a, v)
                                           for v, d in zip(src, dst)]
            acc = list(dst)
            f.axpy_nr(a, src, acc)
            assert [f.reduce_wide(x) for x in acc] == \
                [f.reduce_wide(d) ^ f.mul(a, v) for v, d in zip(src, dst)]


class TestSerialization:
    @pytest.mark.parametrize("m", [3, 8, 13, 113])
    def test_round_trip(self, m):
        f = field_for(m)
        rng = random.Random(m)
        for _ in range(100):
            a = rng.getrandbits(m)
            raw = f.element_to_bytes(a)
            assert len(raw) == (m + 7) // 8
            assert f.element_from_bytes(raw) == a

    def test_rejects_stray_bits(self):
        f = field_for(3)
        with pytest.raises(ValueError):
            f.element_from_bytes(b"\xff")


@given(st.integers(0, (1 << 20) - 1), st.integers(0, (1 << 20) - 1))
def test_clmul_matches_bitwise_definition(a, b):
    expect = 0
    for i in range(20):
        if b >> i & 1:
            expect ^= a << i
    assert clmul(a, b) == expect


@given(st.integers(1, (1 << 16) - 1))
def test_poly_mod_small(x):
    f = 0b1011
    r = poly_mod(x, f)
    assert r.bit_length() < f.bit_length()
