import pytest

from lrpc_ms import analysis, kem
from lrpc_ms.gf2m import field_for
from lrpc_ms.hashes import shared_secret_hash
from lrpc_ms.ideal_ring import ideal_block, ring_mul
from lrpc_ms.linalg import Matrix, mat_mul
from lrpc_ms.packing import BadLength, BadPadding
from lrpc_ms.sampler import derive_seed
from lrpc_ms.subspace import Subspace, span_of

SEED = bytes(range(40))
SEED2 = bytes(range(40, 80))

TOY = {
    "unstructured/standard": kem.ParameterSet(
        "toy-u-s", kem.UNSTRUCTURED, kem.STANDARD, 16, 8, 29, 3, 3, 2),
    "unstructured/extended": kem.ParameterSet(
        "toy-u-x", kem.UNSTRUCTURED, kem.EXTENDED, 16, 8, 29, 3, 3, 2),
    "ideal/standard": kem.ParameterSet(
        "toy-i-s", kem.IDEAL, kem.STANDARD, 20, 10, 29, 3, 3, 2),
    "ideal/extended": kem.ParameterSet(
        "toy-i-x", kem.IDEAL, kem.EXTENDED, 20, 10, 29, 3, 3, 2),
}

# name -> (structure, decoding, n, k, m, r, d, ell) exactly as registered
EXPECTED_REGISTRY = {
    "LRPC-MS-128": (kem.UNSTRUCTURED, kem.STANDARD, 34, 17, 113, 9, 10, 13),
    "LRPC-xMS-128": (kem.UNSTRUCTURED, kem.EXTENDED, 34, 17, 107, 9, 10, 13),
    "LRPC-MS-192": (kem.UNSTRUCTURED, kem.STANDARD, 42, 21, 151, 11, 11, 15),
    "ILRPC-MS-128": (kem.IDEAL, kem.STANDARD, 94, 47, 83, 7, 8, 4),
    "ILRPC-xMS-128": (kem.IDEAL, kem.EXTENDED, 94, 47, 73, 7, 8, 4),
    "ILRPC-MS-192": (kem.IDEAL, kem.STANDARD, 178, 89, 109, 9, 8, 3),
    "ILRPC-xMS-192": (kem.IDEAL, kem.EXTENDED, 178, 89, 97, 9, 8, 3),
}


class TestRegistry:
    def test_exact_rows(self):
        assert set(kem.REGISTRY) == set(EXPECTED_REGISTRY)
        for name, row in EXPECTED_REGISTRY.items():
            p = kem.get_params(name)
            assert (p.structure, p.decoding, p.n, p.k, p.m, p.r, p.d,
                    p.ell) == row
            assert p.k >= p.ell

    def test_security_metadata(self):
        assert kem.get_params("LRPC-MS-128").security_bits == 128
        assert kem.get_params("LRPC-MS-192").claimed_dfr_log2 == 190

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            kem.get_params("LRPC-MS-640")

    def test_custom_params_validation(self):
        with pytest.raises(kem.DimensionError):
            kem.ParameterSet("bad", kem.UNSTRUCTURED, kem.STANDARD,
                             16, 8, 29, 3, 3, 9)   # ell > k
        with pytest.raises(kem.DimensionError):
            kem.ParameterSet("bad", kem.IDEAL, kem.STANDARD,
                             16, 7, 29, 3, 3, 2)   # ideal needs n = 2k
        with pytest.raises(kem.DimensionError):
            kem.ParameterSet("bad", kem.UNSTRUCTURED, kem.STANDARD,
                             8, 16, 29, 3, 3, 2)   # k >= n
        with pytest.raises(kem.DimensionError):
            kem.ParameterSet("bad", "cyclic", kem.STANDARD,
                             16, 8, 29, 3, 3, 2)


@pytest.mark.parametrize("shape", sorted(TOY))
class TestRoundTrip:
    def test_many_cycles(self, shape):
        params = TOY[shape]
        for i in range(40):
            kg = derive_seed(b"rt", i, 0)
            enc = derive_seed(b"rt", i, 1)
            pk, sk = kem.keygen(params, kg)
            ct, secret = kem.encap(params, pk, enc)
            assert kem.decap(params, sk, ct) == secret
            assert len(secret) == 64

    def test_deterministic(self, shape):
        params = TOY[shape]
        pk1, sk1 = kem.keygen(params, SEED)
        pk2, sk2 = kem.keygen(params, SEED)
        assert kem.serialize_public_key(params, pk1) == \
            kem.serialize_public_key(params, pk2)
        ct1, ss1 = kem.encap(params, pk1, SEED2)
        ct2, ss2 = kem.encap(params, pk2, SEED2)
        assert kem.serialize_ciphertext(params, ct1) == \
            kem.serialize_ciphertext(params, ct2)
        assert ss1 == ss2

    def test_codec_round_trip(self, shape):
        params = TOY[shape]
        pk, sk = kem.keygen(params, SEED)
        ct, _ = kem.encap(params, pk, SEED2)
        pk_raw = kem.serialize_public_key(params, pk)
        assert len(pk_raw) == params.pk_nbytes
        assert kem.deserialize_public_key(params, pk_raw) == pk
        ct_raw = kem.serialize_ciphertext(params, ct)
        assert len(ct_raw) == params.ct_nbytes
        assert kem.deserialize_ciphertext(params, ct_raw) == ct
        sk_raw = kem.serialize_secret_key(params, sk)
        assert sk_raw == SEED
        assert kem.deserialize_secret_key(params, sk_raw) == sk

    def test_sizes_match_analysis(self, shape):
        params = TOY[shape]
        s = analysis.sizes(params)
        assert (params.pk_nbytes, params.sk_nbytes, params.ct_nbytes,
                params.ss_nbytes) == \
            (s.pk_bytes, s.sk_bytes, s.ct_bytes, s.ss_bytes)


class TestDecapBehaviour:
    def test_all_zero_ciphertext_yields_zero_support_secret(self):
        params = TOY["unstructured/standard"]
        _, sk = kem.keygen(params, SEED)
        nk = params.n - params.k
        ct = kem.Ciphertext(Matrix.zero(params.field, nk, params.ell))
        out = kem.decap(params, sk, ct)
        assert out == shared_secret_hash(Subspace.zero(params.field))

    def test_unrecoverable_ciphertext_returns_none(self):
        # a ciphertext whose error support has dimension r+2 leaves the
        # decoder with an intersection of at least that dimension
        params = TOY["unstructured/standard"]
        pk, sk = kem.keygen(params, SEED)
        from lrpc_ms.sampler import (XofStream, sample_homogeneous_matrix,
                                     sample_subspace)
        stream = XofStream(SEED2, 0x05)
        wide = sample_subspace(stream, params.r + 2, params.field)
        v = sample_homogeneous_matrix(stream, wide, params.n, params.ell,
                                      full_support=True)
        nk = params.n - params.k
        c = v.submatrix_rows(0, nk).add(
            mat_mul(pk.matrix, v.submatrix_rows(nk, params.n)))
        ct = kem.Ciphertext(c)
        # confirm the syndrome really spans the oversized product space
        parts = kem.expand_secret(params, SEED)
        syn = kem.syndrome_matrix(params, parts, ct)
        assert span_of(params.field, syn.entries) == \
            wide.product_space(parts.support)
        assert kem.decap(params, sk, ct) is None

    def test_wrong_shape_rejected(self):
        params = TOY["unstructured/standard"]
        _, sk = kem.keygen(params, SEED)
        bad = kem.Ciphertext(Matrix.zero(params.field, 3, 3))
        with pytest.raises(kem.MalformedCiphertext):
            kem.decap(params, sk, bad)

    def test_extended_requires_hash(self):
        params = TOY["unstructured/extended"]
        pk, sk = kem.keygen(params, SEED)
        ct, _ = kem.encap(params, pk, SEED2)
        stripped = kem.Ciphertext(ct.matrix, None)
        with pytest.raises(kem.MalformedCiphertext):
            kem.decap(params, sk, stripped)

    def test_standard_rejects_hash(self):
        params = TOY["unstructured/standard"]
        pk, sk = kem.keygen(params, SEED)
        ct, _ = kem.encap(params, pk, SEED2)
        with pytest.raises(kem.MalformedCiphertext):
            kem.decap(params, sk, kem.Ciphertext(ct.matrix, b"\x00" * 64))

    def test_extended_wrong_hash_still_decodes_at_dim_r(self):
        # the transmitted hash is consulted only in the dim r+1 branch
        params = TOY["unstructured/extended"]
        pk, sk = kem.keygen(params, SEED)
        ct, secret = kem.encap(params, pk, SEED2)
        tampered = kem.Ciphertext(ct.matrix, b"\xaa" * 64)
        assert kem.decap(params, sk, tampered) == secret


class TestCodecErrors:
    def test_truncated_ciphertext(self):
        params = TOY["unstructured/standard"]
        pk, _ = kem.keygen(params, SEED)
        ct, _ = kem.encap(params, pk, SEED2)
        raw = kem.serialize_ciphertext(params, ct)
        with pytest.raises(BadLength):
            kem.deserialize_ciphertext(params, raw[:-1])

    def test_truncated_public_key(self):
        params = TOY["unstructured/standard"]
        pk, _ = kem.keygen(params, SEED)
        raw = kem.serialize_public_key(params, pk)
        with pytest.raises(BadLength):
            kem.deserialize_public_key(params, raw + b"\x00")

    def test_nonzero_padding_rejected(self):
        params = TOY["ideal/standard"]  # 10*29 = 290 bits: 6 padding bits
        pk, _ = kem.keygen(params, SEED)
        raw = bytearray(kem.serialize_public_key(params, pk))
        total_bits = params.k * params.m
        assert len(raw) * 8 > total_bits
        raw[-1] |= 0x80
        with pytest.raises(BadPadding):
            kem.deserialize_public_key(params, bytes(raw))

    def test_secret_key_length(self):
        params = TOY["unstructured/standard"]
        with pytest.raises(BadLength):
            kem.deserialize_secret_key(params, b"\x00" * 39)

    def test_encap_rejects_misshapen_key(self):
        params = TOY["unstructured/standard"]
        bad = kem.PublicKey(Matrix.zero(params.field, 2, 2))
        with pytest.raises(kem.MalformedKey):
            kem.encap(params, bad, SEED)


class TestIdealMatrixConsistency:
    """The ring computations agree with the expanded parity-check matrix."""

    def test_ciphertext_via_expanded_block(self):
        params = TOY["ideal/standard"]
        ring = params.ring
        pk, sk = kem.keygen(params, SEED)
        eparts = kem.expand_encap_randomness(params, SEED2)
        ct, _ = kem.encap_with_parts(params, pk, eparts)
        blk = ideal_block(pk.matrix.entries, ring)
        k = params.k
        for i in range(params.ell):
            e_odd = list(eparts.error_tuple[2 * i])
            e_even = list(eparts.error_tuple[2 * i + 1])
            prod = mat_mul(blk, Matrix(params.field, k, 1, e_even)).entries
            want = [a ^ b for a, b in zip(e_odd, prod)]
            assert ct.matrix.row_entries(i) == want

    def test_syndrome_space_matches_matrix_pipeline(self):
        params = TOY["ideal/standard"]
        ring = params.ring
        pk, sk = kem.keygen(params, SEED)
        parts = kem.expand_secret(params, SEED)
        eparts = kem.expand_encap_randomness(params, SEED2)
        ct, _ = kem.encap_with_parts(params, pk, eparts)
        syn_ring = kem.syndrome_matrix(params, parts, ct)
        mx = ideal_block(list(parts.x), ring)
        my = ideal_block(list(parts.y), ring)
        k = params.k
        cols = []
        for i in range(params.ell):
            e_odd = Matrix(params.field, k, 1, list(eparts.error_tuple[2 * i]))
            e_even = Matrix(params.field, k, 1,
                            list(eparts.error_tuple[2 * i + 1]))
            col = [a ^ b for a, b in zip(mat_mul(mx, e_odd).entries,
                                         mat_mul(my, e_even).entries)]
            cols.append(col)
            ring_col = [syn_ring.entry(j, i) for j in range(k)]
            assert ring_col == col
        flat = [c for col in cols for c in col]
        assert span_of(params.field, flat) == span_of(params.field,
                                                      syn_ring.entries)

    def test_public_key_satisfies_ring_relation(self):
        params = TOY["ideal/standard"]
        parts = kem.expand_secret(params, SEED, need_public=True)
        h = parts.pk_matrix.entries
        # x*h = y mod P
        assert ring_mul(list(parts.x), h, params.ring) == list(parts.y)
