import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polar_deletion.polar import (
    CodeConfig,
    bhattacharyya_bec,
    bit_reversal_permutation,
    construct_frozen_set,
    encode,
    generator_matrix,
    sc_decode_reference,
)


def kron_power(n):
    F = np.array([[1, 0], [1, 1]])
    G = np.ones((1, 1), dtype=int)
    for _ in range(n):
        G = np.kron(G, F)
    return G


def test_encode_two_by_two():
    # u F over GF(2) with F = [[1, 0], [1, 1]]
    np.testing.assert_array_equal(encode([0, 1]), [1, 1])
    np.testing.assert_array_equal(encode([1, 0]), [1, 0])


def test_encode_zero_is_zero():
    np.testing.assert_array_equal(encode(np.zeros(16, dtype=int)), np.zeros(16))


def test_encode_unit_vectors_n4():
    # explicit Kronecker product: F (x) F = [[1,0,0,0],[1,1,0,0],[1,0,1,0],[1,1,1,1]]
    np.testing.assert_array_equal(kron_power(2)[0], [1, 0, 0, 0])
    np.testing.assert_array_equal(encode([1, 0, 0, 0]), [1, 0, 0, 0])
    np.testing.assert_array_equal(encode([0, 0, 0, 1]), [1, 1, 1, 1])


@pytest.mark.parametrize("N", [2, 4, 8, 16, 32])
def test_encode_matches_dense_generator(N):
    # rows of the Kronecker power taken in bit-reversed order
    n = N.bit_length() - 1
    rev = [int(format(i, f"0{n}b")[::-1], 2) if n else 0 for i in range(N)]
    G = kron_power(n)[rev]
    np.testing.assert_array_equal(generator_matrix(N), G)
    rng = np.random.default_rng(N)
    for _ in range(10):
        u = rng.integers(0, 2, N)
        np.testing.assert_array_equal(encode(u), (u @ G) % 2)


@pytest.mark.parametrize("N", [4, 8, 64])
def test_codeword_halves_are_contiguous_subcodes(N):
    rng = np.random.default_rng(0)
    u = rng.integers(0, 2, N).astype(np.uint8)
    x = encode(u)
    np.testing.assert_array_equal(x[: N // 2], encode(u[0::2] ^ u[1::2]))
    np.testing.assert_array_equal(x[N // 2 :], encode(u[1::2]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 8), st.data())
def test_encode_is_linear(n, data):
    N = 2**n
    bits = st.lists(st.integers(0, 1), min_size=N, max_size=N)
    a = np.array(data.draw(bits), dtype=np.uint8)
    b = np.array(data.draw(bits), dtype=np.uint8)
    np.testing.assert_array_equal(encode(a ^ b), encode(a) ^ encode(b))


@pytest.mark.parametrize("N", [2, 4, 8, 16, 32, 64, 128, 256, 512, 1024])
def test_encode_is_an_involution(N):
    u = np.random.default_rng(N).integers(0, 2, N).astype(np.uint8)
    np.testing.assert_array_equal(encode(encode(u)), u)


def test_encode_rejects_bad_lengths():
    cfg = CodeConfig.build(8, 4)
    with pytest.raises(ValueError):
        encode(np.zeros(4, dtype=int), cfg)
    with pytest.raises(ValueError):
        encode(np.zeros(6, dtype=int))


def test_bit_reversal():
    np.testing.assert_array_equal(bit_reversal_permutation(8), [0, 4, 2, 6, 1, 5, 3, 7])


def test_bhattacharyya_two_levels():
    # 0.5 -> (0.75, 0.25) -> (0.9375, 0.5625, 0.4375, 0.0625)
    np.testing.assert_allclose(bhattacharyya_bec(4, 0.5), [0.9375, 0.5625, 0.4375, 0.0625])


def test_frozen_set_examples():
    # 0-based indices: information set {4} becomes {3}
    np.testing.assert_array_equal(construct_frozen_set(4, 1, 0.5), [0, 1, 2])
    np.testing.assert_array_equal(construct_frozen_set(4, 4, 0.5), [])
    np.testing.assert_array_equal(construct_frozen_set(4, 2, 0.5), [0, 1])


@pytest.mark.parametrize("N,K", [(8, 3), (64, 32), (512, 256), (1024, 100)])
def test_frozen_set_size_and_determinism(N, K):
    a = construct_frozen_set(N, K)
    assert a.size == N - K
    assert np.unique(a).size == a.size
    np.testing.assert_array_equal(a, construct_frozen_set(N, K))


def test_frozen_tie_break_freezes_smaller_index():
    # design 0.5 first produces exact ties in z at N=128
    N = 128
    z = bhattacharyya_bec(N, 0.5)
    ties = [(i, j) for i in range(N) for j in range(i + 1, N) if z[i] == z[j]]
    assert ties
    for K in range(1, N):
        frozen = set(construct_frozen_set(N, K).tolist())
        for i, j in ties:
            assert not (j in frozen and i not in frozen)


def test_frozen_set_rejects_bad_k():
    with pytest.raises(ValueError):
        construct_frozen_set(8, 0)
    with pytest.raises(ValueError):
        construct_frozen_set(8, 9)


def test_code_config_validation():
    with pytest.raises(ValueError):
        CodeConfig(6, 3, [0, 1, 2])
    with pytest.raises(ValueError):
        CodeConfig(8, 4, [0, 1, 2])
    with pytest.raises(ValueError):
        CodeConfig(8, 4, [0, 1, 2, 2])
    with pytest.raises(ValueError):
        CodeConfig(8, 4, [0, 1, 2, 8])
    cfg = CodeConfig(8, 5, [5, 0, 3], frozen_values=[1, 0, 1])
    np.testing.assert_array_equal(cfg.frozen, [0, 3, 5])
    np.testing.assert_array_equal(cfg.frozen_values, [0, 1, 1])
    with pytest.raises(ValueError):
        cfg.frozen[0] = 2


def test_reference_decoder_noiseless():
    cfg = CodeConfig.build(64, 32)
    rng = np.random.default_rng(3)
    u = cfg.embed(rng.integers(0, 2, cfg.K))
    llr = 20.0 * (1.0 - 2.0 * encode(u))
    np.testing.assert_array_equal(sc_decode_reference(llr, cfg), u)


def test_reference_decoder_keeps_frozen_values():
    cfg = CodeConfig(8, 4, [0, 1, 2, 4], frozen_values=[1, 0, 1, 1])
    u = cfg.embed([1, 0, 1, 1])
    llr = 20.0 * (1.0 - 2.0 * encode(u))
    out = sc_decode_reference(llr, cfg)
    np.testing.assert_array_equal(out, u)
    np.testing.assert_array_equal(out[cfg.frozen], cfg.frozen_values)
