"""Polar encoding, code construction and a textbook SC reference decoder.

Index conventions are 0-based throughout: ``u[i]`` is the i-th source bit and
``x[j]`` the j-th transmitted symbol.

The generator is ``G_N = B_N F^{(x)n}`` with ``F = [[1, 0], [1, 1]]`` and
``B_N`` the bit-reversal permutation.  It is the only arrangement under which
the pairs ``(u[2i], u[2i+1])`` split the codeword into two *contiguous*
halves::

    x[:N/2] = encode(u[0::2] ^ u[1::2])
    x[N/2:] = encode(u[1::2])

which is what the deletion-aware decoder relies on: every factor-graph node
covers a contiguous run of transmitted symbols.  Since ``B_N`` commutes with
``F^{(x)n}``, the bit-channel reliabilities (and hence frozen sets) are those
of the usual Arikan recursion.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "CodeConfig",
    "bit_reversal_permutation",
    "bhattacharyya_bec",
    "construct_frozen_set",
    "encode",
    "generator_matrix",
    "sc_decode_reference",
]


def _log2_exact(N: int) -> int:
    if N < 1 or N & (N - 1):
        raise ValueError(f"code length must be a power of two, got {N}")
    return N.bit_length() - 1


def bit_reversal_permutation(N: int) -> np.ndarray:
    """Return ``p`` with ``p[i]`` the n-bit reversal of ``i``."""
    n = _log2_exact(N)
    idx = np.arange(N)
    out = np.zeros(N, dtype=np.int64)
    for b in range(n):
        out |= ((idx >> b) & 1) << (n - 1 - b)
    return out


def generator_matrix(N: int) -> np.ndarray:
    """Dense ``B_N F^{(x)n}`` over GF(2); for tests and small N only."""
    n = _log2_exact(N)
    F = np.array([[1, 0], [1, 1]], dtype=np.uint8)
    G = np.ones((1, 1), dtype=np.uint8)
    for _ in range(n):
        G = np.kron(G, F)
    return G[bit_reversal_permutation(N)]


@dataclass(frozen=True)
class CodeConfig:
    """Polar code parameters.

    ``frozen`` holds the sorted frozen indices and ``frozen_values`` the bit
    carried by each of them (all-zero unless given).  Both arrays are made
    read-only on construction.
    """

    N: int
    K: int
    frozen: np.ndarray
    frozen_values: np.ndarray = field(default=None)  # type: ignore[assignment]
    design_param: float = 0.5

    def __post_init__(self) -> None:
        _log2_exact(self.N)
        if not 1 <= self.K <= self.N:
            raise ValueError(f"K must lie in [1, {self.N}], got {self.K}")
        frozen = np.asarray(self.frozen, dtype=np.int64).ravel()
        if frozen.size != self.N - self.K:
            raise ValueError(f"expected {self.N - self.K} frozen indices, got {frozen.size}")
        if frozen.size and (frozen.min() < 0 or frozen.max() >= self.N):
            raise ValueError("frozen index out of range")
        if np.unique(frozen).size != frozen.size:
            raise ValueError("frozen indices must be unique")
        order = np.argsort(frozen, kind="stable")
        frozen = frozen[order]
        if self.frozen_values is None:
            values = np.zeros(frozen.size, dtype=np.uint8)
        else:
            values = np.asarray(self.frozen_values, dtype=np.uint8).ravel()
            if values.size != frozen.size:
                raise ValueError("frozen_values must match the frozen set in size")
            if np.any(values > 1):
                raise ValueError("frozen_values must be bits")
            values = values[order]
        frozen.flags.writeable = False
        values.flags.writeable = False
        object.__setattr__(self, "frozen", frozen)
        object.__setattr__(self, "frozen_values", values)

    @classmethod
    def build(cls, N: int, K: int, design_param: float = 0.5) -> "CodeConfig":
        """Construct a code with a Bhattacharyya/BEC frozen set."""
        return cls(N, K, construct_frozen_set(N, K, design_param), design_param=design_param)

    @property
    def n(self) -> int:
        return _log2_exact(self.N)

    @property
    def frozen_mask(self) -> np.ndarray:
        mask = np.zeros(self.N, dtype=bool)
        mask[self.frozen] = True
        return mask

    @property
    def info(self) -> np.ndarray:
        return np.flatnonzero(~self.frozen_mask)

    def frozen_value_vector(self) -> np.ndarray:
        """Length-N vector with frozen values in place and zeros elsewhere."""
        v = np.zeros(self.N, dtype=np.uint8)
        v[self.frozen] = self.frozen_values
        return v

    def embed(self, info_bits: np.ndarray) -> np.ndarray:
        """Place ``K`` information bits into a full source vector."""
        info_bits = np.asarray(info_bits, dtype=np.uint8)
        if info_bits.size != self.K:
            raise ValueError(f"expected {self.K} information bits, got {info_bits.size}")
        u = self.frozen_value_vector()
        u[self.info] = info_bits
        return u


def encode(u: np.ndarray, config: CodeConfig | None = None) -> np.ndarray:
    """Compute ``x = u B_N F^{(x)n}`` over GF(2) in ``N log2 N`` XORs.

    Parameters
    ----------
    u : array_like of {0, 1}, length N
    config : CodeConfig, optional
        When given, the length is checked against ``config.N``.
    """
    x = np.array(u, dtype=np.uint8).ravel()
    N = x.size
    if config is not None and N != config.N:
        raise ValueError(f"expected {config.N} bits, got {N}")
    _log2_exact(N)
    # natural-order butterfly computes u F^{(x)n}
    step = 1
    while step < N:
        x = x.reshape(-1, 2, step)
        x[:, 0, :] ^= x[:, 1, :]
        x = x.reshape(N)
        step *= 2
    return x[bit_reversal_permutation(N)]


def bhattacharyya_bec(N: int, design_param: float = 0.5) -> np.ndarray:
    """Bhattacharyya parameters of the N bit-channels of a BEC(design_param).

    Channel ``2i`` of the next level takes ``2z - z**2`` and channel ``2i+1``
    takes ``z**2``.
    """
    n = _log2_exact(N)
    if not 0.0 < design_param < 1.0:
        raise ValueError(f"design erasure probability must lie in (0, 1), got {design_param}")
    z = np.array([design_param], dtype=float)
    for _ in range(n):
        nxt = np.empty(2 * z.size)
        nxt[0::2] = 2 * z - z * z
        nxt[1::2] = z * z
        z = nxt
    return z


def construct_frozen_set(N: int, K: int, design_param: float = 0.5) -> np.ndarray:
    """Indices of the ``N - K`` least reliable bit-channels, sorted.

    Reliability is ranked by the BEC Bhattacharyya parameter; on ties the
    smaller index is frozen first.
    """
    if not 1 <= K <= N:
        raise ValueError(f"K must lie in [1, {N}], got {K}")
    z = bhattacharyya_bec(N, design_param)
    order = np.lexsort((np.arange(N), -z))
    return np.sort(order[: N - K])


def _boxplus(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # exact 2*atanh(tanh(a/2) tanh(b/2)), stable for large magnitudes
    return (
        np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))
        + np.log1p(np.exp(-np.abs(a + b)))
        - np.log1p(np.exp(-np.abs(a - b)))
    )


def sc_decode_reference(llr: np.ndarray, config: CodeConfig) -> np.ndarray:
    """Textbook LLR-domain SC decoder for a memoryless channel.

    ``llr[j] = log P(y_j | x_j = 0) / P(y_j | x_j = 1)`` in transmission
    order.  Ties decide 0.  Returns the decoded source vector.
    """
    llr = np.asarray(llr, dtype=float)
    if llr.size != config.N:
        raise ValueError(f"expected {config.N} LLRs, got {llr.size}")
    # undo B_N, leaving a plain F^{(x)n} code decoded by the usual tree recursion
    alpha = llr[bit_reversal_permutation(config.N)]
    frozen = config.frozen_mask
    fixed = config.frozen_value_vector()
    u_hat = np.zeros(config.N, dtype=np.uint8)

    def rec(alpha: np.ndarray, lo: int) -> np.ndarray:
        if alpha.size == 1:
            bit = fixed[lo] if frozen[lo] else np.uint8(alpha[0] < 0)
            u_hat[lo] = bit
            return np.array([bit], dtype=np.uint8)
        h = alpha.size // 2
        a, b = alpha[:h], alpha[h:]
        left = rec(_boxplus(a, b), lo)
        right = rec(b + (1.0 - 2.0 * left) * a, lo + h)
        return np.concatenate((left ^ right, right))

    rec(alpha, 0)
    return u_hat
