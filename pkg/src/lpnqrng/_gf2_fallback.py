"""Pure NumPy GF(2) kernel, used when the compiled core is unavailable.

Must compute exactly the same function as lpnqrng._gf2.
"""
from __future__ import annotations

import numpy as np

# blocks processed per vectorized step; bounds the (chunk, n_out, n_words)
# intermediate to a few tens of MB for the 2048x1800 geometry
_CHUNK = 64


def toeplitz_apply_packed(rows: np.ndarray, blocks: np.ndarray) -> np.ndarray:
    """out[b, r] = parity(rows[r] & blocks[b]) as a uint8 bit matrix."""
    if blocks.shape[1] != rows.shape[1]:
        raise ValueError("matrix and blocks disagree on word count")
    n_blocks = blocks.shape[0]
    out = np.empty((n_blocks, rows.shape[0]), dtype=np.uint8)
    for start in range(0, n_blocks, _CHUNK):
        stop = min(start + _CHUNK, n_blocks)
        anded = blocks[start:stop, None, :] & rows[None, :, :]
        counts = np.bitwise_count(anded).sum(axis=2, dtype=np.uint32)
        out[start:stop] = (counts & 1).astype(np.uint8)
    return out
