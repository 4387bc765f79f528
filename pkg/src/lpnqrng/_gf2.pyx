# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled GF(2) kernel: packed Toeplitz matrix-vector products.

Matrix rows and input blocks are packed 64 bits per word, MSB first.
Each output bit is the parity of the AND of one row with one block.
The NumPy fallback (lpnqrng._gf2_fallback) computes the identical
function; the two must stay bit-for-bit interchangeable.
"""

import numpy as np

ctypedef unsigned long long u64
ctypedef unsigned char u8


cdef inline u64 _popcount64(u64 x) nogil:
    x = x - ((x >> 1) & 0x5555555555555555ULL)
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL
    return (x * 0x0101010101010101ULL) >> 56


def toeplitz_apply_packed(u64[:, ::1] rows, u64[:, ::1] blocks):
    """out[b, r] = parity(rows[r] & blocks[b]) as a uint8 bit matrix."""
    cdef Py_ssize_t n_out = rows.shape[0]
    cdef Py_ssize_t n_words = rows.shape[1]
    cdef Py_ssize_t n_blocks = blocks.shape[0]
    if blocks.shape[1] != n_words:
        raise ValueError("matrix and blocks disagree on word count")
    out_arr = np.empty((n_blocks, n_out), dtype=np.uint8)
    if n_blocks == 0 or n_out == 0:
        return out_arr
    cdef u8[:, ::1] out = out_arr
    cdef Py_ssize_t b, r, w
    cdef u64 acc
    with nogil:
        for b in range(n_blocks):
            for r in range(n_out):
                acc = 0
                for w in range(n_words):
                    acc ^= rows[r, w] & blocks[b, w]
                out[b, r] = <u8> (_popcount64(acc) & 1ULL)
    return out_arr
