# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled squeeze kernel. See ``_squeeze_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free

cnp.import_array()


def disjoint_unions(const uint64_t[::1] xs, const uint64_t[::1] ys):
    cdef Py_ssize_t nx = xs.shape[0], ny = ys.shape[0]
    cdef Py_ssize_t i, j, k = 0
    cdef uint64_t x, y
    out = np.empty(nx * ny, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    with nogil:
        for i in range(nx):
            x = xs[i]
            for j in range(ny):
                y = ys[j]
                if (x & y) == 0:
                    o[k] = x | y
                    k += 1
    return out[:k].copy()


cdef inline Py_ssize_t _slot(uint64_t key, uint64_t mask) noexcept nogil:
    key ^= key >> 33
    key *= 0xff51afd7ed558ccdULL
    key ^= key >> 33
    return <Py_ssize_t>(key & mask)


def merge_unique(const uint64_t[::1] level, const uint64_t[::1] candidates):
    cdef Py_ssize_t nl = level.shape[0], nc = candidates.shape[0]
    cdef Py_ssize_t total = nl + nc, size = 16, i, s, n = 0
    cdef Py_ssize_t duplicates = 0
    cdef uint64_t key, hmask
    cdef uint64_t *table
    while size < 2 * total:
        size <<= 1
    hmask = <uint64_t>(size - 1)
    out = np.empty(total, dtype=np.uint64)
    cdef uint64_t[::1] o = out
    # zero marks an empty slot; a non-empty theory never has mask zero
    table = <uint64_t *>calloc(size, sizeof(uint64_t))
    if table == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(total):
                key = level[i] if i < nl else candidates[i - nl]
                s = _slot(key, hmask)
                while table[s] != 0 and table[s] != key:
                    s = (s + 1) & hmask
                if table[s] == key:
                    duplicates += 1
                else:
                    table[s] = key
                    o[n] = key
                    n += 1
    finally:
        free(table)
    return out[:n].copy(), duplicates
