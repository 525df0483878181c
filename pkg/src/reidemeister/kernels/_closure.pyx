# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: BFS closure and batched action tables.

Behaviour mirrors py_fallback exactly (discovery order, parents, errors).
"""

import numpy as np

cimport numpy as cnp
from cpython.bytes cimport PyBytes_FromStringAndSize

from ..errors import CapacityError

cnp.import_array()


def closure(object gens_in, long long m, long long cap):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] gens = \
        np.ascontiguousarray(np.asarray(gens_in, dtype=np.int64) % m)
    cdef Py_ssize_t k = gens.shape[0]
    cdef Py_ssize_t d = gens.shape[1]
    cdef Py_ssize_t dd = d * d
    cdef Py_ssize_t capacity = 1024
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] buf = \
        np.zeros((capacity, d, d), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] parents = np.empty(capacity, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pgens = np.empty(capacity, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] tmp = \
        np.empty((d, d), dtype=np.int64)
    cdef Py_ssize_t count = 1, head = 0
    cdef Py_ssize_t i, j, r, c, t
    cdef cnp.int64_t acc
    cdef dict index = {}
    cdef bytes key

    for r in range(d):
        buf[0, r, r] = 1
    parents[0] = -1
    pgens[0] = -1
    index[PyBytes_FromStringAndSize(<char*> &buf[0, 0, 0], dd * 8)] = 0

    while head < count:
        for j in range(k):
            for r in range(d):
                for c in range(d):
                    acc = 0
                    for t in range(d):
                        acc += buf[head, r, t] * gens[j, t, c]
                    tmp[r, c] = acc % m
            key = PyBytes_FromStringAndSize(<char*> &tmp[0, 0], dd * 8)
            if key not in index:
                if count >= cap:
                    raise CapacityError(cap, count)
                if count >= capacity:
                    capacity = capacity * 2
                    buf = np.ascontiguousarray(np.resize(buf, (capacity, d, d)))
                    parents = np.resize(parents, capacity)
                    pgens = np.resize(pgens, capacity)
                for r in range(d):
                    for c in range(d):
                        buf[count, r, c] = tmp[r, c]
                parents[count] = head
                pgens[count] = j
                index[key] = count
                count += 1
        head += 1

    return (
        np.ascontiguousarray(buf[:count]).copy(),
        parents[:count].copy(),
        pgens[:count].copy(),
    )


def action_table(object elems_in, object left_in, object right_in, long long m, dict index):
    cdef cnp.ndarray[cnp.int64_t, ndim=3, mode="c"] elems = \
        np.ascontiguousarray(np.asarray(elems_in, dtype=np.int64))
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] left = \
        np.ascontiguousarray(np.asarray(left_in, dtype=np.int64) % m)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] right = \
        np.ascontiguousarray(np.asarray(right_in, dtype=np.int64) % m)
    cdef Py_ssize_t n = elems.shape[0]
    cdef Py_ssize_t d = elems.shape[1]
    cdef Py_ssize_t dd = d * d
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] mid = np.empty((d, d), dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=2, mode="c"] tmp = np.empty((d, d), dtype=np.int64)
    cdef Py_ssize_t i, r, c, t
    cdef cnp.int64_t acc
    cdef object hit
    cdef bytes key

    for i in range(n):
        for r in range(d):
            for c in range(d):
                acc = 0
                for t in range(d):
                    acc += left[r, t] * elems[i, t, c]
                mid[r, c] = acc % m
        for r in range(d):
            for c in range(d):
                acc = 0
                for t in range(d):
                    acc += mid[r, t] * right[t, c]
                tmp[r, c] = acc % m
        key = PyBytes_FromStringAndSize(<char*> &tmp[0, 0], dd * 8)
        hit = index.get(key)
        if hit is None:
            raise KeyError(i)
        out[i] = <long long> hit
    return out
