# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of :mod:`kvwitness._ext._zeros_py`; same contract."""

from cpython.mem cimport PyMem_Malloc, PyMem_Free


cdef inline bint _vanishes(long long x, long long y, long long z, long long q, long long stride,
                           const long long[:] add, const long long[:] mul,
                           const long long[:] terms, const long long[:] offsets,
                           long long nforms, long long* pw) noexcept nogil:
    cdef long long f, t, acc, v
    for f in range(nforms):
        acc = 0
        for t in range(offsets[f], offsets[f + 1]):
            v = mul[mul[pw[x * stride + terms[4 * t]] * q + pw[y * stride + terms[4 * t + 1]]] * q
                    + pw[z * stride + terms[4 * t + 2]]]
            acc = add[acc * q + mul[terms[4 * t + 3] * q + v]]
        if acc != 0:
            return False
    return True


def common_zeros(long long q, long long maxdeg, const long long[:] add, const long long[:] mul,
                 const long long[:] terms, const long long[:] offsets):
    cdef long long nforms = offsets.shape[0] - 1
    cdef long long stride = maxdeg + 1
    cdef long long a, e, x, y
    cdef long long* pw = <long long*> PyMem_Malloc(q * stride * sizeof(long long))
    if pw == NULL:
        raise MemoryError()
    out = []
    try:
        for a in range(q):
            pw[a * stride] = 1
            for e in range(1, stride):
                pw[a * stride + e] = mul[pw[a * stride + e - 1] * q + a]
        for x in range(q):
            for y in range(q):
                if _vanishes(x, y, 1, q, stride, add, mul, terms, offsets, nforms, pw):
                    out.append((x, y, 1))
        for x in range(q):
            if _vanishes(x, 1, 0, q, stride, add, mul, terms, offsets, nforms, pw):
                out.append((x, 1, 0))
        if _vanishes(1, 0, 0, q, stride, add, mul, terms, offsets, nforms, pw):
            out.append((1, 0, 0))
    finally:
        PyMem_Free(pw)
    return out
