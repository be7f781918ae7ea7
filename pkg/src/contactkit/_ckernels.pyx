# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twins of ``_pykernels``; same dict-of-packed-monomials layout."""
from cpython.dict cimport PyDict_GetItem, PyDict_SetItem, PyDict_DelItem
from math import gcd


cpdef dict padd(dict a, dict b):
    cdef dict out
    cdef object m, c, s
    cdef void* p
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    for m, c in b.items():
        p = PyDict_GetItem(out, m)
        if p is NULL:
            PyDict_SetItem(out, m, c)
        else:
            s = <object>p + c
            if s:
                PyDict_SetItem(out, m, s)
            else:
                PyDict_DelItem(out, m)
    return out


cpdef dict psub(dict a, dict b):
    cdef dict out = a.copy()
    cdef object m, c, s
    cdef void* p
    for m, c in b.items():
        p = PyDict_GetItem(out, m)
        if p is NULL:
            PyDict_SetItem(out, m, -c)
        else:
            s = <object>p - c
            if s:
                PyDict_SetItem(out, m, s)
            else:
                PyDict_DelItem(out, m)
    return out


cpdef dict pneg(dict a):
    cdef dict out = {}
    cdef object m, c
    for m, c in a.items():
        PyDict_SetItem(out, m, -c)
    return out


cpdef dict pscale(dict a, object k):
    cdef dict out = {}
    cdef object m, c
    if not k:
        return out
    for m, c in a.items():
        PyDict_SetItem(out, m, c * k)
    return out


cpdef dict pmul(dict a, dict b):
    cdef dict out = {}
    cdef object ma, ca, mb, cb, m, s
    cdef list bitems
    cdef void* p
    if len(a) > len(b):
        a, b = b, a
    bitems = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bitems:
            m = ma + mb
            p = PyDict_GetItem(out, m)
            if p is NULL:
                PyDict_SetItem(out, m, ca * cb)
            else:
                s = <object>p + ca * cb
                if s:
                    PyDict_SetItem(out, m, s)
                else:
                    PyDict_DelItem(out, m)
    return out


cpdef dict pmulterm(dict a, object mono, object k):
    cdef dict out = {}
    cdef object m, c
    if not k:
        return out
    for m, c in a.items():
        PyDict_SetItem(out, m + mono, c * k)
    return out


cpdef dict psubmul(dict a, dict b, object mono, object k):
    cdef dict out = a.copy()
    cdef object m, c, key, s
    cdef void* p
    for m, c in b.items():
        key = m + mono
        p = PyDict_GetItem(out, key)
        if p is NULL:
            PyDict_SetItem(out, key, -(k * c))
        else:
            s = <object>p - k * c
            if s:
                PyDict_SetItem(out, key, s)
            else:
                PyDict_DelItem(out, key)
    return out


cpdef dict pderiv(dict a, long shift, object unit):
    cdef dict out = {}
    cdef object m, c
    cdef long e
    for m, c in a.items():
        e = (m >> shift) & 0xFFFF
        if e:
            PyDict_SetItem(out, m - unit, c * e)
    return out


cpdef dict pdivint(dict a, object k):
    cdef dict out = {}
    cdef object m, c
    for m, c in a.items():
        PyDict_SetItem(out, m, c // k)
    return out


cpdef object pcontent(dict a):
    cdef object g = 0
    cdef object c
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g
