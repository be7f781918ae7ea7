"""Pure-Python sparse polynomial kernels.

Polynomials are dicts mapping a packed monomial (a non-negative int, see
:class:`contactkit.polynomial.PolyRing`) to a nonzero int coefficient.
Packed monomials multiply by integer addition.  Zero coefficients are never
stored.  ``_ckernels.pyx`` mirrors every function here with the same
signature.
"""
from math import gcd


def padd(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def psub(a, b):
    out = dict(a)
    for m, c in b.items():
        s = out.get(m, 0) - c
        if s:
            out[m] = s
        else:
            del out[m]
    return out


def pneg(a):
    return {m: -c for m, c in a.items()}


def pscale(a, k):
    if not k:
        return {}
    return {m: c * k for m, c in a.items()}


def pmul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = ma + mb
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                del out[m]
    return out


def pmulterm(a, mono, k):
    """Multiply ``a`` by the single term ``k * mono``."""
    if not k:
        return {}
    return {m + mono: c * k for m, c in a.items()}


def psubmul(a, b, mono, k):
    """Return ``a - k * mono * b`` (the inner step of division)."""
    out = dict(a)
    for m, c in b.items():
        key = m + mono
        s = out.get(key, 0) - k * c
        if s:
            out[key] = s
        else:
            del out[key]
    return out


def pderiv(a, shift, unit):
    """Partial derivative with respect to the variable stored at ``shift``.

    ``unit`` is the packed monomial of that variable (its field plus one unit
    of total degree).
    """
    out = {}
    for m, c in a.items():
        e = (m >> shift) & 0xFFFF
        if e:
            out[m - unit] = c * e
    return out


def pdivint(a, k):
    return {m: c // k for m, c in a.items()}


def pcontent(a):
    g = 0
    for c in a.values():
        g = gcd(g, c)
        if g == 1:
            break
    return g
