"""Integer-coefficient multivariate polynomials over a fixed variable order.

A polynomial is a plain ``dict`` from packed monomial to nonzero ``int``.
Monomials are packed into one integer: each variable owns a 16-bit field and
the total degree sits above all of them, so integer comparison of packed
monomials is graded-lex order (total degree first, then ``x1 > x2 > ...``)
and monomial multiplication is integer addition.

GCDs are computed with a recursive primitive pseudo-remainder sequence.  That
is slow for large inputs but exact, and the polynomials met in this package
are small.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd, isqrt

from .kernels import (padd, pcontent, pderiv, pdivint, pmul, pmulterm, pneg,
                      pscale, psub, psubmul)

FIELD = 16
MASK = (1 << FIELD) - 1

ONE = {0: 1}
_PRIME = 2147483647


class PolyRing:
    """Monomial packing for ``nvars`` ordered variables."""

    __slots__ = ("nvars", "shifts", "deg_shift", "units")

    def __init__(self, nvars: int):
        self.nvars = nvars
        self.shifts = tuple(FIELD * (nvars - 1 - i) for i in range(nvars))
        self.deg_shift = FIELD * nvars
        self.units = tuple((1 << s) + (1 << self.deg_shift) for s in self.shifts)

    # -- monomials -------------------------------------------------------
    def pack(self, exps) -> int:
        total = sum(exps)
        if total > MASK:
            raise OverflowError("monomial degree exceeds 65535")
        m = total << self.deg_shift
        for e, s in zip(exps, self.shifts):
            m |= e << s
        return m

    def unpack(self, m: int) -> tuple:
        return tuple((m >> s) & MASK for s in self.shifts)

    def degree_of(self, m: int) -> int:
        return m >> self.deg_shift

    def exponent(self, m: int, i: int) -> int:
        return (m >> self.shifts[i]) & MASK

    def divides(self, a: int, b: int) -> bool:
        """Does monomial ``a`` divide monomial ``b``?"""
        for s in self.shifts:
            if (a >> s) & MASK > (b >> s) & MASK:
                return False
        return True

    def var(self, i: int) -> dict:
        return {self.units[i]: 1}

    # -- structure -------------------------------------------------------
    def variables(self, p: dict) -> list:
        acc = 0
        for m in p:
            acc |= m
        return [i for i, s in enumerate(self.shifts) if (acc >> s) & MASK]

    def degree_in(self, p: dict, i: int) -> int:
        s = self.shifts[i]
        return max(((m >> s) & MASK for m in p), default=0)

    def split(self, p: dict, i: int) -> dict:
        """View ``p`` as a polynomial in variable ``i``: ``{degree: coeff}``."""
        s, u = self.shifts[i], self.units[i]
        out: dict = {}
        for m, c in p.items():
            e = (m >> s) & MASK
            out.setdefault(e, {})[m - e * u] = c
        return out

    def lead_in(self, p: dict, i: int) -> tuple:
        """Degree in variable ``i`` and the coefficient polynomial there."""
        s, u = self.shifts[i], self.units[i]
        d = self.degree_in(p, i)
        return d, {m - d * u: c for m, c in p.items() if (m >> s) & MASK == d}

    # -- arithmetic ------------------------------------------------------
    def pow(self, p: dict, k: int) -> dict:
        if k < 0:
            raise ValueError("negative power")
        result = dict(ONE)
        base = p
        while k:
            if k & 1:
                result = pmul(result, base)
            k >>= 1
            if k:
                base = pmul(base, base)
        return result

    def derivative(self, p: dict, i: int) -> dict:
        return pderiv(p, self.shifts[i], self.units[i])

    def divexact(self, a: dict, b: dict):
        """Exact quotient ``a / b`` in Z[x], or ``None`` if it does not exist."""
        if not b:
            raise ZeroDivisionError("polynomial division by zero")
        if not a:
            return {}
        if len(b) == 1:
            (mb, cb), = b.items()
            out = {}
            for m, c in a.items():
                q, r = divmod(c, cb)
                if r or not self.divides(mb, m):
                    return None
                out[m - mb] = q
            return out
        lb = max(b)
        cb = b[lb]
        q: dict = {}
        r = a
        while r:
            lm = max(r)
            if not self.divides(lb, lm):
                return None
            c, rem = divmod(r[lm], cb)
            if rem:
                return None
            mono = lm - lb
            q[mono] = c
            r = psubmul(r, b, mono, c)
        return q

    def content(self, p: dict) -> int:
        return pcontent(p)

    def primitive(self, p: dict) -> dict:
        """Divide by the integer content and make the leading coefficient positive."""
        if not p:
            return {}
        c = pcontent(p)
        if p[max(p)] < 0:
            c = -c
        return p if c == 1 else pdivint(p, c)

    # -- gcd -------------------------------------------------------------
    def gcd(self, a: dict, b: dict) -> dict:
        """GCD over Q[x], returned primitive with positive leading coefficient.

        Integer content is deliberately dropped; callers normalise it.
        """
        if not a:
            return self.primitive(b) if b else {}
        if not b:
            return self.primitive(a)
        if len(a) == 1 or len(b) == 1:
            return self._gcd_term(a, b)
        common = set(self.variables(a)) & set(self.variables(b))
        if not common:
            return {0: 1}
        h = self._heu_gcd(a, b, sorted(set(self.variables(a)) | set(self.variables(b))))
        if h is not None:
            return self.primitive(h)
        v = min(common)
        ca = self._content_in(a, v)
        cb = self._content_in(b, v)
        g_cont = self.gcd(ca, cb)
        pa = self.divexact(a, ca)
        pb = self.divexact(b, cb)
        if self._coprime_image(pa, pb, v):
            return self.primitive(g_cont)
        r0, r1 = pa, pb
        if self.degree_in(r0, v) < self.degree_in(r1, v):
            r0, r1 = r1, r0
        while r1 and self.degree_in(r1, v) > 0:
            r = self._prem(r0, r1, v)
            r0, r1 = r1, (self._primitive_in(r, v) if r else {})
        if r1:
            g = {0: 1}
        else:
            g = self._primitive_in(r0, v)
        return self.primitive(pmul(g_cont, g))

    def _heu_gcd(self, f: dict, g: dict, variables, attempts: int = 6):
        """Heuristic gcd over Z: evaluate, recurse, interpolate, verify.

        The evaluation point stays above ``2 min(|f|, |g|) + 2`` so a
        candidate that divides both inputs is the gcd.  Returns ``None`` when
        every attempt fails; the caller then falls back to the PRS.
        """
        if not variables:
            return {0: igcd(f.get(0, 0), g.get(0, 0))}
        cf, cg = pcontent(f), pcontent(g)
        c = igcd(cf, cg)
        f, g = pdivint(f, cf), pdivint(g, cg)
        x = 2 * min(max(map(abs, f.values())), max(map(abs, g.values()))) + 29
        v, rest = variables[0], variables[1:]
        for _ in range(attempts):
            ff, gg = self._eval_at(f, v, x), self._eval_at(g, v, x)
            if ff and gg:
                h = self._heu_gcd(ff, gg, rest)
                if h is not None:
                    h = self.primitive(self._interpolate(h, v, x))
                    if self.divexact(f, h) is not None and self.divexact(g, h) is not None:
                        return pscale(h, c)
            x = 73794 * x * isqrt(isqrt(x)) // 27011
        return None

    def _eval_at(self, p: dict, v: int, x: int) -> dict:
        """Substitute the integer ``x`` for variable ``v``."""
        out = {}
        s, u = self.shifts[v], self.units[v]
        for m, c in p.items():
            e = (m >> s) & MASK
            key = m - e * u
            out[key] = out.get(key, 0) + c * x ** e
        return {m: c for m, c in out.items() if c}

    def _interpolate(self, h: dict, v: int, x: int) -> dict:
        """Read the base-``x`` digits (symmetric residues) of ``h`` as powers of ``v``."""
        out = {}
        u = self.units[v]
        half = x // 2
        k = 0
        while h:
            digits = {}
            for m, c in h.items():
                r = c % x
                if r > half:
                    r -= x
                if r:
                    digits[m] = r
                    out[m + k * u] = r
            h = {m: q for m, q in ((m, (c - digits.get(m, 0)) // x) for m, c in h.items()) if q}
            k += 1
        return out

    def _coprime_image(self, a: dict, b: dict, v: int, tries: int = 2) -> bool:
        """Cheap proof that primitive-in-``x_v`` ``a`` and ``b`` are coprime.

        Substituting integers for the other variables and reducing mod a
        prime cannot lower the degree of a common factor as long as both
        leading coefficients in ``x_v`` survive, so a constant image gcd is a
        certificate.  ``False`` only means "undecided".
        """
        da, db = self.degree_in(a, v), self.degree_in(b, v)
        if not da or not db:
            return False
        for t in range(tries):
            values = [(7919 * (i + 3) + 104729 * t + 12345) % _PRIME for i in range(self.nvars)]
            ia = self._image(a, v, values, da)
            ib = self._image(b, v, values, db)
            if ia is None or ib is None:
                continue
            return _ugcd_degree(ia, ib) == 0
        return False

    def _image(self, p: dict, v: int, values, deg: int):
        out = [0] * (deg + 1)
        sv = self.shifts[v]
        for m, c in p.items():
            term = c % _PRIME
            for i, s in enumerate(self.shifts):
                e = (m >> s) & MASK
                if e and i != v:
                    term = term * pow(values[i], e, _PRIME) % _PRIME
            k = (m >> sv) & MASK
            out[k] = (out[k] + term) % _PRIME
        return out if out[deg] else None

    def _gcd_term(self, a: dict, b: dict) -> dict:
        if len(a) != 1:
            a, b = b, a
        (ma, _), = a.items()
        exps = list(self.unpack(ma))
        for m in b:
            e = self.unpack(m)
            exps = [min(x, y) for x, y in zip(exps, e)]
        return {self.pack(exps): 1}

    def _content_in(self, p: dict, i: int) -> dict:
        """GCD of the coefficients of ``p`` viewed as a polynomial in ``x_i``."""
        parts = list(self.split(p, i).values())
        g = parts[0]
        for q in parts[1:]:
            if g == ONE:
                break
            g = self.gcd(g, q)
        return self.primitive(g) if len(parts) == 1 else g

    def _primitive_in(self, p: dict, i: int) -> dict:
        c = self._content_in(p, i)
        out = self.divexact(p, c)
        return self.primitive(out)

    def _prem(self, a: dict, b: dict, i: int) -> dict:
        db, lcb = self.lead_in(b, i)
        u = self.units[i]
        while a:
            da, lca = self.lead_in(a, i)
            if da < db:
                break
            a = psub(pmul(lcb, a), pmul(pmulterm(lca, (da - db) * u, 1), b))
        return a

    # -- evaluation and display ------------------------------------------
    def evaluate(self, p: dict, values) -> Fraction:
        total = Fraction(0)
        for m, c in p.items():
            term = Fraction(c)
            for e, v in zip(self.unpack(m), values):
                if e:
                    term *= v ** e
            total += term
        return total

    def format(self, p: dict, names, scale: int = 1) -> str:
        """Render ``p / scale`` in the expression grammar, terms in grlex order."""
        if not p:
            return "0"
        pieces = []
        for m in sorted(p, reverse=True):
            coeff = Fraction(p[m], scale)
            mono = "*".join(
                n if e == 1 else f"{n}^{e}"
                for n, e in zip(names, self.unpack(m)) if e)
            sign = "-" if coeff < 0 else "+"
            coeff = abs(coeff)
            if mono:
                if coeff == 1:
                    body = mono
                else:
                    body = f"{coeff}*{mono}"
            else:
                body = str(coeff)
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _ugcd_degree(a: list, b: list) -> int:
    """Degree of the gcd of two dense univariate polynomials over GF(_PRIME)."""
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        inv = pow(b[-1], _PRIME - 2, _PRIME)
        while len(a) >= len(b):
            f = a[-1] * inv % _PRIME
            off = len(a) - len(b)
            for i, c in enumerate(b):
                a[off + i] = (a[off + i] - f * c) % _PRIME
            _trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def reduce_mod(ring: PolyRing, p: dict, relation: dict, lead: int):
    """Normal form of ``p`` modulo ``relation``.

    ``relation = c * v**d + rest`` where ``v`` is variable ``lead``, ``c`` is
    an integer and ``rest`` has lower degree in ``v``.  Returns ``(q, k)``
    with ``q`` of degree ``< d`` in ``v`` and ``k * p - q`` a multiple of the
    relation (``k`` is a power of ``c``).
    """
    d, lc = ring.lead_in(relation, lead)
    c = lc[0]
    s, u = ring.shifts[lead], ring.units[lead]
    mult = 1
    while True:
        high = {m: k for m, k in p.items() if (m >> s) & MASK >= d}
        if not high:
            return p, mult
        # c * p - (terms of p divided by v^d) * relation kills every high term
        quot = {m - d * u: k for m, k in high.items()}
        p = psub(pscale(p, c), pmul(quot, relation))
        mult *= c


__all__ = ["PolyRing", "reduce_mod", "ONE", "padd", "psub", "pneg", "pscale",
           "pmul", "pmulterm", "pdivint", "pcontent"]
