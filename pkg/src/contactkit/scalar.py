"""Exact rational functions on a chart.

A :class:`Scalar` is ``num / den`` with ``num``, ``den`` integer polynomials
in the chart coordinates.  The stored form is canonical:

* ``gcd(num, den) = 1`` over Q[x],
* ``num`` and ``den`` are jointly primitive over Z,
* the graded-lex leading coefficient of ``den`` is positive,
* on an embedded chart both are first reduced modulo the relation.

Off embedded charts equality is therefore syntactic.  On an embedded chart
polynomials have unique normal forms, but two fractions with non-constant
denominators can be equal without matching term by term; ``==`` always
decides by reducing the numerator of the difference, so it stays sound.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd

from .polynomial import (ONE, PolyRing, padd, pcontent, pdivint, pmul, pneg,
                         pscale, psub, reduce_mod)


class ChartMismatchError(ValueError):
    """Scalars or tensors from different charts were combined."""


class ScalarDivisionError(ZeroDivisionError):
    """Division by a Scalar that is identically zero."""


class PoleError(ZeroDivisionError):
    """A Scalar was evaluated where its denominator vanishes."""


class OffVarietyError(ValueError):
    """An evaluation point does not satisfy the chart relation."""


class Chart:
    """Ordered coordinate names, an optional defining relation and a backend tag.

    ``backend`` is ``"chart"`` for coordinate charts (optionally embedded via
    ``relation``) and ``"lie-frame"`` for left-invariant frames, where no
    coordinates exist and every Scalar is a rational constant.
    """

    __slots__ = ("coords", "backend", "ring", "relation", "lead", "_index", "_key")

    def __init__(self, coords=(), relation=None, backend="chart", lead=None):
        coords = tuple(coords)
        if len(set(coords)) != len(coords):
            raise ValueError(f"duplicate coordinate names in {coords}")
        if backend not in ("chart", "lie-frame"):
            raise ValueError(f"unknown backend {backend!r}")
        if backend == "lie-frame" and coords:
            raise ValueError("a lie-frame chart carries no coordinates")
        self.coords = coords
        self.backend = backend
        self.ring = PolyRing(len(coords))
        self._index = {c: i for i, c in enumerate(coords)}
        self.relation = None
        self.lead = None
        if relation is not None:
            self._set_relation(relation, lead)
        rel_key = None if self.relation is None else tuple(sorted(self.relation.items()))
        self._key = (coords, rel_key, backend)

    def _set_relation(self, relation, lead):
        from .parser import parse_scalar

        bare = Chart(self.coords)
        r = parse_scalar(relation, bare) if isinstance(relation, str) else relation
        if r.chart != bare:
            raise ChartMismatchError("relation must live on the same coordinates")
        if not r.is_polynomial() or r.is_constant():
            raise ValueError("relation must be a nonconstant polynomial")
        poly = r.num
        ring = self.ring
        candidates = []
        for i in range(len(self.coords)):
            d, lc = ring.lead_in(poly, i)
            if d > 0 and list(lc) == [0]:
                candidates.append(i)
        if lead is not None:
            i = self.index(lead)
            if i not in candidates:
                raise ValueError(f"relation has no constant leading coefficient in {lead}")
        elif not candidates:
            raise ValueError("relation needs a coordinate whose top power has a constant coefficient")
        else:
            i = candidates[-1]
        self.relation = poly
        self.lead = i

    # ------------------------------------------------------------------
    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown coordinate {name!r}") from None

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def embedded(self) -> bool:
        return self.relation is not None

    def relation_text(self) -> str | None:
        if self.relation is None:
            return None
        return self.ring.format(self.relation, self.coords)

    def __eq__(self, other):
        return isinstance(other, Chart) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        extra = f", relation={self.relation_text()!r}" if self.relation else ""
        return f"Chart({list(self.coords)!r}{extra}, backend={self.backend!r})"

    # convenience constructors
    def const(self, value) -> "Scalar":
        return Scalar.constant(self, value)

    def coord(self, name: str) -> "Scalar":
        i = self.index(name)
        return Scalar._raw(self, self.ring.var(i), dict(ONE))

    def zero(self) -> "Scalar":
        return Scalar._raw(self, {}, dict(ONE))

    def one(self) -> "Scalar":
        return Scalar._raw(self, dict(ONE), dict(ONE))


def _normalize(chart: Chart, num: dict, den: dict):
    if not den:
        raise ScalarDivisionError("denominator is identically zero")
    ring = chart.ring
    if chart.relation is not None:
        num, kn = reduce_mod(ring, num, chart.relation, chart.lead)
        den, kd = reduce_mod(ring, den, chart.relation, chart.lead)
        if not den:
            raise ScalarDivisionError("denominator vanishes modulo the chart relation")
        if kn != kd:
            num, den = pscale(num, kd), pscale(den, kn)
    if not num:
        return {}, dict(ONE)
    if len(den) == 1 and 0 in den:
        d = den[0]
        g = igcd(pcontent(num), d)
        if d < 0:
            g = -g
        if g != 1:
            num = pdivint(num, g)
            d //= g
        return num, {0: d}
    g = ring.gcd(num, den)
    if g != ONE:
        num = ring.divexact(num, g)
        den = ring.divexact(den, g)
    c = igcd(pcontent(num), pcontent(den))
    if den[max(den)] < 0:
        c = -c
    if c != 1:
        num, den = pdivint(num, c), pdivint(den, c)
    return num, den


def _coerce(chart: Chart, value) -> "Scalar":
    if isinstance(value, Scalar):
        if value.chart != chart:
            raise ChartMismatchError(f"{value.chart!r} vs {chart!r}")
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar.constant(chart, value)
    return None


class Scalar:
    """Immutable exact rational function in canonical form."""

    __slots__ = ("chart", "num", "den", "_hash")

    def __init__(self, chart: Chart, num: dict, den: dict | None = None):
        num, den = _normalize(chart, dict(num), dict(den) if den is not None else dict(ONE))
        self.chart, self.num, self.den, self._hash = chart, num, den, None

    @classmethod
    def _raw(cls, chart, num, den):
        """Wrap an already canonical pair."""
        obj = object.__new__(cls)
        obj.chart, obj.num, obj.den, obj._hash = chart, num, den, None
        return obj

    @classmethod
    def constant(cls, chart: Chart, value) -> "Scalar":
        q = Fraction(value)
        if q == 0:
            return cls._raw(chart, {}, dict(ONE))
        return cls._raw(chart, {0: q.numerator}, {0: q.denominator})

    # -- predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return (not self.num or list(self.num) == [0]) and list(self.den) == [0]

    def is_polynomial(self) -> bool:
        return list(self.den) == [0]

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return Fraction(self.num.get(0, 0), self.den[0])

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(self.chart, other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return Scalar(self.chart, padd(self.num, o.num), self.den)
        return Scalar(self.chart,
                      padd(pmul(self.num, o.den), pmul(o.num, self.den)),
                      pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.chart, pneg(self.num), self.den)

    def __sub__(self, other):
        o = _coerce(self.chart, other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if self.den == o.den:
            return Scalar(self.chart, psub(self.num, o.num), self.den)
        return Scalar(self.chart,
                      psub(pmul(self.num, o.den), pmul(o.num, self.den)),
                      pmul(self.den, o.den))

    def __rsub__(self, other):
        o = _coerce(self.chart, other)
        return NotImplemented if o is None else o - self

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            if other == 1:
                return self
            return Scalar(self.chart, pscale(self.num, other), self.den)
        o = _coerce(self.chart, other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.chart.zero()
        if o.is_constant() and o.den == ONE and o.num == ONE:
            return self
        return Scalar(self.chart, pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _coerce(self.chart, other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ScalarDivisionError(f"division of {self} by zero")
        return Scalar(self.chart, pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = _coerce(self.chart, other)
        return NotImplemented if o is None else o / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers are supported")
        ring = self.chart.ring
        return Scalar(self.chart, ring.pow(self.num, k), ring.pow(self.den, k))

    # -- calculus -------------------------------------------------------
    def diff(self, coord) -> "Scalar":
        """Exact partial derivative (quotient rule)."""
        i = coord if isinstance(coord, int) else self.chart.index(coord)
        ring = self.chart.ring
        dn = ring.derivative(self.num, i)
        if list(self.den) == [0]:
            return Scalar(self.chart, dn, self.den)
        dd = ring.derivative(self.den, i)
        return Scalar(self.chart,
                      psub(pmul(dn, self.den), pmul(self.num, dd)),
                      pmul(self.den, self.den))

    def evaluate(self, point) -> Fraction:
        chart = self.chart
        values = []
        for name in chart.coords:
            if name not in point:
                raise KeyError(f"point does not assign coordinate {name!r}")
            values.append(Fraction(point[name]))
        ring = chart.ring
        if chart.relation is not None and ring.evaluate(chart.relation, values) != 0:
            raise OffVarietyError(f"point {dict(point)} is off the variety {chart.relation_text()} = 0")
        d = ring.evaluate(self.den, values)
        if d == 0:
            raise PoleError(f"{self} has a pole at {dict(point)}")
        return ring.evaluate(self.num, values) / d

    # -- comparison / display ---------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.constant(self.chart, other)
        if not isinstance(other, Scalar):
            return NotImplemented
        if other.chart != self.chart:
            return False
        if self.num == other.num and self.den == other.den:
            return True
        return (self - other).is_zero()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        ring, names = self.chart.ring, self.chart.coords
        if list(self.den) == [0]:
            return ring.format(self.num, names, self.den[0])
        num = ring.format(self.num, names)
        den = ring.format(self.den, names)
        if len(self.num) > 1:
            num = f"({num})"
        return f"{num}/({den})"

    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def numerator(self) -> "Scalar":
        return Scalar(self.chart, self.num)

    def denominator(self) -> "Scalar":
        return Scalar(self.chart, self.den)


# -- functional API ------------------------------------------------------

def scalar_arith(a: Scalar, b: Scalar, op: str) -> Scalar:
    if a.chart != b.chart:
        raise ChartMismatchError(f"{a.chart!r} vs {b.chart!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def differentiate(s: Scalar, coord: str) -> Scalar:
    return s.diff(coord)


def evaluate(s: Scalar, point) -> Fraction:
    return s.evaluate(point)


def is_identically_zero(s: Scalar) -> bool:
    return s.is_zero()


def reduce_polynomial(s: Scalar):
    """Relation normal form of a polynomial Scalar's numerator, unnormalised.

    Returns ``(q, k)`` as produced by :func:`reduce_mod`; used to audit that
    ``k * p - q`` is a multiple of the relation.
    """
    chart = s.chart
    if chart.relation is None:
        return dict(s.num), 1
    return reduce_mod(chart.ring, s.num, chart.relation, chart.lead)
