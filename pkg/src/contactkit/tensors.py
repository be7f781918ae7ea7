"""Tensor fields over a basis of vector fields.

Every tensor stores its components against a *basis* object that provides

* ``dim`` and ``names``,
* ``chart``: the Chart its Scalars live on,
* ``derive(i, f)``: the directional derivative ``e_i(f)``,
* ``structure(i, j)``: components of ``[e_i, e_j]`` (``None`` when zero).

Three bases implement this: coordinate vector fields of a chart, a Lie algebra
given by structure constants, and a :class:`~contactkit.frames.FrameBasis`
built from arbitrary vector fields.  All formulas below are written once
against the protocol.

Two-forms follow the convention ``2 u^v = u(x)v - v(x)u``, so
``(dx ^ dy)(d/dx, d/dy) = 1/2`` and ``d alpha(V, W) = 1/2 (V alpha(W) -
W alpha(V) - alpha([V, W]))``.
"""
from __future__ import annotations

from fractions import Fraction

from .scalar import Chart, ChartMismatchError, Scalar


class BasisMismatchError(ValueError):
    """Tensors defined over different bases were combined."""


# ---------------------------------------------------------------------------
# bases

class CoordinateBasis:
    """The coordinate vector fields of a chart; holonomic."""

    holonomic = True

    def __init__(self, chart: Chart):
        if chart.backend != "chart":
            raise ValueError("coordinate basis needs a coordinate chart")
        self.chart = chart
        self.dim = chart.dim
        self.names = tuple(f"d/d{c}" for c in chart.coords)

    def derive(self, i: int, f: Scalar) -> Scalar:
        return f.diff(i)

    def structure(self, i: int, j: int):
        return None

    def __eq__(self, other):
        return isinstance(other, CoordinateBasis) and other.chart == self.chart

    def __hash__(self):
        return hash(("coord", self.chart))

    def __repr__(self):
        return f"CoordinateBasis({list(self.chart.coords)})"


class LieBasis:
    """Left-invariant frame of a Lie algebra given by structure constants.

    ``table`` maps ``(i, j)`` to ``{k: c}`` meaning ``[e_i, e_j] = sum c e_k``;
    entries with ``i > j`` are filled by antisymmetry and missing pairs are
    zero.  All Scalars are constants, so directional derivatives vanish.
    """

    holonomic = False

    def __init__(self, names, table):
        self.names = tuple(names)
        self.dim = len(self.names)
        self.chart = Chart((), backend="lie-frame")
        zero = self.chart.zero()
        consts = {}
        for (i, j), coeffs in table.items():
            if i == j:
                if any(Fraction(c) for c in coeffs.values()):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            vec = [zero] * self.dim
            for k, c in coeffs.items():
                vec[k] = self.chart.const(c)
            if (j, i) in consts:
                other = consts[(j, i)]
                if any(a != -b for a, b in zip(vec, other)):
                    raise ValueError(f"table is not antisymmetric at {(i, j)}")
                continue
            consts[(i, j)] = vec
            consts[(j, i)] = [-x for x in vec]
        self._table = {key: (None if all(x.is_zero() for x in vec) else vec)
                       for key, vec in consts.items()}

    def derive(self, i: int, f: Scalar) -> Scalar:
        if not f.is_constant():
            raise ValueError("lie-frame scalars must be constant")
        return self.chart.zero()

    def structure(self, i: int, j: int):
        return self._table.get((i, j))

    def table(self) -> dict:
        """Nonzero brackets ``{(i, j): {k: Fraction}}`` for ``i < j``."""
        out = {}
        for (i, j), vec in sorted(self._table.items()):
            if i < j and vec is not None:
                out[(i, j)] = {k: x.constant_value() for k, x in enumerate(vec) if not x.is_zero()}
        return out

    def jacobi_failures(self) -> list:
        """Triples ``(i, j, k)`` for which the Jacobi identity fails."""
        bad = []
        e = [VectorField.basis_vector(self, i) for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                for k in range(j + 1, self.dim):
                    total = (lie_bracket(e[i], lie_bracket(e[j], e[k]))
                             + lie_bracket(e[j], lie_bracket(e[k], e[i]))
                             + lie_bracket(e[k], lie_bracket(e[i], e[j])))
                    if not total.is_zero():
                        bad.append((i, j, k))
        return bad

    def __eq__(self, other):
        return (isinstance(other, LieBasis) and other.names == self.names
                and other._table == self._table)

    def __hash__(self):
        return hash(("lie", self.names))

    def __repr__(self):
        return f"LieBasis({list(self.names)})"


def _same(a, b):
    if a is not b and a != b:
        raise BasisMismatchError(f"{a!r} vs {b!r}")


def _add_scaled(acc, vec, factor):
    """``acc + factor * vec`` componentwise, skipping zeros."""
    if factor.is_zero():
        return acc
    return [a if v.is_zero() else a + factor * v for a, v in zip(acc, vec)]


# ---------------------------------------------------------------------------
# tensor types

class VectorField:
    __slots__ = ("basis", "comps")

    def __init__(self, basis, comps):
        comps = tuple(comps)
        if len(comps) != basis.dim:
            raise ValueError(f"expected {basis.dim} components, got {len(comps)}")
        for c in comps:
            if c.chart != basis.chart:
                raise ChartMismatchError("component on a foreign chart")
        self.basis = basis
        self.comps = comps

    @classmethod
    def basis_vector(cls, basis, i: int) -> "VectorField":
        z, o = basis.chart.zero(), basis.chart.one()
        return cls(basis, [o if k == i else z for k in range(basis.dim)])

    @classmethod
    def zero(cls, basis) -> "VectorField":
        return cls(basis, [basis.chart.zero()] * basis.dim)

    def __call__(self, f: Scalar) -> Scalar:
        """Directional derivative ``V(f)``."""
        acc = self.basis.chart.zero()
        for i, c in enumerate(self.comps):
            if not c.is_zero():
                d = self.basis.derive(i, f)
                if not d.is_zero():
                    acc = acc + c * d
        return acc

    def __add__(self, other):
        _same(self.basis, other.basis)
        return VectorField(self.basis, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _same(self.basis, other.basis)
        return VectorField(self.basis, [a - b for a, b in zip(self.comps, other.comps)])

    def __neg__(self):
        return VectorField(self.basis, [-a for a in self.comps])

    def __rmul__(self, f):
        if isinstance(f, (int, Fraction)):
            f = self.basis.chart.const(f)
        return VectorField(self.basis, [f * a for a in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        return format_combination(self.comps, self.basis.names)

    def __repr__(self):
        return f"VectorField({self})"


class OneForm:
    __slots__ = ("basis", "comps")

    def __init__(self, basis, comps):
        comps = tuple(comps)
        if len(comps) != basis.dim:
            raise ValueError(f"expected {basis.dim} components, got {len(comps)}")
        self.basis = basis
        self.comps = comps

    def __call__(self, v: VectorField) -> Scalar:
        _same(self.basis, v.basis)
        acc = self.basis.chart.zero()
        for a, b in zip(self.comps, v.comps):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        return acc

    def __add__(self, other):
        _same(self.basis, other.basis)
        return OneForm(self.basis, [a + b for a, b in zip(self.comps, other.comps)])

    def __sub__(self, other):
        _same(self.basis, other.basis)
        return OneForm(self.basis, [a - b for a, b in zip(self.comps, other.comps)])

    def __rmul__(self, f):
        if isinstance(f, (int, Fraction)):
            f = self.basis.chart.const(f)
        return OneForm(self.basis, [f * a for a in self.comps])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def __eq__(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"OneForm({[str(c) for c in self.comps]})"


class _Matrix:
    """Shared storage for square component matrices."""

    __slots__ = ("basis", "matrix")

    def __init__(self, basis, matrix):
        matrix = tuple(tuple(row) for row in matrix)
        if len(matrix) != basis.dim or any(len(r) != basis.dim for r in matrix):
            raise ValueError(f"expected a {basis.dim}x{basis.dim} matrix")
        self.basis = basis
        self.matrix = matrix

    def __getitem__(self, ij):
        i, j = ij
        return self.matrix[i][j]

    def is_zero(self) -> bool:
        return all(x.is_zero() for row in self.matrix for x in row)

    def _combine(self, other, op):
        _same(self.basis, other.basis)
        return type(self)(self.basis, [[op(a, b) for a, b in zip(r, s)]
                                       for r, s in zip(self.matrix, other.matrix)])

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return type(self)(self.basis, [[-a for a in r] for r in self.matrix])

    def __rmul__(self, f):
        if isinstance(f, (int, Fraction)):
            f = self.basis.chart.const(f)
        return type(self)(self.basis, [[f * a for a in r] for r in self.matrix])

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.basis == other.basis and (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        rows = [[str(x) for x in r] for r in self.matrix]
        return f"{type(self).__name__}({rows})"


class TwoForm(_Matrix):
    """Antisymmetric bilinear form; ``matrix[i][j] = omega(e_i, e_j)``."""

    __slots__ = ()

    def __call__(self, v: VectorField, w: VectorField) -> Scalar:
        _same(self.basis, v.basis)
        _same(self.basis, w.basis)
        return _bilinear(self.matrix, v.comps, w.comps, self.basis.chart)

    def is_antisymmetric(self) -> bool:
        n = self.basis.dim
        return all((self.matrix[i][j] + self.matrix[j][i]).is_zero()
                   for i in range(n) for j in range(i, n))


class MetricField(_Matrix):
    """Symmetric bilinear form; ``matrix[i][j] = g(e_i, e_j)``."""

    __slots__ = ()

    def __call__(self, v: VectorField, w: VectorField) -> Scalar:
        _same(self.basis, v.basis)
        _same(self.basis, w.basis)
        return _bilinear(self.matrix, v.comps, w.comps, self.basis.chart)

    def is_symmetric(self) -> bool:
        n = self.basis.dim
        return all((self.matrix[i][j] - self.matrix[j][i]).is_zero()
                   for i in range(n) for j in range(i + 1, n))


class EndoField(_Matrix):
    """Endomorphism; column ``j`` holds the components of ``A e_j``."""

    __slots__ = ()

    def __call__(self, v: VectorField) -> VectorField:
        _same(self.basis, v.basis)
        chart = self.basis.chart
        out = []
        for row in self.matrix:
            acc = chart.zero()
            for a, b in zip(row, v.comps):
                if not a.is_zero() and not b.is_zero():
                    acc = acc + a * b
            out.append(acc)
        return VectorField(self.basis, out)

    def compose(self, other: "EndoField") -> "EndoField":
        """``self o other``."""
        _same(self.basis, other.basis)
        n = self.basis.dim
        chart = self.basis.chart
        out = [[chart.zero()] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                acc = chart.zero()
                for k in range(n):
                    a, b = self.matrix[i][k], other.matrix[k][j]
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                out[i][j] = acc
        return EndoField(self.basis, out)

    def column(self, j: int) -> VectorField:
        return VectorField(self.basis, [row[j] for row in self.matrix])

    @classmethod
    def identity(cls, basis) -> "EndoField":
        z, o = basis.chart.zero(), basis.chart.one()
        return cls(basis, [[o if i == j else z for j in range(basis.dim)]
                           for i in range(basis.dim)])

    @classmethod
    def from_columns(cls, basis, columns) -> "EndoField":
        n = basis.dim
        return cls(basis, [[columns[j].comps[i] for j in range(n)] for i in range(n)])


def _bilinear(matrix, v, w, chart):
    acc = chart.zero()
    for i, a in enumerate(v):
        if a.is_zero():
            continue
        row = matrix[i]
        for j, b in enumerate(w):
            if not b.is_zero() and not row[j].is_zero():
                acc = acc + a * b * row[j]
    return acc


# ---------------------------------------------------------------------------
# operations

def lie_bracket(v: VectorField, w: VectorField) -> VectorField:
    """``[V, W]^k = V(w^k) - W(v^k) + sum_ab v^a w^b c^k_ab``."""
    _same(v.basis, w.basis)
    basis = v.basis
    comps = [v(b) - w(a) for a, b in zip(v.comps, w.comps)]
    if not basis.holonomic:
        for a, va in enumerate(v.comps):
            if va.is_zero():
                continue
            for b, wb in enumerate(w.comps):
                if a == b or wb.is_zero():
                    continue
                c = basis.structure(a, b)
                if c is not None:
                    comps = _add_scaled(comps, c, va * wb)
    return VectorField(basis, comps)


def apply_form(form, *args) -> Scalar:
    arity = 1 if isinstance(form, OneForm) else 2
    if len(args) != arity:
        raise TypeError(f"{type(form).__name__} takes {arity} argument(s), got {len(args)}")
    return form(*args)


def wedge(a: OneForm, b: OneForm) -> TwoForm:
    """``a ^ b`` with ``(a ^ b)(u, v) = 1/2 (a(u) b(v) - a(v) b(u))``."""
    _same(a.basis, b.basis)
    n = a.basis.dim
    half = Fraction(1, 2)
    return TwoForm(a.basis, [[(a.comps[i] * b.comps[j] - a.comps[j] * b.comps[i]) * a.basis.chart.const(half)
                              for j in range(n)] for i in range(n)])


def differential(f: Scalar, basis) -> OneForm:
    """``df`` with ``df(e_i) = e_i(f)``."""
    return OneForm(basis, [basis.derive(i, f) for i in range(basis.dim)])


def exterior_derivative(alpha: OneForm) -> TwoForm:
    """``d alpha(e_a, e_b) = 1/2 (e_a alpha_b - e_b alpha_a - alpha([e_a, e_b]))``."""
    basis = alpha.basis
    n = basis.dim
    chart = basis.chart
    half = chart.const(Fraction(1, 2))
    m = [[chart.zero()] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            val = basis.derive(a, alpha.comps[b]) - basis.derive(b, alpha.comps[a])
            c = basis.structure(a, b)
            if c is not None:
                for k, ck in enumerate(c):
                    if not ck.is_zero():
                        val = val - ck * alpha.comps[k]
            val = val * half
            m[a][b] = val
            m[b][a] = -val
    return TwoForm(basis, m)


def lie_derivative(v: VectorField, t):
    """Lie derivative of a one-form, metric (or two-form) or endomorphism field."""
    basis = v.basis
    _same(basis, t.basis)
    n = basis.dim
    e = [VectorField.basis_vector(basis, i) for i in range(n)]
    br = [lie_bracket(v, ei) for ei in e]
    if isinstance(t, OneForm):
        return OneForm(basis, [v(t.comps[j]) - t(br[j]) for j in range(n)])
    if isinstance(t, (MetricField, TwoForm)):
        m = [[v(t.matrix[a][b]) - t(br[a], e[b]) - t(e[a], br[b])
              for b in range(n)] for a in range(n)]
        return type(t)(basis, m)
    if isinstance(t, EndoField):
        cols = [lie_bracket(v, t.column(j)) - t(br[j]) for j in range(n)]
        return EndoField.from_columns(basis, cols)
    raise TypeError(f"no Lie derivative for {type(t).__name__}")


def coordinate_field(basis: CoordinateBasis, name: str) -> VectorField:
    return VectorField.basis_vector(basis, basis.chart.index(name))


def coordinate_form(basis: CoordinateBasis, name: str) -> OneForm:
    """The differential ``d(name)`` of a coordinate function."""
    i = basis.chart.index(name)
    z, o = basis.chart.zero(), basis.chart.one()
    return OneForm(basis, [o if k == i else z for k in range(basis.dim)])


def format_combination(comps, names) -> str:
    """Render ``sum c_i * name_i`` in a readable, parseable-by-eye form."""
    parts = []
    for c, name in zip(comps, names):
        if c.is_zero():
            continue
        text = str(c)
        if c.is_constant():
            q = c.constant_value()
            if q == 1:
                term, sign = name, "+"
            elif q == -1:
                term, sign = name, "-"
            else:
                sign = "-" if q < 0 else "+"
                term = f"{abs(q)}*{name}"
        else:
            sign = "+"
            term = f"({text})*{name}"
        parts.append((sign, term))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out
