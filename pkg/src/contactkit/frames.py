"""Frames, distributions and Gram-system expansion.

A :class:`Frame` is an ordered list of vector fields over some parent basis
together with optional role tags (``L``/``Q``/``reeb`` for contact frames,
``F``/``G`` for symplectic ones).  Components along the frame are found by
solving the Gram system ``G c = [g(V, e_i)]`` with a pairing metric; without
one the Euclidean pairing of parent components is used.  For a vector in the
span this recovers it exactly.  For a vector outside the span (an ambient
vector on an embedded chart) it returns the orthogonal projection.

:meth:`Frame.basis` turns a frame into a basis in its own right, so every
tensor formula can run directly on frame components.
"""
from __future__ import annotations

from functools import cached_property

from .linalg import SingularMatrixError, det, inverse, matvec
from .scalar import Chart, Scalar
from .tensors import (MetricField, VectorField, _same, lie_bracket)


class DegenerateFrameError(ValueError):
    """The Gram matrix of a frame or distribution is identically singular."""


class MissingRolesError(ValueError):
    """A projection needs role tags the frame does not carry."""


def _pair(u, v, pairing):
    if pairing is not None:
        return pairing(u, v)
    acc = u.basis.chart.zero()
    for a, b in zip(u.comps, v.comps):
        if not a.is_zero() and not b.is_zero():
            acc = acc + a * b
    return acc


def _pairing_matrix(vectors, pairing):
    return [[_pair(u, v, pairing) for v in vectors] for u in vectors]


class Frame:
    """Ordered vector fields with role tags and a pairing for expansion."""

    def __init__(self, vectors, names=None, roles=None, pairing: MetricField | None = None):
        vectors = list(vectors)
        if not vectors:
            raise ValueError("a frame needs at least one vector")
        parent = vectors[0].basis
        for v in vectors:
            _same(parent, v.basis)
        self.vectors = vectors
        self.parent = parent
        self.names = tuple(names) if names else tuple(f"e{i + 1}" for i in range(len(vectors)))
        if len(self.names) != len(vectors):
            raise ValueError("one name per frame vector")
        self.roles = {k: tuple(v) for k, v in (roles or {}).items()}
        self.pairing = pairing
        if pairing is not None:
            _same(parent, pairing.basis)

    def __len__(self):
        return len(self.vectors)

    @cached_property
    def gram(self):
        return _pairing_matrix(self.vectors, self.pairing)

    @cached_property
    def _gram_inverse(self):
        try:
            return inverse(self.gram)
        except SingularMatrixError:
            raise DegenerateFrameError("frame Gram matrix is identically singular") from None

    def check(self) -> Scalar:
        """Gram determinant; raises if it is identically zero."""
        d = det(self.gram)
        if d.is_zero():
            raise DegenerateFrameError("frame Gram matrix is identically singular")
        return d

    def expand(self, v: VectorField) -> list:
        """Frame components of ``v`` via the Gram system."""
        _same(self.parent, v.basis)
        rhs = [_pair(v, e, self.pairing) for e in self.vectors]
        return matvec(self._gram_inverse, rhs)

    def combine(self, coeffs) -> VectorField:
        """``sum c_i e_i`` as a parent-basis vector field."""
        acc = VectorField.zero(self.parent)
        for c, e in zip(coeffs, self.vectors):
            if not c.is_zero():
                acc = acc + c * e
        return acc

    def block(self, role: str) -> tuple:
        if role == "D":
            if "L" in self.roles and "Q" in self.roles:
                return self.roles["L"] + self.roles["Q"]
            raise MissingRolesError("frame has no L/Q role tags")
        if role not in self.roles:
            raise MissingRolesError(f"frame has no {role!r} role tag")
        return self.roles[role]

    def project(self, v: VectorField, role: str) -> VectorField:
        idx = set(self.block(role))
        coeffs = self.expand(v)
        zero = self.parent.chart.zero()
        return self.combine([c if i in idx else zero for i, c in enumerate(coeffs)])

    @cached_property
    def basis(self) -> "FrameBasis":
        return FrameBasis(self)

    def to_frame(self, v: VectorField) -> VectorField:
        return VectorField(self.basis, self.expand(v))

    def from_frame(self, v: VectorField) -> VectorField:
        _same(self.basis, v.basis)
        return self.combine(v.comps)

    def __repr__(self):
        return f"Frame({list(self.names)}, roles={self.roles})"


class FrameBasis:
    """A frame viewed as a basis: derivatives along it and its structure functions."""

    holonomic = False

    def __init__(self, frame: Frame):
        self.frame = frame
        self.dim = len(frame)
        self.names = frame.names
        self.chart = frame.parent.chart
        self._structure = {}

    def derive(self, i: int, f: Scalar) -> Scalar:
        return self.frame.vectors[i](f)

    def structure(self, i: int, j: int):
        key = (i, j)
        if key not in self._structure:
            if i == j:
                vec = None
            elif (j, i) in self._structure:
                other = self._structure[(j, i)]
                vec = None if other is None else [-x for x in other]
            else:
                br = lie_bracket(self.frame.vectors[i], self.frame.vectors[j])
                vec = None if br.is_zero() else self.frame.expand(br)
                if vec is not None and all(x.is_zero() for x in vec):
                    vec = None
            # benign race: every writer stores the same value
            self._structure[key] = vec
        return self._structure[key]

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return id(self)

    def __repr__(self):
        return f"FrameBasis({list(self.names)})"


class Distribution:
    """Span of a list of vector fields."""

    def __init__(self, vectors, name=None, labels=None):
        vectors = list(vectors)
        if not vectors:
            raise ValueError("a distribution needs at least one generator")
        for v in vectors:
            _same(vectors[0].basis, v.basis)
        self.vectors = vectors
        self.name = name
        prefix = name or "V"
        self.labels = tuple(labels) if labels else tuple(f"{prefix}{i + 1}" for i in range(len(vectors)))
        if len(self.labels) != len(vectors):
            raise ValueError("one label per generator")
        if det(_pairing_matrix(vectors, None)).is_zero():
            raise DegenerateFrameError("generators are linearly dependent")

    @property
    def rank(self) -> int:
        return len(self.vectors)

    @property
    def basis(self):
        return self.vectors[0].basis

    def __repr__(self):
        return f"Distribution({self.name or ''}, rank={self.rank})"


def frame_expand(v: VectorField, frame: Frame, g: MetricField | None = None) -> list:
    """Components of ``v`` in ``frame`` from the Gram system of ``g``."""
    if g is not frame.pairing:
        frame = Frame(frame.vectors, frame.names, frame.roles, pairing=g)
    return frame.expand(v)


def project(v: VectorField, frame: Frame, role: str) -> VectorField:
    return frame.project(v, role)


def check_tangency(v: VectorField, chart: Chart | None = None) -> bool:
    """Is ``v`` tangent to the chart's relation variety?"""
    chart = chart or v.basis.chart
    if chart.relation is None:
        raise ValueError("chart has no relation")
    bare = Chart(chart.coords)
    rel = Scalar(bare, chart.relation)
    acc = chart.zero()
    for i, c in enumerate(v.comps):
        if c.is_zero():
            continue
        d = rel.diff(i)
        acc = acc + c * Scalar(chart, d.num, d.den)
    return acc.is_zero()
