"""Linear connections as coefficient tables on a frame.

``gamma[i][j]`` holds the frame components of ``nabla_{e_i} e_j``.  Arbitrary
arguments are handled by linearity in the first slot and the Leibniz rule in
the second, so every derived quantity (torsion, curvature, covariant
derivatives of tensors) is computed from the table alone.
"""
from __future__ import annotations

from fractions import Fraction

from .linalg import inverse, solve
from .tensors import (EndoField, MetricField, OneForm, TwoForm, VectorField,
                      _same, format_combination, lie_bracket)


class FrameConnection:
    """Connection coefficients over a basis (usually a frame basis)."""

    def __init__(self, basis, gamma, name: str = "connection", geometry=None):
        n = basis.dim
        gamma = tuple(tuple(tuple(c) for c in row) for row in gamma)
        if len(gamma) != n or any(len(r) != n for r in gamma) or \
                any(len(c) != n for r in gamma for c in r):
            raise ValueError(f"expected an {n}x{n}x{n} coefficient table")
        self.basis = basis
        self.gamma = gamma
        self.name = name
        self.geometry = geometry

    @property
    def dim(self) -> int:
        return self.basis.dim

    def coefficient(self, k: int, i: int, j: int):
        """``Gamma^k_{ij}``."""
        return self.gamma[i][j][k]

    def column(self, i: int, j: int) -> VectorField:
        return VectorField(self.basis, self.gamma[i][j])

    def is_zero(self) -> bool:
        return all(c.is_zero() for row in self.gamma for col in row for c in col)

    def table(self) -> dict:
        """Nonzero ``nabla_{e_i} e_j`` rendered over the frame names."""
        names = self.basis.names
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                col = self.gamma[i][j]
                if any(not c.is_zero() for c in col):
                    out[f"nabla_{names[i]} {names[j]}"] = format_combination(col, names)
        return out

    def __eq__(self, other):
        if not isinstance(other, FrameConnection):
            return NotImplemented
        return self.basis == other.basis and difference_tensor(self, other).is_zero()

    __hash__ = None

    def __repr__(self):
        return f"FrameConnection({self.name!r}, {self.basis!r})"


# ---------------------------------------------------------------------------
# evaluation

def nabla(C: FrameConnection, v: VectorField, w: VectorField) -> VectorField:
    """``nabla_V W`` for vector fields on ``C.basis``."""
    _same(C.basis, v.basis)
    _same(C.basis, w.basis)
    comps = [v(c) for c in w.comps]
    for i, vi in enumerate(v.comps):
        if vi.is_zero():
            continue
        row = C.gamma[i]
        for j, wj in enumerate(w.comps):
            if wj.is_zero():
                continue
            f = vi * wj
            comps = [a if g.is_zero() else a + f * g for a, g in zip(comps, row[j])]
    return VectorField(C.basis, comps)


def covariant_derivative_vec(C: FrameConnection, v: VectorField, w: VectorField) -> VectorField:
    """``nabla_V W``; parent-basis arguments are expanded in the frame and the
    result is returned on the parent basis."""
    if v.basis == C.basis:
        return nabla(C, v, w)
    frame = C.basis.frame
    out = nabla(C, frame.to_frame(v), frame.to_frame(w))
    return frame.from_frame(out)


def torsion(C: FrameConnection, v: VectorField, w: VectorField) -> VectorField:
    return nabla(C, v, w) - nabla(C, w, v) - lie_bracket(v, w)


def curvature(C: FrameConnection, v: VectorField, w: VectorField, u: VectorField) -> VectorField:
    return (nabla(C, v, nabla(C, w, u)) - nabla(C, w, nabla(C, v, u))
            - nabla(C, lie_bracket(v, w), u))


def covariant_derivative_metric(C, g, v, a, b):
    """``(nabla_V g)(A, B)``; also used for two-forms."""
    return v(g(a, b)) - g(nabla(C, v, a), b) - g(a, nabla(C, v, b))


def covariant_derivative_endo(C, A: EndoField, v, w) -> VectorField:
    """``(nabla_V A) W = nabla_V (A W) - A (nabla_V W)``."""
    return nabla(C, v, A(w)) - A(nabla(C, v, w))


def covariant_derivative_form(C, alpha: OneForm, v, w):
    return v(alpha(w)) - alpha(nabla(C, v, w))


def covariant_derivative_tensor(C: FrameConnection, t) -> dict:
    """``nabla t`` on all frame combinations, keyed by index tuples.

    Metrics and two-forms give ``{(v, a, b): Scalar}``, endomorphisms
    ``{(v, w): VectorField}``, one-forms ``{(v, w): Scalar}``.
    """
    e = [VectorField.basis_vector(C.basis, i) for i in range(C.dim)]
    idx = range(C.dim)
    if isinstance(t, (MetricField, TwoForm)):
        return {(v, a, b): covariant_derivative_metric(C, t, e[v], e[a], e[b])
                for v in idx for a in idx for b in idx}
    if isinstance(t, EndoField):
        return {(v, w): covariant_derivative_endo(C, t, e[v], e[w]) for v in idx for w in idx}
    if isinstance(t, OneForm):
        return {(v, w): covariant_derivative_form(C, t, e[v], e[w]) for v in idx for w in idx}
    if isinstance(t, VectorField):
        return {(v,): nabla(C, e[v], t) for v in idx}
    raise TypeError(f"no covariant derivative for {type(t).__name__}")


def labelled(C: FrameConnection, table: dict):
    """Attach frame-name labels to a covariant-derivative table."""
    names = C.basis.names
    for key, value in table.items():
        yield "(" + ", ".join(names[i] for i in key) + ")", value


def is_parallel(C: FrameConnection, t) -> bool:
    return all(v.is_zero() for v in covariant_derivative_tensor(C, t).values())


class DifferenceTensor:
    """``S(e_i, e_j) = nabla1_{e_i} e_j - nabla2_{e_i} e_j``; tensorial."""

    def __init__(self, basis, table):
        self.basis = basis
        self.table = table

    def __call__(self, v: VectorField, w: VectorField) -> VectorField:
        acc = VectorField.zero(self.basis)
        for i, vi in enumerate(v.comps):
            if vi.is_zero():
                continue
            for j, wj in enumerate(w.comps):
                if not wj.is_zero():
                    acc = acc + (vi * wj) * self.table[(i, j)]
        return acc

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.table.values())

    def items(self):
        return self.table.items()

    def nonzero(self) -> dict:
        names = self.basis.names
        return {f"S({names[i]}, {names[j]})": format_combination(v.comps, names)
                for (i, j), v in sorted(self.table.items()) if not v.is_zero()}


def difference_tensor(C1: FrameConnection, C2: FrameConnection) -> DifferenceTensor:
    if C1.basis != C2.basis:
        raise ValueError("connections live on different frames")
    n = C1.dim
    table = {(i, j): VectorField(C1.basis, [a - b for a, b in zip(C1.gamma[i][j], C2.gamma[i][j])])
             for i in range(n) for j in range(n)}
    return DifferenceTensor(C1.basis, table)


# ---------------------------------------------------------------------------
# constructions

def levi_civita_table(basis, g: MetricField):
    """Koszul formula solved with the inverse Gram matrix."""
    n = basis.dim
    chart = basis.chart
    zero = chart.zero()
    ginv = inverse([list(r) for r in g.matrix])
    gm = g.matrix

    def gb(i, j, l):
        # g([e_i, e_j], e_l)
        c = basis.structure(i, j)
        if c is None:
            return zero
        acc = zero
        for k, ck in enumerate(c):
            if not ck.is_zero() and not gm[k][l].is_zero():
                acc = acc + ck * gm[k][l]
        return acc

    half = chart.const(Fraction(1, 2))
    gamma = []
    for i in range(n):
        row = []
        for j in range(n):
            koszul = []
            for l in range(n):
                val = (basis.derive(i, gm[j][l]) + basis.derive(j, gm[l][i])
                       - basis.derive(l, gm[i][j])
                       + gb(i, j, l) - gb(j, l, i) + gb(l, i, j))
                koszul.append(val * half)
            comps = []
            for k in range(n):
                acc = zero
                for l in range(n):
                    if not ginv[k][l].is_zero() and not koszul[l].is_zero():
                        acc = acc + ginv[k][l] * koszul[l]
                comps.append(acc)
            row.append(comps)
        gamma.append(row)
    return gamma


def levi_civita(G) -> FrameConnection:
    """Levi-Civita connection of the structure metric on the adapted frame."""
    return FrameConnection(G.basis, levi_civita_table(G.basis, G.g), "levi-civita", G)


def tanaka_webster(G) -> FrameConnection:
    """``nabla^LC_V W + eta(V) phi W + eta(W)(phi V + phi h V) + deta(V + hV, W) xi``."""
    lc = G.levi_civita
    e, eta, phi, h, xi = G.e, G.eta, G.phi, G.h, G.xi
    gamma = []
    for i in range(G.dim):
        row = []
        hv = e[i] + h(e[i])
        phv = phi(e[i]) + phi(h(e[i]))
        for j in range(G.dim):
            col = (lc.column(i, j) + eta.comps[i] * phi(e[j]) + eta.comps[j] * phv
                   + G.deta(hv, e[j]) * xi)
            row.append(col.comps)
        gamma.append(row)
    return FrameConnection(G.basis, gamma, "tanaka-webster", G)


def tilde_connection(G) -> FrameConnection:
    """``(nabla^LC_Z Z')_D`` on D, ``[xi, Z]`` along xi, and ``xi`` parallel."""
    lc = G.levi_civita
    zero = VectorField.zero(G.basis)
    r = G.reeb
    gamma = []
    for i in range(G.dim):
        row = []
        for j in range(G.dim):
            if j == r:
                col = zero
            elif i == r:
                col = lie_bracket(G.e[r], G.e[j])
            else:
                v = lc.column(i, j)
                col = v - G.eta(v) * G.xi
            row.append(col.comps)
        gamma.append(row)
    return FrameConnection(G.basis, gamma, "tilde", G)


def h_operator(G, v: VectorField, w: VectorField) -> VectorField:
    """The section ``H`` of D with ``deta(H, Z) = V(deta(W, Z)) - deta(W, [V, Z])``."""
    D = G.D
    e = G.e
    # row k, column a: deta(e_a, e_k)
    pairing = [[G.deta.matrix[a][k] for a in D] for k in D]
    if all(x.is_zero() for row in pairing for x in row):
        raise ValueError("deta is degenerate on D")
    rhs = [v(G.deta(w, e[k])) - G.deta(w, lie_bracket(v, e[k])) for k in D]
    coeffs = solve(pairing, rhs)
    comps = [G.zero()] * G.dim
    for a, c in zip(D, coeffs):
        comps[a] = c
    return VectorField(G.basis, comps)


def bi_legendrian(G) -> FrameConnection:
    """The connection preserving ``L``, ``Q`` and ``R xi`` built from ``H``."""
    e = G.e
    r = G.reeb
    zero = VectorField.zero(G.basis)
    blocks = {a: "L" for a in G.L}
    blocks.update({a: "Q" for a in G.Q})
    gamma = []
    for i in range(G.dim):
        row = []
        for j in range(G.dim):
            if j == r:
                col = zero
            else:
                own = blocks[j]
                if i == r or blocks.get(i) != own:
                    col = G.proj(lie_bracket(e[i], e[j]), own)
                else:
                    col = G.proj(h_operator(G, e[i], e[j]), own)
            row.append(col.comps)
        gamma.append(row)
    return FrameConnection(G.basis, gamma, "bi-legendrian", G)
