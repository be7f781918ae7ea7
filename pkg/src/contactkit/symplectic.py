"""Symplectic charts, Lagrangian splittings and the bi-Lagrangian connection.

The bi-Lagrangian connection is built like the bi-Legendrian one, with
``omega`` in place of ``deta`` and no Reeb block: on a block it is the
projection of the section ``H`` defined by
``omega(H, Z) = V(omega(W, Z)) - omega(W, [V, Z])``, across blocks it is the
projected bracket.  The result is then checked against the defining axioms
rather than trusted.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from itertools import islice, product

from .connections import (FrameConnection, covariant_derivative_endo,
                          covariant_derivative_metric, curvature, difference_tensor,
                          levi_civita_table, nabla, torsion)
from .frames import Distribution, Frame
from .linalg import det, solve
from .reports import AxiomReport, bool_check, zero_check
from .scalar import PoleError
from .tensors import EndoField, MetricField, TwoForm, VectorField, lie_bracket


class FlatnessError(ValueError):
    """The bi-Lagrangian connection is not flat on the chart."""


class DarbouxError(ValueError):
    """The frame is not normalised as ``omega(Y_i, X_j) = -1/2 delta_ij``."""


class SymplecticStructure:
    """``omega`` on a chart with Lagrangian distributions ``F`` and ``G``.

    ``J`` and ``g`` are optional and given on the parent basis.
    """

    def __init__(self, basis, omega: TwoForm, F: Distribution, G: Distribution,
                 J: EndoField | None = None, g: MetricField | None = None,
                 name: str = "symplectic"):
        if basis.dim % 2:
            raise ValueError("a symplectic chart has even dimension")
        if F.rank != G.rank:
            raise ValueError("F and G must have equal rank")
        if F.rank * 2 != basis.dim:
            raise ValueError(f"Lagrangian distributions have rank {basis.dim // 2}")
        self.basis = basis
        self.omega = omega
        self.F, self.G = F, G
        self.J, self.g = J, g
        self.name = name
        self.n = basis.dim // 2
        n = self.n
        self.frame = Frame(list(F.vectors) + list(G.vectors), F.labels + G.labels,
                           {"F": tuple(range(n)), "G": tuple(range(n, 2 * n))})
        self.frame._gram_inverse   # raises if F and G are not transversal

    @property
    def chart(self):
        return self.basis.chart

    @cached_property
    def fbasis(self):
        return self.frame.basis

    @cached_property
    def e(self):
        return [VectorField.basis_vector(self.fbasis, i) for i in range(2 * self.n)]

    @cached_property
    def w(self) -> TwoForm:
        """``omega`` on the adapted frame."""
        vs = self.frame.vectors
        return TwoForm(self.fbasis, [[self.omega(a, b) for b in vs] for a in vs])

    def to_frame_metric(self, g: MetricField) -> MetricField:
        vs = self.frame.vectors
        return MetricField(self.fbasis, [[g(a, b) for b in vs] for a in vs])

    def to_frame_endo(self, A: EndoField) -> EndoField:
        return EndoField.from_columns(self.fbasis, [self.frame.to_frame(A(v))
                                                    for v in self.frame.vectors])

    def proj(self, v: VectorField, role: str) -> VectorField:
        idx = set(self.frame.block(role))
        z = self.chart.zero()
        return VectorField(self.fbasis, [c if i in idx else z for i, c in enumerate(v.comps)])

    @cached_property
    def connection(self) -> FrameConnection:
        return bi_lagrangian(self)

    def __repr__(self):
        return f"SymplecticStructure({self.name!r})"


def validate_symplectic(S: SymplecticStructure) -> AxiomReport:
    w = S.w
    idx = range(2 * S.n)
    lab = _labeller(S)
    rep = AxiomReport("symplectic structure")
    om = S.omega.matrix
    rep.add(zero_check("omega antisymmetric",
                       [(f"({i}, {j})", om[i][j] + om[j][i])
                        for i in range(S.basis.dim) for j in range(S.basis.dim) if i <= j]))
    rep.add(bool_check("omega nondegenerate", not det([list(r) for r in om]).is_zero(),
                       "det omega = 0"))
    # d omega on frame triples: cyclic sum of V(omega(W, U)) - omega([V, W], U)
    cases = []
    e = S.e
    for a, b, c in product(idx, repeat=3):
        if a < b < c:
            val = (e[a](w(e[b], e[c])) + e[b](w(e[c], e[a])) + e[c](w(e[a], e[b]))
                   - w(lie_bracket(e[a], e[b]), e[c]) - w(lie_bracket(e[b], e[c]), e[a])
                   - w(lie_bracket(e[c], e[a]), e[b]))
            cases.append((lab(a, b, c), val))
    rep.add(zero_check("d omega = 0", cases))
    return rep


def _labeller(S):
    names = S.frame.names
    return lambda *idx: "(" + ", ".join(names[i] for i in idx) + ")"


def lagrangian_report(S: SymplecticStructure, D: Distribution) -> AxiomReport:
    if D.rank != S.n:
        from .contact import RankMismatchError
        raise RankMismatchError(f"Lagrangian distributions have rank {S.n}, got {D.rank}")
    rep = AxiomReport("Lagrangian")
    rep.add(zero_check("omega(X, X') = 0", [
        (f"({D.labels[a]}, {D.labels[b]})", S.omega(D.vectors[a], D.vectors[b]))
        for a in range(D.rank) for b in range(a + 1, D.rank)]))
    return rep


def lagrangian_check(S: SymplecticStructure, D: Distribution) -> bool:
    return lagrangian_report(S, D).passed


def omega_h_operator(S: SymplecticStructure, v: VectorField, w: VectorField) -> VectorField:
    """``omega(H, Z) = V(omega(W, Z)) - omega(W, [V, Z])`` over the whole frame."""
    m = S.w.matrix
    dim = 2 * S.n
    pairing = [[m[a][k] for a in range(dim)] for k in range(dim)]
    rhs = [v(S.w(w, S.e[k])) - S.w(w, lie_bracket(v, S.e[k])) for k in range(dim)]
    return VectorField(S.fbasis, solve(pairing, rhs))


def bi_lagrangian(S: SymplecticStructure) -> FrameConnection:
    """The symplectic connection preserving ``F`` and ``G`` with zero mixed torsion."""
    e = S.e
    dim = 2 * S.n
    blocks = {a: "F" for a in S.frame.block("F")}
    blocks.update({a: "G" for a in S.frame.block("G")})
    gamma = []
    for i in range(dim):
        row = []
        for j in range(dim):
            own = blocks[j]
            if blocks[i] == own:
                col = S.proj(omega_h_operator(S, e[i], e[j]), own)
            else:
                col = S.proj(lie_bracket(e[i], e[j]), own)
            row.append(col.comps)
        gamma.append(row)
    return FrameConnection(S.fbasis, gamma, "bi-lagrangian")


def check_hess_axioms(C: FrameConnection, S: SymplecticStructure) -> AxiomReport:
    e = S.e
    idx = range(2 * S.n)
    lab = _labeller(S)
    rep = AxiomReport(f"bi-Lagrangian axioms for {C.name}")
    rep.add(zero_check("nabla omega = 0", [
        (lab(v, a, b), covariant_derivative_metric(C, S.w, e[v], e[a], e[b]))
        for v in idx for a in idx for b in idx if a < b]))
    for role in ("F", "G"):
        block = S.frame.block(role)
        rep.add(zero_check(f"nabla {role} in {role}", [
            (lab(v, a), nabla(C, e[v], e[a]) - S.proj(nabla(C, e[v], e[a]), role))
            for v in idx for a in block]))
    rep.add(zero_check("T(X, Y) = 0", [
        (lab(a, b), torsion(C, e[a], e[b]))
        for a in S.frame.block("F") for b in S.frame.block("G")]))
    return rep


def lemma_a1_flags(C: FrameConnection, S: SymplecticStructure, J: EndoField, g: MetricField):
    """``(nabla g = 0, nabla J = 0)`` for frame-basis ``J`` and ``g``."""
    e = S.e
    idx = range(2 * S.n)
    metric = all(covariant_derivative_metric(C, g, e[v], e[a], e[b]).is_zero()
                 for v in idx for a in idx for b in idx if a <= b)
    parallel = all(covariant_derivative_endo(C, J, e[v], e[w]).is_zero()
                   for v in idx for w in idx)
    return metric, parallel


def check_lemma_a1(S: SymplecticStructure, J=None, g=None) -> AxiomReport:
    """``nabla g = 0`` and ``nabla J = 0`` must agree for the bi-Lagrangian connection.

    ``J`` and ``g`` default to the ones stored on ``S`` (parent basis).
    """
    J = S.to_frame_endo(J if J is not None else S.J)
    g = S.to_frame_metric(g if g is not None else S.g)
    metric, parallel = lemma_a1_flags(S.connection, S, J, g)
    rep = AxiomReport("nabla g = 0 iff nabla J = 0")
    rep.flags.update({"nabla g = 0": metric, "nabla J = 0": parallel})
    rep.add(bool_check("nabla g = 0 <=> nabla J = 0", metric == parallel,
                       f"nabla g = 0 is {metric}, nabla J = 0 is {parallel}"))
    return rep


def sample_points(chart, values=(Fraction(0), Fraction(1), Fraction(-1, 2), Fraction(3)),
                  limit: int = 64):
    """Deterministic rational sample points on a coordinate chart."""
    grid = product(values, repeat=len(chart.coords))
    return [dict(zip(chart.coords, p)) for p in islice(grid, limit)]


def positive_definite_at(g: MetricField, points) -> tuple:
    """``(ok, witness)``: leading principal minors positive at every point."""
    m = [list(r) for r in g.matrix]
    minors = [det([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]
    for p in points:
        for k, d in enumerate(minors, 1):
            try:
                val = d.evaluate(p)
            except PoleError:
                continue
            if val <= 0:
                return False, f"minor {k} = {val} at {p}"
    return True, None


def kahler_from_flat_bilagrangian(S: SymplecticStructure):
    """Build ``(J, g)`` from a flat bi-Lagrangian Darboux frame.

    The frame must be parallel (all bi-Lagrangian coefficients zero), which
    is what coordinate fields of a Darboux chart give.  Returns
    ``(J, g, report)`` with ``J`` and ``g`` on the adapted frame.
    """
    C = S.connection
    e = S.e
    n = S.n
    idx = range(2 * n)
    for a, b, c in product(idx, repeat=3):
        if a < b and not curvature(C, e[a], e[b], e[c]).is_zero():
            raise FlatnessError(f"bi-Lagrangian curvature R{_labeller(S)(a, b, c)} is not zero")
    half = S.chart.const(Fraction(-1, 2))
    for i in range(n):
        for j in range(n):
            want = half if i == j else S.chart.zero()
            if S.w(e[i], e[n + j]) != want:
                raise DarbouxError(f"omega({S.frame.names[i]}, {S.frame.names[n + j]}) "
                                   f"= {S.w(e[i], e[n + j])}, expected {want}")
    # J is only parallel when built on a parallel frame
    if not C.is_zero():
        first = next(iter(C.table().items()))
        raise DarbouxError(f"adapted frame is not parallel: {first[0]} = {first[1]}")
    # F block holds Y_i, G block holds X_i: J Y_i = X_i, J X_i = -Y_i
    cols = [e[n + i] for i in range(n)] + [-e[i] for i in range(n)]
    J = EndoField.from_columns(S.fbasis, cols)
    g = MetricField(S.fbasis, [[-S.w(e[a], J(e[b])) for b in idx] for a in idx])

    rep = AxiomReport("Kaehler structure from a flat bi-Lagrangian frame")
    rep.add(zero_check("J^2 = -I", [(_labeller(S)(a), J(J(e[a])) + e[a]) for a in idx]))
    rep.add(zero_check("omega(JV, JW) = omega(V, W)", [
        (_labeller(S)(a, b), S.w(J(e[a]), J(e[b])) - S.w(e[a], e[b]))
        for a in idx for b in idx if a < b]))
    rep.add(zero_check("g symmetric", [(_labeller(S)(a, b), g.matrix[a][b] - g.matrix[b][a])
                                       for a in idx for b in idx if a < b]))
    ok, witness = positive_definite_at(g, sample_points(S.chart))
    rep.add(bool_check("g positive definite at sample points", ok, witness))
    metric, parallel = lemma_a1_flags(C, S, J, g)
    rep.flags.update({"nabla g = 0": metric, "nabla J = 0": parallel})
    rep.add(bool_check("nabla J = 0", parallel, "nabla J has a nonzero component"))
    rep.add(bool_check("nabla g = 0", metric, "nabla g has a nonzero component"))
    rep.add(bool_check("nabla g = 0 <=> nabla J = 0", metric == parallel,
                       f"nabla g = 0 is {metric}, nabla J = 0 is {parallel}"))
    lc = FrameConnection(S.fbasis, levi_civita_table(S.fbasis, g), "levi-civita")
    D = difference_tensor(C, lc)
    rep.add(zero_check("bi-Lagrangian = Levi-Civita",
                       [(_labeller(S)(i, j), v) for (i, j), v in D.items()]))
    return J, g, rep
