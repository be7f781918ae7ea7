from fractions import Fraction

import pytest

from contactkit.frames import Frame, MissingRolesError, check_tangency, frame_expand, project
from contactkit.parser import parse_scalar
from contactkit.scalar import Chart
from contactkit.tensors import (BasisMismatchError, CoordinateBasis, LieBasis, MetricField, OneForm,
                                VectorField, apply_form, coordinate_field, coordinate_form,
                                differential, exterior_derivative, lie_bracket, lie_derivative,
                                wedge)


def vec(B, *exprs):
    return VectorField(B, [parse_scalar(e, B.chart) for e in exprs])


@pytest.fixture(scope="module")
def R3():
    return CoordinateBasis(Chart(["x", "y", "z"]))


def test_coordinate_fields_commute(R3):
    assert lie_bracket(coordinate_field(R3, "x"), coordinate_field(R3, "y")).is_zero()


def test_r3_bracket_of_x1_y1(R3):
    # [d/dy, d/dx + y d/dz] = d/dz
    X1, Y1 = vec(R3, "0", "1", "0"), vec(R3, "1", "0", "y")
    assert lie_bracket(X1, Y1) == coordinate_field(R3, "z")


def test_s3_brackets(s3):
    S = s3.structure
    X, Y = S.L.vectors[0], S.Q.vectors[0]
    xi = S.xi
    assert lie_bracket(X, Y) == Fraction(2) * xi
    assert lie_bracket(X, xi) == Fraction(-2) * Y
    assert lie_bracket(Y, xi) == Fraction(2) * X


def test_bracket_basis_mismatch(R3, s3):
    with pytest.raises(BasisMismatchError):
        lie_bracket(coordinate_field(R3, "x"), s3.structure.xi)


def test_eta_of_xi(r3):
    S = r3.structure
    assert apply_form(S.eta, S.xi) == S.chart.one()


def test_deta_xi_vanishes(r3):
    S = r3.structure
    for i in range(3):
        assert apply_form(S.deta, S.xi, VectorField.basis_vector(S.basis, i)).is_zero()


def test_wedge_half_convention(R3):
    w = wedge(coordinate_form(R3, "x"), coordinate_form(R3, "y"))
    assert w(coordinate_field(R3, "x"), coordinate_field(R3, "y")) == Fraction(1, 2)


def test_apply_form_arity(R3):
    with pytest.raises(TypeError):
        apply_form(coordinate_form(R3, "x"))


def test_d_of_dz(R3):
    assert exterior_derivative(coordinate_form(R3, "z")).is_zero()


def test_d_of_contact_form():
    chart = Chart(["x1", "x2", "y1", "y2", "z"])
    B = CoordinateBasis(chart)
    eta = OneForm(B, [parse_scalar(t, chart) for t in ("-y1", "-y2", "0", "0", "1")])
    expected = (wedge(coordinate_form(B, "x1"), coordinate_form(B, "y1"))
                + wedge(coordinate_form(B, "x2"), coordinate_form(B, "y2")))
    assert exterior_derivative(eta) == expected


def test_deta_y_x_is_minus_half_delta():
    from conftest import entry
    G = entry("darboux", 2).structure.geometry()
    # frame order Y1, Y2 (= d/dy_i), X1, X2, xi
    for i in range(2):
        for j in range(2):
            assert G.deta(G.e[i], G.e[2 + j]) == (Fraction(-1, 2) if i == j else 0)


def test_lie_xi_phi_vanishes_on_r3(r3):
    S = r3.structure
    assert lie_derivative(S.xi, S.phi).is_zero()


def test_s3_xi_killing(s3):
    S = s3.structure
    assert lie_derivative(S.xi, S.g).is_zero()


def test_lie_derivative_along_zero(r3):
    S = r3.structure
    assert lie_derivative(VectorField.zero(S.basis), S.g).is_zero()


def test_expand_trivial(R3):
    fr = Frame([coordinate_field(R3, "x"), coordinate_field(R3, "y")])
    assert frame_expand(coordinate_field(R3, "y"), fr) == [R3.chart.zero(), R3.chart.one()]


def test_s3_phi_x_is_y(s3):
    G = s3.structure.geometry()
    assert G.frame.expand(s3.structure.phi(G.frame.vectors[0])) == [0, 1, 0]


def test_r3_dx_expansion(r3):
    S = r3.structure
    G = S.geometry()
    y = S.chart.coord("y1")
    assert G.frame.expand(coordinate_field(S.basis, "x1")) == [0, 1, -y]


def test_project_reeb(r3):
    G = r3.structure.geometry()
    assert G.frame.project(r3.structure.xi, "reeb") == r3.structure.xi


def test_project_s3_bracket(s3):
    G = s3.structure.geometry()
    X, Y = G.frame.vectors[0], G.frame.vectors[1]
    assert project(lie_bracket(s3.structure.xi, X), G.frame, "Q") == Fraction(2) * Y


def test_project_drops_reeb(r3):
    G = r3.structure.geometry()
    X1 = G.frame.vectors[0]
    assert G.frame.project(X1 + r3.structure.xi, "L") == X1


def test_project_needs_roles(R3):
    fr = Frame([coordinate_field(R3, "x")])
    with pytest.raises(MissingRolesError):
        fr.project(coordinate_field(R3, "x"), "L")


def test_tangency(s3):
    S = s3.structure
    assert check_tangency(S.xi)
    assert check_tangency(S.L.vectors[0])
    assert not check_tangency(coordinate_field(S.basis, "x1"))


def test_tangency_needs_relation(R3):
    with pytest.raises(ValueError):
        check_tangency(coordinate_field(R3, "x"))


class TestLieBasis:
    def test_table_matches_brackets(self, kappa_mu):
        B = kappa_mu.structure.basis
        e = [VectorField.basis_vector(B, i) for i in range(B.dim)]
        for (i, j), coeffs in B.table().items():
            br = lie_bracket(e[i], e[j])
            assert [br.comps[k].constant_value() for k in range(B.dim)] == \
                [coeffs.get(k, 0) for k in range(B.dim)]

    def test_derivatives_vanish(self, kappa_mu):
        B = kappa_mu.structure.basis
        assert all(B.derive(i, B.chart.const(Fraction(7, 3))).is_zero() for i in range(B.dim))

    def test_antisymmetry_enforced(self):
        with pytest.raises(ValueError):
            LieBasis(["a", "b"], {(0, 1): {0: 1}, (1, 0): {0: 1}})

    def test_jacobi_failure_detected(self):
        # [a,b] = a, [a,c] = b: the cyclic sum is -b
        B = LieBasis(["a", "b", "c"], {(0, 1): {0: 1}, (0, 2): {1: 1}})
        assert B.jacobi_failures() == [(0, 1, 2)]

    def test_so3_is_lie(self):
        B = LieBasis(["a", "b", "c"], {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}})
        assert B.jacobi_failures() == []


def test_metric_field_symmetric(r3):
    assert r3.structure.g.is_symmetric()
    assert isinstance(r3.structure.g, MetricField)


def test_differential_of_coordinate(R3):
    assert differential(R3.chart.coord("y"), R3) == coordinate_form(R3, "y")
