import pytest

from conftest import entry
from contactkit.reports import FAIL, PASS, SKIP, AxiomReport, InconsistencyError, bool_check
from contactkit.theorems import (TYPO_NOTE, assert_consistent, check_bilegendrian_axioms,
                                 check_coincidence_theorem, check_connection_identities,
                                 check_metric_equivalences, check_tanno_axioms,
                                 check_tilde_theorem, coincidence_flags, metric_conditions)

CONTACT = [("r2n1", 1), ("r2n1", 2), ("s3",), ("kappa-mu", 3), ("darboux", 1), ("darboux", 2),
           ("perturbed-r3", "x")]
ids = lambda k: "-".join(map(str, k))  # noqa: E731

TANNO_III = "(iii) T(xi, phi V) = -phi T(xi, V)"


def S(*key):
    return entry(*key).structure


class TestTanno:
    def test_s3_bilegendrian_fails_only_iii(self):
        G = S("s3").geometry()
        rep = check_tanno_axioms(G.bi_legendrian, G)
        assert rep.failed() == [TANNO_III]
        assert rep[TANNO_III].witness == (
            "V=X: T(xi, phi V) = 2*X; -phi T(xi, V) = -2*X | "
            "V=Y: T(xi, phi V) = 2*Y; -phi T(xi, V) = -2*Y")

    def test_kappa_mu_bilegendrian_witness(self):
        G = S("kappa-mu", 3).geometry()
        rep = check_tanno_axioms(G.bi_legendrian, G)
        assert TANNO_III in rep.failed()
        assert rep[TANNO_III].witness.startswith("V=X1: T(xi, phi V) = -2*X1; -phi T(xi, V) = 0")

    @pytest.mark.parametrize("key", CONTACT, ids=ids)
    def test_tanaka_webster_always_passes(self, key):
        G = S(*key).geometry()
        assert check_tanno_axioms(G.tanaka_webster, G).passed

    def test_levi_civita_fails(self):
        G = S("r2n1", 1).geometry()
        assert not check_tanno_axioms(G.levi_civita, G).passed


class TestUniqueness:
    @pytest.mark.parametrize("key", [("r2n1", 1), ("r2n1", 2), ("darboux", 1), ("darboux", 2)], ids=ids)
    def test_connection_passing_both_is_both(self, key):
        G = S(*key).geometry()
        for C in (G.levi_civita, G.tanaka_webster, G.tilde, G.bi_legendrian):
            if check_tanno_axioms(C, G).passed and check_bilegendrian_axioms(C, G).passed:
                assert C == G.tanaka_webster
                assert C == G.bi_legendrian

    def test_reeb_self_derivative_pinned(self):
        # D(xi, xi) = c xi is the one direction the torsion/parallelism list leaves open
        from contactkit.connections import FrameConnection
        G = S("r2n1", 1).geometry()
        gamma = [[list(col) for col in row] for row in G.bi_legendrian.gamma]
        gamma[2][2][2] = G.chart.coord("z")
        rep = check_bilegendrian_axioms(FrameConnection(G.basis, gamma, "shifted"), G)
        assert rep.failed() == ["nabla_xi xi = 0"]


class TestMetricEquivalences:
    @pytest.mark.parametrize("key", [("r2n1", 1), ("r2n1", 2), ("s3",), ("kappa-mu", 3)], ids=ids)
    def test_all_true(self, key):
        conds = metric_conditions(S(*key))
        assert all(conds.values())
        assert check_metric_equivalences(S(*key)).passed

    def test_perturbed_all_false(self):
        conds = metric_conditions(S("perturbed-r3", "x"))
        assert set(conds) == {"(i)", "(ii)", "(iii)", "(iv)", "(v)"}
        assert not any(conds.values())
        assert check_metric_equivalences(S("perturbed-r3", "x")).passed

    def test_v_only_when_integrable(self):
        from contactkit.contact import is_integrable, legendrian_check
        from contactkit.frames import Distribution
        from contactkit.parser import parse_scalar
        from contactkit.tensors import VectorField
        R5 = S("r2n1", 2)
        B = R5.basis

        def v(*exprs):
            return VectorField(B, [parse_scalar(x, B.chart) for x in exprs])

        # d/dy1 and d/dy2 + y1 (d/dx2 + y2 d/dz): Legendrian, bracket leaves the span
        L = Distribution([v("0", "0", "1", "0", "0"), v("0", "y1", "0", "1", "y1*y2")], "L")
        assert legendrian_check(R5, L) and not is_integrable(L)
        conds = metric_conditions(R5, L)
        assert "(v)" not in conds
        assert set(conds.values()) == {False}
        rep = check_metric_equivalences(R5, L)
        assert rep.passed and rep.notes

    def test_flags_reported(self):
        rep = check_metric_equivalences(S("s3"))
        assert rep.flags["(i) nabla g = 0"] is True


class TestCoincidence:
    def test_r2n1(self):
        rep = check_coincidence_theorem(S("r2n1", 1))
        assert rep.flags["nabla = *nabla"] is True
        assert rep.passed
        assert all(c.verdict == PASS for c in rep.checks)

    def test_s3_no_contradiction(self):
        rep = check_coincidence_theorem(S("s3"))
        assert rep.flags["flat(L)"] is False
        assert rep.flags["nabla = *nabla"] is False
        assert rep.passed
        assert rep.checks[0].verdict == SKIP

    @pytest.mark.parametrize("n", [1, 2])
    def test_darboux(self, n):
        rep = check_coincidence_theorem(S("darboux", n))
        assert rep.flags["nabla = *nabla"] is True
        assert rep.flags["integrable(Q)"] is True
        assert rep.checks[1].verdict == PASS  # the implication's hypotheses hold here

    @pytest.mark.parametrize("key", CONTACT, ids=ids)
    def test_never_fails(self, key):
        assert_consistent(check_coincidence_theorem(S(*key)))

    def test_flag_keys(self):
        assert set(coincidence_flags(S("s3"))) == {
            "flat(L)", "flat(Q)", "nabla g = 0", "integrable(L)", "integrable(Q)", "sasakian",
            "k-contact", "nabla = *nabla", "*nabla L in L"}


class TestTilde:
    @pytest.mark.parametrize("key", CONTACT, ids=ids)
    def test_theorem(self, key):
        rep = check_tilde_theorem(S(*key))
        assert rep.passed, rep.failed()
        assert TYPO_NOTE in rep.notes

    def test_kappa_mu_negative_case(self):
        rep = check_tilde_theorem(S("kappa-mu", 3))
        assert rep.flags == {"k-contact": False, "nabla~ g = 0": False,
                             "sasakian": False, "nabla~ phi = 0": False}
        assert rep["Sasakian => nabla~ = *nabla"].verdict == SKIP


class TestIdentities:
    @pytest.mark.parametrize("key", CONTACT, ids=ids)
    def test_identities(self, key):
        rep = check_connection_identities(S(*key))
        assert rep.passed, rep.failed()

    def test_curvature_clause_runs_on_flat_entries(self):
        rep = check_connection_identities(S("r2n1", 2))
        assert all(c.verdict == PASS for c in rep.checks)


class TestReports:
    def test_assert_consistent_raises(self):
        rep = AxiomReport("t", [bool_check("x", False, "w")])
        with pytest.raises(InconsistencyError):
            assert_consistent(rep)

    def test_skip_counts_as_pass(self):
        rep = check_coincidence_theorem(S("s3"))
        assert any(c.verdict == SKIP for c in rep.checks)
        assert not any(c.verdict == FAIL for c in rep.checks)
        assert rep.passed

    def test_to_dict_sorted_flags(self):
        d = check_coincidence_theorem(S("s3")).to_dict()
        assert list(d["hypothesis_flags"]) == sorted(d["hypothesis_flags"])
