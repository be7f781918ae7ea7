"""Built-in structures with expected-property tables.

Each entry carries the structure, its declared distributions and a table of
expected properties.  Every expected value has a provenance tag:

``published``
    stated for this example in the source literature,
``derived``
    computed here and cross-checked by an independent oracle in the tests,
``trivial``
    immediate from the definitions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .contact import (ContactMetricStructure, classify_distribution, is_integrable,
                      is_k_contact, is_sasakian, validate_contact_metric)
from .frames import Distribution
from .parser import parse_scalar
from .scalar import Chart
from .symplectic import (SymplecticStructure, bi_lagrangian, check_hess_axioms,
                         check_lemma_a1, kahler_from_flat_bilagrangian, lagrangian_check,
                         validate_symplectic)
from .tensors import (CoordinateBasis, EndoField, LieBasis, MetricField, OneForm, TwoForm,
                      VectorField, coordinate_form, wedge)

PUBLISHED, DERIVED, TRIVIAL = "published", "derived", "trivial"


class UnknownEntryError(KeyError):
    """No catalog entry with that identifier."""


class JacobiError(ValueError):
    """A structure-constant table violates the Jacobi identity."""

    def __init__(self, triple, names):
        self.triple = triple
        super().__init__("Jacobi identity fails on (" + ", ".join(names[i] for i in triple) + ")")


@dataclass(frozen=True)
class Expected:
    value: bool
    tag: str
    note: str | None = None


@dataclass
class CatalogEntry:
    id: str
    params: dict
    structure: object
    distributions: dict
    expected: dict
    notes: list = field(default_factory=list)

    @property
    def kind(self) -> str:
        return "symplectic" if isinstance(self.structure, SymplecticStructure) else "contact"

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        args = ",".join(f"{k}={_fmt_param(v)}" for k, v in self.params.items())
        return f"{self.id}({args})"


def _fmt_param(v):
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


# ---------------------------------------------------------------------------
# helpers

def _darboux_chart(n: int) -> Chart:
    return Chart([f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)] + ["z"])


def _darboux_tensors(chart: Chart, n: int, scale: Fraction):
    """``eta = dz - sum y dx``, ``xi = d/dz``, the block ``phi`` and
    ``g = eta (x) eta + scale * sum(dx^2 + dy^2)``."""
    B = CoordinateBasis(chart)
    N = 2 * n + 1
    zero, one = chart.zero(), chart.one()
    ys = [chart.coord(c) for c in chart.coords[n:2 * n]]
    eta = OneForm(B, [-y for y in ys] + [zero] * n + [one])
    xi = VectorField.basis_vector(B, N - 1)
    phi = [[zero] * N for _ in range(N)]
    for i in range(n):
        phi[i][n + i] = one
        phi[n + i][i] = -one
        phi[N - 1][n + i] = ys[i]
    g = [[eta.comps[a] * eta.comps[b] for b in range(N)] for a in range(N)]
    for i in range(2 * n):
        g[i][i] = g[i][i] + chart.const(scale)
    return B, eta, xi, EndoField(B, phi), MetricField(B, g)


def _vec(B, exprs):
    return VectorField(B, [parse_scalar(e, B.chart) for e in exprs])


# ---------------------------------------------------------------------------
# contact entries

def make_standard_sasakian(n: int = 1) -> CatalogEntry:
    """The standard Sasakian structure on R^{2n+1} with ``L = span{d/dy_i}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    chart = _darboux_chart(n)
    B, eta, xi, phi, g = _darboux_tensors(chart, n, Fraction(1, 2))
    L = Distribution([VectorField.basis_vector(B, n + i) for i in range(n)], "L",
                     [f"X{i}" for i in range(1, n + 1)])
    Q = Distribution([phi(v) for v in L.vectors], "Q", [f"Y{i}" for i in range(1, n + 1)])
    S = ContactMetricStructure(B, eta, xi, phi, g, L, Q, name=f"r2n1(n={n})")
    P = PUBLISHED
    expected = {
        "valid": Expected(True, P), "sasakian": Expected(True, P),
        "k-contact": Expected(True, P), "flat(L)": Expected(True, P),
        "flat(Q)": Expected(True, P), "integrable(L)": Expected(True, P),
        "integrable(Q)": Expected(True, P), "nabla = *nabla": Expected(True, P),
        "nabla g = 0": Expected(True, P), "nabla phi = 0": Expected(True, P),
        "bl curvature = 0": Expected(True, P), "bl coefficients = 0": Expected(True, P),
        "tanno(bl)": Expected(True, P),
    }
    return CatalogEntry("r2n1", {"n": n}, S, {"L": L, "Q": Q}, expected)


def make_s3() -> CatalogEntry:
    """The unit sphere in R^4 with its standard Sasakian structure."""
    chart = Chart(["x1", "x2", "x3", "x4"], relation="x1^2 + x2^2 + x3^2 + x4^2 - 1")
    B = CoordinateBasis(chart)
    eta = OneForm(B, [parse_scalar(e, chart) for e in ("x3", "x4", "-x1", "-x2")])
    xi = _vec(B, ("x3", "x4", "-x1", "-x2"))
    rows = [[0, 0, -1, 0], [0, 0, 0, -1], [1, 0, 0, 0], [0, 1, 0, 0]]
    phi = EndoField(B, [[chart.const(v) for v in r] for r in rows])
    g = MetricField(B, [[chart.const(int(i == j)) for j in range(4)] for i in range(4)])
    L = Distribution([_vec(B, ("x2", "-x1", "-x4", "x3"))], "L", ["X"])
    Q = Distribution([_vec(B, ("x4", "-x3", "x2", "-x1"))], "Q", ["Y"])
    S = ContactMetricStructure(B, eta, xi, phi, g, L, Q, name="s3")
    P, D, T = PUBLISHED, DERIVED, TRIVIAL
    expected = {
        "valid": Expected(True, P), "sasakian": Expected(True, P),
        "k-contact": Expected(True, D, "Sasakian implies K-contact"),
        "flat(L)": Expected(False, P), "flat(Q)": Expected(False, P),
        "integrable(L)": Expected(True, T, "rank one"),
        "integrable(Q)": Expected(True, T, "rank one"),
        "nabla = *nabla": Expected(False, P), "nabla phi = 0": Expected(True, P),
        "nabla g = 0": Expected(True, P), "bl coefficients = 0": Expected(True, P),
        "tanno(bl)": Expected(False, P),
    }
    return CatalogEntry("s3", {}, S, {"L": L, "Q": Q}, expected)


def kappa_mu_table(n: int) -> dict:
    """Brackets of the (kappa, mu) = (0, 4) Lie algebra as printed.

    Frame order ``X_1..X_n, Y_1..Y_n, xi`` with indices ``X_i -> i - 1``,
    ``Y_i -> n + i - 1``, ``xi -> 2n``.
    """
    X = lambda i: i - 1
    Y = lambda i: n + i - 1
    r = 2 * n
    t = {}

    def put(a, b, coeffs):
        t[(a, b)] = coeffs

    rng = range(1, n + 1)
    for j in rng:
        if j != 2:
            put(Y(2), Y(j), {Y(j): 2})
    put(X(1), Y(1), {r: 2, X(2): -2})
    for h in range(3, n + 1):
        put(X(h), Y(h), {r: 2, X(2): -2})
    for j in rng:
        if j != 2:
            put(X(2), Y(j), {X(j): 2})
    put(X(2), Y(2), {r: 2})
    for j in rng:
        put(r, Y(j), {X(j): 2})
    return t


def make_kappa_mu_group(n: int = 3) -> CatalogEntry:
    """Left-invariant structure on the (kappa, mu) = (0, 4) Lie group."""
    if n < 3:
        raise ValueError("the bracket table needs n >= 3")
    names = [f"X{i}" for i in range(1, n + 1)] + [f"Y{i}" for i in range(1, n + 1)] + ["xi"]
    B = LieBasis(names, kappa_mu_table(n))
    notes = []
    bad = B.jacobi_failures()
    if bad:
        notes.append("as-printed: Jacobi identity fails on "
                     + ", ".join("(" + ", ".join(names[i] for i in t) + ")" for t in bad))
    chart = B.chart
    N = 2 * n + 1
    zero, one = chart.zero(), chart.one()
    e = [VectorField.basis_vector(B, i) for i in range(N)]
    cols = [e[n + i] for i in range(n)] + [-e[i] for i in range(n)] + [VectorField.zero(B)]
    phi = EndoField.from_columns(B, cols)
    g = MetricField(B, [[one if i == j else zero for j in range(N)] for i in range(N)])
    eta = OneForm(B, [zero] * (N - 1) + [one])
    L = Distribution(e[:n], "L", names[:n])
    Q = Distribution(e[n:2 * n], "Q", names[n:2 * n])
    S = ContactMetricStructure(B, eta, e[-1], phi, g, L, Q, name=f"kappa-mu(n={n})")
    P, D = PUBLISHED, DERIVED
    expected = {
        "valid": Expected(True, P), "sasakian": Expected(False, P),
        "k-contact": Expected(False, P), "flat(L)": Expected(True, D),
        "flat(Q)": Expected(False, D), "integrable(L)": Expected(True, P),
        "integrable(Q)": Expected(True, P), "nabla g = 0": Expected(True, P),
        "nabla phi = 0": Expected(True, P), "nabla = *nabla": Expected(False, P),
        "tanno(bl)": Expected(False, P), "jacobi": Expected(True, D),
    }
    return CatalogEntry("kappa-mu", {"n": n}, S, {"L": L, "Q": Q}, expected, notes)


def make_darboux_sasakian(n: int = 1, as_printed: bool = False) -> CatalogEntry:
    """Darboux chart of a flat Legendrian foliation ``L = span{d/dy_i}``.

    The default metric is ``eta (x) eta + 1/2 sum(dx^2 + dy^2)``, which is
    associated to ``eta`` under the half-weight wedge convention.  With
    ``as_printed=True`` the block matrix without the factor 1/2 is used.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    chart = _darboux_chart(n)
    scale = Fraction(1) if as_printed else Fraction(1, 2)
    B, eta, xi, phi, g = _darboux_tensors(chart, n, scale)
    L = Distribution([VectorField.basis_vector(B, n + i) for i in range(n)], "L",
                     [f"Y{i}" for i in range(1, n + 1)])
    Q = Distribution([phi(v) for v in L.vectors], "Q", [f"X{i}" for i in range(1, n + 1)])
    S = ContactMetricStructure(B, eta, xi, phi, g, L, Q, name=f"darboux(n={n})")
    P, D = PUBLISHED, DERIVED
    notes = []
    if as_printed:
        notes.append("as-printed metric: not associated to eta under the half-weight convention")
        expected = {"valid": Expected(False, D)}
    else:
        expected = {
            "valid": Expected(True, D), "sasakian": Expected(True, P),
            "flat(L)": Expected(True, P), "flat(Q)": Expected(True, P),
            "integrable(L)": Expected(True, P), "integrable(Q)": Expected(True, P),
            "nabla = *nabla": Expected(True, P), "nabla phi = 0": Expected(True, P),
            "nabla g = 0": Expected(True, P),
        }
    return CatalogEntry("darboux", {"n": n, "as_printed": as_printed}, S, {"L": L, "Q": Q},
                        expected, notes)


def make_perturbed_r3(f: str = "x") -> CatalogEntry:
    """Standard R^3 with ``L' = span{d/dy + f (d/dx + y d/dz)}`` and ``Q' = phi L'``."""
    chart = Chart(["x", "y", "z"])
    fs = parse_scalar(f, chart)
    B, eta, xi, phi, g = _darboux_tensors(chart, 1, Fraction(1, 2))
    y = chart.coord("y")
    X = VectorField(B, [fs, chart.one(), fs * y])
    L = Distribution([X], "L", ["X"])
    Q = Distribution([phi(X)], "Q", ["Y"])
    S = ContactMetricStructure(B, eta, xi, phi, g, L, Q, name=f"perturbed-r3(f={fs})")
    D = DERIVED
    expected = {"valid": Expected(True, D), "legendrian(L)": Expected(True, D),
                "metric conditions agree": Expected(True, PUBLISHED)}
    if fs.is_zero():
        expected["nabla g = 0"] = Expected(True, TRIVIAL, "reduces to r2n1(n=1)")
    elif str(fs) == "x":
        expected["nabla g = 0"] = Expected(False, D)
        expected["nabla phi = 0"] = Expected(False, D)
    return CatalogEntry("perturbed-r3", {"f": str(fs)}, S, {"L": L, "Q": Q}, expected)


# ---------------------------------------------------------------------------
# symplectic entries

def _symplectic_chart(n: int) -> Chart:
    return Chart([f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)])


def _standard_omega(B, n):
    acc = None
    for i in range(1, n + 1):
        term = wedge(coordinate_form(B, f"x{i}"), coordinate_form(B, f"y{i}"))
        acc = term if acc is None else acc + term
    return acc


def make_standard_symplectic(n: int = 1) -> CatalogEntry:
    """R^{2n} with ``omega = sum dx ^ dy``, ``F = span{d/dy}``, ``G = span{d/dx}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    chart = _symplectic_chart(n)
    B = CoordinateBasis(chart)
    F = Distribution([VectorField.basis_vector(B, n + i) for i in range(n)], "F",
                     [f"Y{i}" for i in range(1, n + 1)])
    G = Distribution([VectorField.basis_vector(B, i) for i in range(n)], "G",
                     [f"X{i}" for i in range(1, n + 1)])
    S = SymplecticStructure(B, _standard_omega(B, n), F, G, name=f"r2n(n={n})")
    D, T = DERIVED, TRIVIAL
    expected = {
        "valid": Expected(True, T), "lagrangian(F)": Expected(True, T),
        "lagrangian(G)": Expected(True, T), "hess axioms": Expected(True, D),
        "bi-lagrangian coefficients = 0": Expected(True, D), "kaehler": Expected(True, D),
        "nabla g = 0 <=> nabla J = 0": Expected(True, PUBLISHED),
    }
    return CatalogEntry("r2n", {"n": n}, S, {"F": F, "G": G}, expected)


def make_perturbed_symplectic(k: str = "1 + x1^2") -> CatalogEntry:
    """R^2 with a Hermitian pair that is not parallel: ``J Y = k X``, ``J X = -Y / k``."""
    chart = _symplectic_chart(1)
    B = CoordinateBasis(chart)
    ks = parse_scalar(k, chart)
    if ks.is_zero():
        raise ValueError("k must not vanish identically")
    zero = chart.zero()
    # columns: J(d/dx1) = -(1/k) d/dy1, J(d/dy1) = k d/dx1
    J = EndoField(B, [[zero, ks], [-(1 / ks), zero]])
    omega = _standard_omega(B, 1)
    e = [VectorField.basis_vector(B, i) for i in range(2)]
    g = MetricField(B, [[-omega(e[a], J(e[b])) for b in range(2)] for a in range(2)])
    F = Distribution([e[1]], "F", ["Y1"])
    G = Distribution([e[0]], "G", ["X1"])
    S = SymplecticStructure(B, omega, F, G, J=J, g=g, name=f"r2-perturbed(k={ks})")
    D = DERIVED
    expected = {"valid": Expected(True, TRIVIAL), "hess axioms": Expected(True, D),
                "nabla g = 0 <=> nabla J = 0": Expected(True, PUBLISHED)}
    if not ks.is_constant():
        expected["nabla g = 0"] = Expected(False, D)
        expected["nabla J = 0"] = Expected(False, D)
    return CatalogEntry("r2-perturbed", {"k": str(ks)}, S, {"F": F, "G": G}, expected)


# ---------------------------------------------------------------------------
# observed properties

def _contact_property(entry: CatalogEntry, name: str) -> bool:
    from .connections import covariant_derivative_tensor, curvature
    from .theorems import check_metric_equivalences, check_tanno_axioms
    S = entry.structure
    G = S.geometry()
    if name == "valid":
        return validate_contact_metric(S).passed
    if name == "sasakian":
        return is_sasakian(S)
    if name == "k-contact":
        return is_k_contact(S)
    if name in ("flat(L)", "flat(Q)"):
        return classify_distribution(S, G.Ldist if name == "flat(L)" else G.Qdist).flat
    if name in ("integrable(L)", "integrable(Q)"):
        return is_integrable(G.Ldist if name == "integrable(L)" else G.Qdist)
    if name == "legendrian(L)":
        from .contact import legendrian_check
        return legendrian_check(S, G.Ldist)
    C = G.bi_legendrian
    if name == "nabla = *nabla":
        return C == G.tanaka_webster
    if name == "nabla g = 0":
        return all(v.is_zero() for v in covariant_derivative_tensor(C, G.g).values())
    if name == "nabla phi = 0":
        return all(v.is_zero() for v in covariant_derivative_tensor(C, G.phi).values())
    if name == "bl coefficients = 0":
        return C.is_zero()
    if name == "bl curvature = 0":
        return all(curvature(C, G.e[a], G.e[b], G.e[c]).is_zero()
                   for a in range(G.dim) for b in range(a + 1, G.dim) for c in range(G.dim))
    if name == "tanno(bl)":
        return check_tanno_axioms(C, G).passed
    if name == "metric conditions agree":
        return check_metric_equivalences(S).passed
    if name == "jacobi":
        return not S.basis.jacobi_failures()
    raise KeyError(name)


def _symplectic_property(entry: CatalogEntry, name: str) -> bool:
    S = entry.structure
    if name == "valid":
        return validate_symplectic(S).passed
    if name in ("lagrangian(F)", "lagrangian(G)"):
        return lagrangian_check(S, S.F if name == "lagrangian(F)" else S.G)
    if name == "hess axioms":
        return check_hess_axioms(S.connection, S).passed
    if name == "bi-lagrangian coefficients = 0":
        return bi_lagrangian(S).is_zero()
    if name == "kaehler":
        return kahler_from_flat_bilagrangian(S)[2].passed
    if name == "nabla g = 0 <=> nabla J = 0":
        if S.J is None:
            return kahler_from_flat_bilagrangian(S)[2]["nabla g = 0 <=> nabla J = 0"].passed
        return check_lemma_a1(S).passed
    if name in ("nabla g = 0", "nabla J = 0"):
        return check_lemma_a1(S).flags[name]
    raise KeyError(name)


def observed_property(entry: CatalogEntry, name: str) -> bool:
    if entry.kind == "symplectic":
        return _symplectic_property(entry, name)
    return _contact_property(entry, name)


def observed_properties(entry: CatalogEntry) -> dict:
    return {name: observed_property(entry, name) for name in entry.expected}


# ---------------------------------------------------------------------------
# registry

CATALOG = {
    "r2n1": make_standard_sasakian,
    "s3": make_s3,
    "kappa-mu": make_kappa_mu_group,
    "darboux": make_darboux_sasakian,
    "perturbed-r3": make_perturbed_r3,
    "r2n": make_standard_symplectic,
    "r2-perturbed": make_perturbed_symplectic,
}

_ID = re.compile(r"^\s*([a-z0-9][a-z0-9-]*)\s*(?:\((.*)\)|:(.*))?\s*$", re.I)


def _param_value(text: str):
    t = text.strip()
    if t.lower() in ("true", "false"):
        return t.lower() == "true"
    if re.fullmatch(r"[+-]?\d+", t):
        return int(t)
    return t


def parse_entry_id(text: str):
    """``"id"``, ``"id:n=2"`` or ``"id(n=2, as_printed=true)"`` -> ``(id, params)``."""
    m = _ID.match(text)
    if not m:
        raise UnknownEntryError(text)
    name = m.group(1).lower()
    raw = m.group(2) if m.group(2) is not None else m.group(3)
    params = {}
    if raw and raw.strip():
        for part in raw.split(","):
            if "=" not in part:
                raise ValueError(f"catalog parameter {part.strip()!r} is not key=value")
            k, v = part.split("=", 1)
            params[k.strip()] = _param_value(v)
    if name not in CATALOG:
        raise UnknownEntryError(name)
    return name, params


def load_entry(text: str) -> CatalogEntry:
    name, params = parse_entry_id(text)
    try:
        return CATALOG[name](**params)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {name}: {exc}") from None


def default_entries() -> list:
    """The entries exercised by the acceptance suite."""
    return [make_standard_sasakian(1), make_standard_sasakian(2), make_s3(),
            make_kappa_mu_group(3), make_darboux_sasakian(1), make_perturbed_r3("x"),
            make_standard_symplectic(1), make_perturbed_symplectic()]
