import copy
import json

import pytest

from conftest import entry
from contactkit.cli import run_command
from contactkit.manifest import (SCHEMA_VERSION, ManifestError, dumps, export_entry,
                                 export_structure, import_manifest, load, round_trip)

ROUND = [("r2n1", 1), ("r2n1", 2), ("s3",), ("kappa-mu", 3), ("darboux", 1),
         ("perturbed-r3", "x"), ("r2n", 1), ("r2-perturbed", "1 + x1^2")]
ids = lambda k: "-".join(map(str, k))  # noqa: E731


def doc_of(*key):
    return json.loads(dumps(export_entry(entry(*key))))


@pytest.mark.parametrize("key", ROUND, ids=ids)
def test_round_trip_verdicts_identical(key, tmp_path):
    e = entry(*key)
    path = tmp_path / "m.json"
    path.write_text(dumps(export_entry(e)))
    for command in ("validate", "check"):
        a, code_a = run_command(command, catalog=e.label)
        b, code_b = run_command(command, manifest=str(path))
        assert code_a == code_b
        assert [(c["name"], c["verdict"], c.get("witness")) for c in a["checks"]] == \
            [(c["name"], c["verdict"], c.get("witness")) for c in b["checks"]]


@pytest.mark.parametrize("key", ROUND, ids=ids)
def test_reexport_is_byte_identical(key):
    doc = doc_of(*key)
    again = export_structure(import_manifest(doc), name=doc["name"], source=doc.get("source"))
    assert dumps(again) == dumps(doc)


def test_round_trip_helper():
    S = entry("s3").structure
    T = round_trip(S)
    assert T.chart == S.chart
    assert T.chart.relation_text() == "x1^2 + x2^2 + x3^2 + x4^2 - 1"


def test_lie_frame_shape():
    doc = doc_of("kappa-mu", 3)
    assert doc["chart"]["backend"] == "lie-frame"
    assert {"pair": ["X1", "Y1"], "value": {"X2": "-2", "xi": "2"}} in doc["chart"]["brackets"]
    assert doc["schema_version"] == SCHEMA_VERSION


def test_requested_checks_recorded():
    doc = export_entry(entry("s3"), checks=["tanno"])
    assert doc["checks"] == ["tanno"]


@pytest.mark.parametrize("mutate,path", [
    (lambda d: d.pop("chart"), "chart"),
    (lambda d: d.__setitem__("schema_version", 99), "schema_version"),
    (lambda d: d["structure"].pop("phi"), "structure.phi"),
    (lambda d: d["structure"]["g"][1].__setitem__(0, "x +"), "structure.g[1][0]"),
    (lambda d: d["structure"]["eta"].pop(), "structure.eta"),
    (lambda d: d["structure"]["xi"].__setitem__(0, "w"), "structure.xi[0]"),
    (lambda d: d["distributions"]["L"]["vectors"][0].__setitem__(1, None), "distributions.L.vectors[0][1]"),
    (lambda d: d["distributions"]["L"].__setitem__("labels", []), "distributions.L.labels"),
    (lambda d: d["chart"].__setitem__("backend", "torus"), "chart.backend"),
    (lambda d: d.__setitem__("kind", "riemannian"), "kind"),
])
def test_schema_errors_are_path_reported(mutate, path):
    doc = doc_of("r2n1", 1)
    bad = copy.deepcopy(doc)
    mutate(bad)
    with pytest.raises(ManifestError) as err:
        import_manifest(bad)
    assert err.value.path == path


def test_lie_frame_errors():
    doc = doc_of("kappa-mu", 3)
    doc["chart"]["brackets"][0]["pair"] = ["X1", "Q9"]
    with pytest.raises(ManifestError) as err:
        import_manifest(doc)
    assert err.value.path == "chart.brackets[0].pair"


def test_invalid_json(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ManifestError, match="invalid JSON"):
        load(p)


def test_numbers_accepted_for_expressions():
    doc = doc_of("r2n1", 1)
    doc["structure"]["xi"] = [0, 0, 1]
    assert import_manifest(doc).xi.comps[2] == 1
