import json

import pytest

from gerst.catalog import STANDARD, builtin
from gerst.hopf import HopfAxiomError, check_hopf_axioms
from gerst.io import HopfFileError, dumps_hopf, loads_hopf, parse_hopf, write_hopf


@pytest.mark.parametrize("name", STANDARD)
def test_round_trip(name, tmp_path):
    H = builtin(name)
    path = tmp_path / "h.json"
    write_hopf(H, path)
    text = path.read_text()
    G = parse_hopf(path)
    assert G.same_structure(H) and G.name == H.name and G.provenance == H.provenance
    write_hopf(G, path)
    assert path.read_text() == text


def test_canonical_form():
    text = dumps_hopf(builtin("Z2"))
    doc = json.loads(text)
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"
    assert doc["mult"] == ["1", "0", "0", "1", "0", "1", "1", "0"]
    assert doc["comult"] == ["1", "0", "0", "0", "0", "0", "0", "1"]
    assert doc["field"] == {"kind": "prime", "p": 2}


def test_rationals_in_lowest_terms():
    doc = json.loads(dumps_hopf(builtin("dual:S3")))
    assert doc["field"] == {"kind": "rational"}
    assert all("/" not in x or x.split("/")[1] != "1" for x in doc["mult"])


def test_sweedler_export_reimport_passes_axioms():
    H = loads_hopf(dumps_hopf(builtin("sweedler")))
    assert check_hopf_axioms(H).passed


def _doc():
    return json.loads(dumps_hopf(builtin("Z3")))


def test_wrong_length_names_key():
    doc = _doc()
    doc["mult"] = doc["mult"][:-1]
    with pytest.raises(HopfFileError, match="^mult: expected 27 entries, found 26") as exc:
        loads_hopf(json.dumps(doc))
    assert exc.value.key == "mult"


@pytest.mark.parametrize("mutate, key", [
    (lambda d: d.pop("counit"), "counit"),
    (lambda d: d.__setitem__("extra", 1), "extra"),
    (lambda d: d.__setitem__("dim", 0), "dim"),
    (lambda d: d.__setitem__("dim", True), "dim"),
    (lambda d: d.__setitem__("field", {"kind": "prime", "p": 4}), "field"),
    (lambda d: d["unit"].__setitem__(0, 1), "unit"),
    (lambda d: d["antipode"].__setitem__(0, "1/2"), "antipode"),
    (lambda d: d.__setitem__("provenance", 3), "provenance"),
])
def test_malformed_documents(mutate, key):
    doc = _doc()
    mutate(doc)
    with pytest.raises(HopfFileError) as exc:
        loads_hopf(json.dumps(doc))
    assert exc.value.key == key


def test_invalid_json_has_location():
    with pytest.raises(HopfFileError, match="line 1 column"):
        loads_hopf("{")


def test_axiom_failure_rejected_unless_skipped():
    doc = _doc()
    doc["antipode"][0] = "2"
    text = json.dumps(doc)
    with pytest.raises(HopfAxiomError):
        loads_hopf(text)
    H = loads_hopf(text, validate=False)
    assert not check_hopf_axioms(H).passed


def test_prime_residues_reduced():
    doc = _doc()
    doc["unit"] = ["4", "0", "0"]
    assert loads_hopf(json.dumps(doc)).unit.tolist() == [1, 0, 0]
