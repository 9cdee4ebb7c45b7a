import pytest

from crnextinct.model import stoich_matrix
from crnextinct.parser import format_network
from crnextinct.petri import PetriFormatError, petri_export, petri_import


def test_export_example21(nets):
    doc = petri_export(nets["example21"])
    assert doc["places"] == ["X1", "X2"]
    assert doc["transitions"][0] == {
        "id": 0,
        "input": {"X1": 1, "X2": 1},
        "output": {"X2": 2},
    }
    # incidence matrix rows X1: (-1, 1, 1), X2: (1, -1, -1)
    net = petri_import(doc)
    assert stoich_matrix(net) == ((-1, 1, 1), (1, -1, -1))


def test_round_trip_all_fixtures(nets):
    for name, net in nets.items():
        again = petri_import(petri_export(net))
        assert again.species_names == net.species_names, name
        assert stoich_matrix(again) == stoich_matrix(net), name
        assert [c.coeffs for c in again.complexes] == [
            c.coeffs for c in net.complexes
        ], name
        assert sorted(
            (r.source.coeffs, r.target.coeffs) for r in again.reactions
        ) == sorted((r.source.coeffs, r.target.coeffs) for r in net.reactions)
        assert format_network(again) == format_network(net)


def test_transition_without_outputs():
    net = petri_import(
        {"places": ["A"], "transitions": [{"input": {"A": 1}}]}
    )
    assert net.reactions[0].target.coeffs == (0,)


def test_malformed_documents():
    with pytest.raises(PetriFormatError):
        petri_import([])
    with pytest.raises(PetriFormatError):
        petri_import({"places": [1], "transitions": []})
    with pytest.raises(PetriFormatError):
        petri_import({"places": ["A", "A"], "transitions": []})
    with pytest.raises(PetriFormatError, match="unknown place"):
        petri_import({"places": ["A"], "transitions": [{"input": {"B": 1}}]})
    with pytest.raises(PetriFormatError, match="nonnegative integer"):
        petri_import({"places": ["A"], "transitions": [{"input": {"A": -1}}]})
    with pytest.raises(PetriFormatError, match="nonnegative integer"):
        petri_import({"places": ["A"], "transitions": [{"input": {"A": True}}]})
