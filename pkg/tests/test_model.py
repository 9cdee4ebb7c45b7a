import pytest

from crnextinct.model import (
    Complex,
    build_network,
    fire,
    format_complex,
    is_charged,
    stoich_matrix,
)


def test_build_network_complex_order(nets):
    net = nets["example21"]
    got = [format_complex(c, net.species_names) for c in net.complexes]
    assert got == ["X1 + X2", "2 X2", "X2", "X1"]
    assert net.n == 4 and net.m == 2 and net.r == 3


def test_build_network_empty():
    net = build_network(["A", "B"], [])
    assert net.n == 0 and net.r == 0


def test_build_network_self_loop():
    net = build_network(["X1"], [((1,), (1,))])
    assert net.n == 1
    assert net.reactions[0].is_self_loop


def test_build_network_errors():
    with pytest.raises(ValueError, match="duplicate species"):
        build_network(["A", "A"], [])
    with pytest.raises(ValueError, match="length"):
        build_network(["A", "B"], [((1,), (0, 1))])
    with pytest.raises(ValueError, match="negative"):
        build_network(["A"], [((-1,), (0,))])


def test_complex_indexing_deterministic():
    reactions = [((1, 1), (0, 2)), ((0, 2), (1, 1)), ((0, 1), (1, 0))]
    a = build_network(["X1", "X2"], reactions)
    b = build_network(["X1", "X2"], reactions)
    assert [c.coeffs for c in a.complexes] == [c.coeffs for c in b.complexes]


def test_stoich_matrix_fixtures(nets):
    # Example 2.1 per the definition (the reversible pair plus X2 -> X1);
    # this matches the balance-system display and the incidence matrix later on.
    assert stoich_matrix(nets["example21"]) == ((-1, 1, 1), (1, -1, -1))
    assert stoich_matrix(nets["example22"]) == ((-1, 2), (2, -1))
    assert stoich_matrix(nets["example23"]) == ((0, -1, 1), (-1, 1, -1))


def test_is_charged():
    y = Complex((1, 1))
    assert not is_charged(y, (0, 5))
    assert is_charged(Complex((0, 0)), (0, 0))
    assert is_charged(Complex((0, 2)), (0, 2))
    with pytest.raises(ValueError):
        is_charged(y, (1, 1, 1))


def test_fire(nets):
    intro = nets["intro"]
    assert fire(intro, (2, 0), 0) == (1, 1)
    assert fire(intro, (0, 2), 2) is None
    net21 = nets["example21"]
    assert fire(net21, (0, 1), 2) == (1, 0)
    with pytest.raises(IndexError):
        fire(intro, (1, 1), 7)


def test_fire_iff_charged(nets):
    net = nets["example23"]
    for state in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2)]:
        for k, rxn in enumerate(net.reactions):
            result = fire(net, state, k)
            assert (result is not None) == is_charged(rxn.source, state)
            if result is not None:
                assert all(v >= 0 for v in result)
                assert result == tuple(
                    x + d for x, d in zip(state, rxn.vector)
                )


def test_format_complex():
    assert format_complex(Complex((0, 0)), ["A", "B"]) == "0"
    assert format_complex(Complex((1, 2)), ["A", "B"]) == "A + 2 B"
