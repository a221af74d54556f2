import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import algebra_and_speckers, algebras, elements, homs, partitions
from uhalat.boolean import BooleanAlgebra, BoolHom, Element, Partition, make_algebra
from uhalat.errors import PartitionError
from uhalat.free import FreeElement, free_generator
from uhalat.functors import SpeckerLattice, functor_H_mor, morphism_from_json, morphism_to_json
from uhalat.spectra import max_spectrum
from uhalat.specker import SpeckerElement, from_values
from uhalat.structure import principal_polar

F = Fraction
B3 = make_algebra(3)


def roundtrip(data):
    return json.loads(json.dumps(data))


def test_boolean_forms():
    assert B3.to_json() == {"atoms": 3}
    assert B3.element([2, 0]).to_json() == {"atoms": [0, 2]}
    assert Partition.from_lists(B3, [[2, 1], [0]]).to_json() == {"blocks": [[0], [1, 2]]}
    f = BoolHom(B3, make_algebra(2), (2, 0))
    assert f.to_json() == {"source": 3, "target": 2, "point_map": [2, 0]}


@given(algebras(max_atoms=6).flatmap(lambda B: st.tuples(elements(B), partitions(B))))
def test_boolean_round_trips(case):
    x, p = case
    B = x.algebra
    assert BooleanAlgebra.from_json(roundtrip(B.to_json())) == B
    assert Element.from_json(B, roundtrip(x.to_json())) == x
    assert Partition.from_json(B, roundtrip(p.to_json())) == p


@given(homs(max_atoms=5))
def test_hom_round_trip(f):
    assert BoolHom.from_json(roundtrip(f.to_json())) == f
    assert morphism_from_json(roundtrip(morphism_to_json(f))) == f
    g = functor_H_mor(f)
    assert morphism_from_json(roundtrip(morphism_to_json(g))) == g


def test_morphism_kinds():
    f = BoolHom.identity(B3)
    assert morphism_to_json(f)["kind"] == "bool_hom"
    assert morphism_to_json(functor_H_mor(f))["kind"] == "specker_mor"
    with pytest.raises(ValueError):
        morphism_from_json({"kind": "other", "source": 1, "target": 1, "point_map": [0]})


def test_specker_form():
    v = from_values(B3, [F(1, 2), -3, F(1, 2)])
    assert v.to_json() == {"algebra": 3, "blocks": [[0, 2], [1]], "values": ["1/2", "-3"]}


@given(algebra_and_speckers(max_atoms=6))
def test_specker_round_trip(av):
    _, v = av
    data = roundtrip(v.to_json())
    assert SpeckerElement.from_json(data) == v
    assert json.dumps(SpeckerElement.from_json(data).to_json()) == json.dumps(v.to_json())


def test_specker_from_json_canonicalizes_and_validates():
    data = {"algebra": 3, "blocks": [[0], [1], [2]], "values": ["2", "4/2", "1"]}
    assert SpeckerElement.from_json(data) == from_values(B3, [2, 2, 1])
    with pytest.raises(ValueError):
        SpeckerElement.from_json({"algebra": 2, "blocks": [[0, 1]], "values": ["0.5"]})
    with pytest.raises(PartitionError):
        SpeckerElement.from_json({"algebra": 2, "blocks": [[0]], "values": ["1"]})


def test_spectral_and_polar_forms():
    V = SpeckerLattice(B3)
    assert [m.to_json() for m in max_spectrum(V)] == [{"atom": 0}, {"atom": 1}, {"atom": 2}]
    assert principal_polar(from_values(B3, [2, 0, 0])).to_json() == {"generator": {"atoms": [1, 2]}}


def test_free_element_form():
    x = free_generator(4) - F(1, 3) * free_generator(1)
    data = roundtrip(x.to_json())
    assert data["support"] == [1, 4]
    assert data["body"]["algebra"] == 4
    assert FreeElement.from_json(data) == x
