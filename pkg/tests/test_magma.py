import pytest

from helpers import brute_magma_axiom_sets
from porphyry import extensions, parse, validate
from porphyry.magma import (
    BASE_SIGNATURE,
    DEMO_SYSTEM,
    MAX_DEMO_SIZE,
    demo_dsl,
    demo_magma,
)


def test_demo_shape():
    assert BASE_SIGNATURE.names() == {"Assoc", "HasId", "HasInv", "Comm"}
    assert [e.name for e in DEMO_SYSTEM.entries] == ["Mon", "Grp", "Ab"]
    assert validate(DEMO_SYSTEM).valid


def test_demo_size_counts():
    m1, _ = demo_magma(1)
    assert m1.size == 1
    m2, _ = demo_magma(2)
    assert m2.size == 1 + 16


def test_demo_max_size_gate():
    assert MAX_DEMO_SIZE == 3
    for bad in (0, 4):
        with pytest.raises(ValueError):
            demo_magma(bad)


def test_frozen_extents_size_two():
    model, _ = demo_magma(2)
    ext = {name: sorted(i for (i,) in elems) for name, elems in model.predicates.items()}
    assert ext["Assoc"] == [0, 1, 2, 4, 6, 7, 8, 10, 16]
    assert ext["HasId"] == [0, 2, 7, 8, 10]
    assert ext["HasInv"] == [0, 7, 10]
    assert ext["Comm"] == [0, 1, 2, 7, 8, 9, 10, 15, 16]


def test_extents_match_independent_brute_force():
    for max_size in (1, 2):
        model, _ = demo_magma(max_size)
        expected, total = brute_magma_axiom_sets(max_size)
        assert model.size == total
        got = {
            name: set(i for (i,) in elems)
            for name, elems in model.predicates.items()
        }
        assert got == expected


def test_defined_extents_size_two():
    model, system = demo_magma(2)
    sets = extensions(system, model).as_dict()
    assert sets["Mon"] == frozenset({0, 2, 7, 8, 10})
    assert sets["Grp"] == frozenset({0, 7, 10})
    assert sets["Ab"] == frozenset({0, 7, 10})


def test_demo_dsl_round_trips():
    src = demo_dsl(2)
    parsed = parse(src)
    assert parsed.signature == BASE_SIGNATURE
    assert parsed.system is not None
    assert [e.name for e in parsed.system.entries] == ["Mon", "Grp", "Ab"]
    model, _ = demo_magma(2)
    assert parsed.models["magma"].predicates == model.predicates
    assert parsed.models["magma"].size == model.size
