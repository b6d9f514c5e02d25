import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cekit.checks import (
    _arrow_instance,
    rand_chain_map,
    rand_free_complex,
    rand_two_weight_filtered,
)
from cekit.complexes import ChainMap
from cekit.filtered import FilteredComplex, FilteredMap
from cekit.matrix import Matrix
from cekit.modules import PresentedModule
from cekit.rings import ZZ, ring_mod
from cekit.serialize import (
    SerializationError,
    parse_document,
    parse_module_shorthand,
    parse_ring,
    print_document,
)


def test_ring_tokens():
    assert parse_ring("Z") == ZZ
    assert parse_ring("Z/6") == ring_mod(6)
    with pytest.raises(SerializationError):
        parse_ring("Q")


def test_module_shorthand():
    assert parse_module_shorthand(ZZ, "Z").invariant_factors() == (1, [])
    assert parse_module_shorthand(ZZ, "Z^3").invariant_factors() == (3, [])
    assert parse_module_shorthand(ZZ, "Z/4").invariant_factors() == (0, [4])
    assert parse_module_shorthand(ZZ, "Z^2 + Z/2 + Z/6").invariant_factors() == (2, [2, 6])
    assert parse_module_shorthand(ZZ, "0").is_trivial()
    with pytest.raises(SerializationError):
        parse_module_shorthand(ZZ, "Z^")


def test_complex_round_trip_randomized():
    rng = random.Random(0)
    for ring in (ZZ, ring_mod(4), ring_mod(6)):
        for _ in range(10):
            C = rand_free_complex(rng, ring, max_len=4, max_rank=3)
            text = print_document(C)
            assert parse_document(text) == C
            assert print_document(parse_document(text)) == text


def test_map_and_filtered_round_trips():
    rng = random.Random(1)
    for _ in range(5):
        A = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
        B = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
        f = rand_chain_map(rng, A, B)
        assert parse_document(print_document(f)) == f
        F = rand_two_weight_filtered(rng, ZZ)
        assert parse_document(print_document(F)) == F
        fm = FilteredMap(F, F, ChainMap.identity(F.base))
        assert parse_document(print_document(fm)) == fm


def test_functor_round_trip():
    G, K = _arrow_instance()
    text = print_document((K, G))
    K2, G2 = parse_document(text)
    assert K2 == K and G2 == G
    assert print_document((K2, G2)) == text


def test_non_free_complex_round_trip():
    # torsion modules survive: Z/4 in degree 0
    from cekit.complexes import ChainComplex

    C = ChainComplex.from_modules(ZZ, 0, [PresentedModule.cyclic(ZZ, 4)], [])
    assert parse_document(print_document(C)) == C


def test_whitespace_insensitivity():
    C = rand_free_complex(random.Random(2), ZZ, max_len=3, max_rank=2)
    text = print_document(C)
    mangled = "  ".join(text.split("\n")).replace("  ", " \t ")
    assert parse_document(mangled) == C


def test_parse_errors():
    with pytest.raises(SerializationError):
        parse_document("not a document")
    with pytest.raises(SerializationError):
        parse_document("cekit 2 complex end")
    with pytest.raises(SerializationError):
        parse_document("cekit 1 complex ring Z lowest 0 degrees 1")


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0, 4, 6]))
def test_round_trip_property(seed, m):
    ring = ZZ if m == 0 else ring_mod(m)
    C = rand_free_complex(random.Random(seed), ring, max_len=4, max_rank=3)
    assert parse_document(print_document(C)) == C
