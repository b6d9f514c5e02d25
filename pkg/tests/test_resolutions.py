import random

from cekit.checks import check_tor, rand_free_complex, rand_presented_module
from cekit.complexes import is_quasi_iso
from cekit.modules import PresentedModule
from cekit.resolutions import (
    ext,
    free_resolution_complex,
    free_resolution_module,
    tor,
)
from cekit.rings import ZZ, ring_mod


def cyclic(ring, k):
    return PresentedModule.cyclic(ring, k)


def test_module_resolution_verifies_over_z():
    rng = random.Random(0)
    for _ in range(15):
        M = rand_presented_module(rng, ZZ)
        res = free_resolution_module(M, 4)
        assert res.verify()


def test_module_resolution_periodic_over_z4():
    res = free_resolution_module(cyclic(ring_mod(4), 2), 6)
    assert res.verify(top=6)
    # alternating multiplication by 2 gives rank one in every degree
    for d in range(7):
        assert res.complex.rank(d) == 1


def test_complex_resolution_is_free_quasi_iso():
    rng = random.Random(1)
    for ring in (ZZ, ring_mod(4), ring_mod(6)):
        for _ in range(5):
            X = rand_free_complex(rng, ring, max_len=3, max_rank=2)
            res = free_resolution_complex(X, bound=6)
            P = res.complex
            assert P.is_free_degreewise
            res.augmentation.validate()
            assert is_quasi_iso(res.augmentation, window=range(X.lowest - 1, 7))


def test_known_tor_values():
    assert tor(cyclic(ZZ, 2), cyclic(ZZ, 2), 2)[1].invariant_factors() == (0, [2])
    assert tor(cyclic(ZZ, 2), cyclic(ZZ, 3), 2)[1].is_trivial()
    assert tor(cyclic(ZZ, 4), cyclic(ZZ, 6), 1)[1].invariant_factors() == (0, [2])
    # Tor_0 is the tensor product
    assert tor(cyclic(ZZ, 4), cyclic(ZZ, 6), 0)[0].invariant_factors() == (0, [2])
    free = PresentedModule.free(ZZ, 2)
    assert tor(free, cyclic(ZZ, 5), 3)[0].invariant_factors() == (0, [5, 5])
    for n in (1, 2, 3):
        assert tor(free, cyclic(ZZ, 5), 3)[n].is_trivial()


def test_known_ext_values():
    assert ext(cyclic(ZZ, 2), cyclic(ZZ, 2), 1)[1].invariant_factors() == (0, [2])
    assert ext(cyclic(ZZ, 2), PresentedModule.free(ZZ, 1), 1)[1].invariant_factors() == (0, [2])
    assert ext(cyclic(ZZ, 2), PresentedModule.free(ZZ, 1), 0)[0].is_trivial()
    assert ext(PresentedModule.free(ZZ, 1), cyclic(ZZ, 3), 1)[0].invariant_factors() == (0, [3])
    assert ext(PresentedModule.free(ZZ, 1), cyclic(ZZ, 3), 1)[1].is_trivial()


def test_periodic_tor_over_z4():
    M = cyclic(ring_mod(4), 2)
    groups = tor(M, M, 6)
    for n in range(7):
        assert groups[n].invariant_factors() == (0, [2])


def test_tor_suite_with_resolution_independence():
    ok, detail = check_tor(17, 20)
    assert ok, detail
