import random

from cekit.checks import (
    check_filtered,
    rand_filtered_map,
    rand_filtered_projection,
    rand_two_weight_filtered,
    stored_nonfiltered_quasi_iso,
)
from cekit.complexes import ChainComplex, ChainMap, is_acyclic, is_quasi_iso
from cekit.filtered import (
    FilteredComplex,
    FilteredMap,
    are_filtered_homotopic,
    filtered_lift,
    filtered_resolution,
    gr,
    is_filtered_quasi_iso,
    w_sub,
)
from cekit.matrix import Matrix
from cekit.modules import PresentedModule
from cekit.rings import ZZ, ring_mod


def two_weight_example():
    # Z --id--> Z with weights 0 (degree 0) and 1 (degree 1)
    C = ChainComplex.from_modules(
        ZZ, 0, [PresentedModule.free(ZZ, 1)] * 2, [Matrix.identity(ZZ, 1)]
    )
    return FilteredComplex(C, ((0,), (1,)))


def test_weight_stages_and_graded_pieces():
    F = two_weight_example()
    assert F.validate()
    W0, incl = w_sub(F, 0)
    assert W0.rank(0) == 1 and W0.rank(1) == 0
    incl.validate()
    # gr_0 is the degree-0 line, gr_1 the degree-1 line, both with zero diff
    assert gr(F, 0).rank(0) == 1 and gr(F, 0).rank(1) == 0
    assert gr(F, 1).rank(1) == 1 and gr(F, 1).rank(0) == 0
    assert gr(F, 0).diff(1).is_zero


def test_quasi_iso_that_is_not_filtered():
    f = stored_nonfiltered_quasi_iso()
    assert is_quasi_iso(f.map, range(-1, 3))
    assert not is_filtered_quasi_iso(f)


def test_filtered_homotopy_respects_weights():
    # id and 0 on the contractible two-term complex are homotopic, but with
    # the weight jump they are not filtered homotopic
    F = two_weight_example()
    one = FilteredMap(F, F, ChainMap.identity(F.base))
    zero = FilteredMap(F, F, ChainMap.zero(F.base, F.base))
    assert are_filtered_homotopic(
        FilteredMap(F, F, one.map), zero, window=3
    ) is False
    flat = FilteredComplex(F.base, ((0,), (0,)))
    one_f = FilteredMap(flat, flat, ChainMap.identity(flat.base))
    zero_f = FilteredMap(flat, flat, ChainMap.zero(flat.base, flat.base))
    assert are_filtered_homotopic(one_f, zero_f, window=3)


def test_random_filtered_complexes_validate():
    rng = random.Random(0)
    for ring in (ZZ, ring_mod(4)):
        for _ in range(10):
            F = rand_two_weight_filtered(rng, ring)
            assert F.validate()
            assert F.is_weighted_free
            for p in F.weight_range():
                W, incl = w_sub(F, p)
                incl.validate()


def test_filtered_resolution_small_instances():
    rng = random.Random(1)
    for _ in range(5):
        F = rand_two_weight_filtered(rng, ZZ)
        res = filtered_resolution(F, bound=6)
        assert res.resolution.is_weighted_free
        assert res.verify(window=range(F.base.lowest - 1, 7))


def test_filtered_lift_small_instances():
    rng = random.Random(2)
    for _ in range(5):
        F = rand_two_weight_filtered(rng, ZZ)
        w, Y = rand_filtered_projection(rng, F)
        P = rand_two_weight_filtered(rng, ZZ)
        u = rand_filtered_map(rng, P, Y)
        f = FilteredMap(P, F, w.map.compose(u.map))
        res = filtered_lift(w, f)
        assert res is not None
        assert res.lift.validate() and res.lift.is_weight_compatible()
        assert res.homotopy.validate()
        # uniqueness up to filtered homotopy against the known witness
        assert are_filtered_homotopic(res.lift, u, window=8)


def test_filtered_suite():
    ok, detail = check_filtered(19, 10)
    assert ok, detail
