import random

from cekit.checks import rand_presented_module, rand_unimodular, _unimodular_inverse
from cekit.matrix import Matrix
from cekit.modules import (
    ModuleMap,
    PresentedModule,
    direct_sum,
    is_module_iso,
    quotient_presentation,
    submodule,
)
from cekit.rings import ZZ, ring_mod


def test_invariant_factors_of_known_modules():
    assert PresentedModule.free(ZZ, 3).invariant_factors() == (3, [])
    assert PresentedModule.cyclic(ZZ, 12).invariant_factors() == (0, [12])
    M = PresentedModule(ZZ, 2, Matrix(ZZ, 2, 2, (2, 0, 0, 3)))
    assert M.invariant_factors() == (0, [6])  # Z/2 + Z/3 = Z/6
    r4 = ring_mod(4)
    assert PresentedModule.free(r4, 2).invariant_factors() == (2, [])
    assert PresentedModule.cyclic(r4, 2).invariant_factors() == (0, [2])


def test_presentation_invariance_under_unimodular_changes():
    rng = random.Random(3)
    for ring in (ZZ, ring_mod(6)):
        for _ in range(25):
            M = rand_presented_module(rng, ring)
            if M.generators == 0 or M.relations.cols == 0:
                continue
            P = rand_unimodular(rng, ring, M.generators)
            Q = rand_unimodular(rng, ring, M.relations.cols)
            M2 = PresentedModule(ring, M.generators, P * M.relations * Q)
            assert M.invariant_factors() == M2.invariant_factors()


def test_module_map_well_definedness():
    half = PresentedModule.cyclic(ZZ, 2)
    third = PresentedModule.cyclic(ZZ, 3)
    # x -> x is not well defined Z/2 -> Z/3, but 0 is
    assert not ModuleMap(half, third, Matrix(ZZ, 1, 1, (1,))).is_well_defined()
    assert ModuleMap(half, third, Matrix(ZZ, 1, 1, (0,))).is_well_defined()
    # multiplication by 3 is an automorphism of Z/2
    tripled = ModuleMap(half, half, Matrix(ZZ, 1, 1, (3,)))
    ok, inv = is_module_iso(tripled)
    assert ok and inv is not None
    assert inv.compose(tripled).is_identity()


def test_is_module_iso_between_different_presentations():
    rng = random.Random(9)
    M = PresentedModule(ZZ, 2, Matrix(ZZ, 2, 2, (2, 0, 0, 3)))
    N = PresentedModule.cyclic(ZZ, 6)
    # generator of Z/6 maps to (3, 2): order 6 element of Z/2 + Z/3
    f = ModuleMap(N, M, Matrix(ZZ, 2, 1, (3, 2)))
    ok, inv = is_module_iso(f)
    assert ok
    assert inv.compose(f).is_identity()
    assert f.compose(inv).is_identity()


def test_quotient_presentation():
    # Z^2 / span((2,0)) relative to ambient generated by e1, e2
    num = Matrix.identity(ZZ, 2)
    den = Matrix(ZZ, 2, 1, (2, 0))
    Q = quotient_presentation(ZZ, num, den)
    assert Q.invariant_factors() == (1, [2])


def test_submodule_inclusion_is_well_defined():
    M = PresentedModule(ZZ, 2, Matrix(ZZ, 2, 1, (4, 0)))
    sub, incl = submodule(M, [Matrix(ZZ, 2, 1, (2, 0))])
    assert incl.is_well_defined()
    assert sub.invariant_factors() == (0, [2])  # 2x has order 2 in Z/4


def test_direct_sum_concatenates_invariants():
    A = PresentedModule.cyclic(ZZ, 2)
    B = PresentedModule.free(ZZ, 1)
    S = direct_sum([A, B])
    assert S.invariant_factors() == (1, [2])
    assert str(S) == "(1; 2)"
