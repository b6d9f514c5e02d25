import random

import pytest

from cekit.checks import rand_chain_map, rand_free_complex
from cekit.complexes import (
    ChainComplex,
    ChainMap,
    ComplexValidationError,
    cone,
    cone_with_maps,
    cylinder,
    direct_sum_complexes,
    homology,
    hom_complex,
    is_acyclic,
    is_quasi_iso,
    path,
    shift,
    total,
    validate,
)
from cekit.matrix import Matrix
from cekit.modules import PresentedModule
from cekit.rings import ZZ, ring_mod


def two_term(ring, k):
    return ChainComplex.from_modules(
        ring, 0, [PresentedModule.free(ring, 1)] * 2, [Matrix(ring, 1, 1, (ring.normalize(k),))]
    )


def test_validate_rejects_non_complexes():
    bad = ChainComplex.from_modules(
        ZZ,
        0,
        [PresentedModule.free(ZZ, 1)] * 3,
        [Matrix(ZZ, 1, 1, (1,)), Matrix(ZZ, 1, 1, (1,))],
    )
    with pytest.raises(ComplexValidationError):
        validate(bad)


def test_homology_of_known_complexes():
    C = two_term(ZZ, 2)
    assert str(homology(C, 0)) == "(0; 2)"
    assert str(homology(C, 1)) == "(0; )"
    r4 = ring_mod(4)
    D = two_term(r4, 2)
    assert str(homology(D, 0)) == "(0; 2)"
    assert str(homology(D, 1)) == "(0; 2)"


def test_shift_signs_and_double_shift():
    rng = random.Random(0)
    C = rand_free_complex(rng, ZZ)
    S = shift(C, 1)
    validate(S)
    for d in C.degrees():
        if d > C.lowest:
            assert S.diff(d + 1) == C.diff(d).scale(-1)
    assert shift(S, -1) == C


def test_cone_of_identity_is_acyclic_and_cone_detects_quasi_iso():
    rng = random.Random(1)
    for _ in range(10):
        C = rand_free_complex(rng, ZZ)
        cid = cone(ChainMap.identity(C))
        validate(cid)
        assert is_acyclic(cid, range(cid.lowest, cid.highest + 1))
    zero_to_half = ChainMap.zero(ChainComplex.zero(ZZ, 0), two_term(ZZ, 2))
    assert not is_quasi_iso(zero_to_half, range(-1, 3))


def test_cone_long_exact_structure_maps():
    rng = random.Random(2)
    A = rand_free_complex(rng, ZZ)
    B = rand_free_complex(rng, ZZ)
    f = rand_chain_map(rng, A, B)
    C, incl, proj = cone_with_maps(f)
    incl.validate()
    proj.validate()
    # composite Y -> cone -> X[1] vanishes
    comp = proj.compose(incl)
    for d in comp.source.degrees():
        assert comp.comp(d).is_zero


def test_cylinder_laws():
    rng = random.Random(3)
    for _ in range(10):
        C = rand_free_complex(rng, ring_mod(6))
        Cyl, i0, i1, p = cylinder(C)
        validate(Cyl)
        assert p.compose(i0).equals(ChainMap.identity(C))
        assert p.compose(i1).equals(ChainMap.identity(C))


def test_path_of_identity_is_acyclic():
    C = two_term(ZZ, 3)
    L = path(ChainMap.identity(C))
    validate(L)
    assert is_acyclic(L, range(L.lowest - 1, L.highest + 2))


def test_direct_sum_projections_and_inclusions():
    rng = random.Random(4)
    A = rand_free_complex(rng, ZZ)
    B = rand_free_complex(rng, ZZ)
    S, iA, iB, pA, pB = direct_sum_complexes(A, B)
    validate(S)
    assert pA.compose(iA).equals(ChainMap.identity(A))
    assert pB.compose(iB).equals(ChainMap.identity(B))
    for d in A.degrees():
        assert pB.compose(iA).comp(d).is_zero


def test_hom_complex_differential_squares_to_zero():
    rng = random.Random(5)
    A = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
    B = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
    H = hom_complex(A, B)
    validate(H)


def test_total_of_commuting_square():
    # 2x2 square of copies of Z with identity maps totalizes to an acyclic complex
    from cekit.complexes import DoubleComplex

    one = PresentedModule.free(ZZ, 1)
    ident = Matrix.identity(ZZ, 1)
    D = DoubleComplex(
        ZZ,
        {(0, 0): one, (0, 1): one, (1, 0): one, (1, 1): one},
        {(1, 0): ident, (1, 1): ident},
        {(0, 1): ident, (1, 1): ident},
    )
    D.validate()
    T = total(D)
    validate(T)
    assert is_acyclic(T, range(0, 3))
