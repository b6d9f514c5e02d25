import random

import pytest

from cekit.checks import (
    _arrow_instance,
    _one_object_instance,
    check_acyclic_models,
    check_bar,
    rand_free_complex,
)
from cekit.complexes import ChainComplex, ChainMap, homology, is_acyclic
from cekit.functors import (
    CategoryError,
    FiniteCategory,
    FunctorComplex,
    ModelsCotriple,
    NatSpace,
    NaturalMap,
    acyclic_models_check,
    apply_cotriple,
    bar,
    comultiplication,
    contraction_for_GK,
    counit,
    h0_functor,
    is_g_acyclic,
    is_g_cofibrant,
    is_natural_homotopy_equivalence,
    is_pointwise_homotopy_equivalence,
    restriction_check,
    strictness_example,
)
from cekit.homotopy import homotopy_classes
from cekit.matrix import Matrix
from cekit.modules import PresentedModule
from cekit.rings import ZZ, ring_mod


def test_category_validation_rejects_bad_composition():
    with pytest.raises(CategoryError):
        # id . e declared as id breaks the unit law
        FiniteCategory(
            objects=("0",),
            morphisms=(("id0", "0", "0"), ("e", "0", "0")),
            identities={"0": 0},
            composition={(0, 0): 0, (0, 1): 0, (1, 0): 1, (1, 1): 0},
        ).validate()
    arrow = FiniteCategory.arrow()
    assert arrow.validate()
    assert FiniteCategory.one_object().validate()


def test_functor_complex_validation():
    G, K = _arrow_instance()
    assert K.validate()
    # break functoriality: wrong component on the connecting arrow
    bad_maps = dict(K.maps)
    bad_maps[2] = ChainMap.from_dict(
        K.value("0"), K.value("1"), {0: Matrix.from_rows(ZZ, [[1, 1]])}
    )
    with pytest.raises(Exception):
        FunctorComplex(K.category, K.values, bad_maps).validate()


def test_counit_and_comultiplication_axioms():
    for G, K in (_one_object_instance(), _arrow_instance()):
        app = apply_cotriple(G, K)
        eps = counit(app)
        assert eps.validate()
        app2 = apply_cotriple(G, app.result)
        delta = comultiplication(app, app2)
        assert delta.validate()
        # counit law: eps_{GK} . delta = id = G(eps) . delta
        eps2 = counit(app2)
        left = eps2.compose(delta)
        for X in G.category.objects:
            for d in app.result.value(X).degrees():
                r = app.result.value(X).rank(d)
                assert (left.comps[X].comp(d) - Matrix.identity(K.ring, r)).is_zero


def test_bar_levels_are_complexes_with_simplicial_faces():
    from cekit.checks import _simplicial_identities

    for G, K in (_one_object_instance(), _arrow_instance()):
        br = bar(G, K, bound=5)
        for X in G.category.objects:
            tot = br.functor.value(X)
            for d in tot.degrees():
                assert (tot.diff(d - 1) * tot.diff(d)).is_zero
        assert _simplicial_identities(br, 5)


def test_bar_contraction_of_cotriple_image():
    for G, K in (_one_object_instance(), _arrow_instance()):
        GK = apply_cotriple(G, K).result
        con = contraction_for_GK(G, GK, bound=5)
        assert con.verify(top=4)


def test_bar_preserves_homology_on_one_object():
    G, K = _one_object_instance()
    br = bar(G, K, bound=8)
    X = G.category.objects[0]
    for d in range(4):
        a = homology(br.functor.value(X), d)
        b = homology(K.value(X), d)
        assert a.invariant_factors() == b.invariant_factors()


def test_strictness_example_separates_classes():
    phi = strictness_example()
    assert is_pointwise_homotopy_equivalence(phi, window=4)
    assert not is_natural_homotopy_equivalence(phi, window=4)


def test_cofibrancy_of_cotriple_image():
    G, K = _arrow_instance()
    GK = apply_cotriple(G, K).result
    assert is_g_cofibrant(G, GK, bound=4, cls="h")


def test_nat_space_matches_homotopy_classes_on_one_object():
    # on the one-object category with the identity cotriple, natural classes
    # of maps between constant functors are plain homotopy classes
    cat = FiniteCategory.one_object()
    rng = random.Random(5)
    for _ in range(5):
        A = rand_free_complex(rng, ring_mod(4), max_len=3, max_rank=2)
        B = rand_free_complex(rng, ring_mod(4), max_len=3, max_rank=2)
        KA = FunctorComplex.constant(cat, A)
        KB = FunctorComplex.constant(cat, B)
        ns = NatSpace(KA, KB)
        mod, _ = homotopy_classes(A, B)
        assert ns.module.invariant_factors() == mod.invariant_factors()


def test_h0_functor_requires_free_h0():
    G, K = _arrow_instance(free_h0=False)
    with pytest.raises(ValueError):
        h0_functor(K)
    G, K = _arrow_instance(free_h0=True)
    data = h0_functor(K)
    assert data.functor.validate()


def test_acyclicity_on_models():
    G, K = _arrow_instance(free_h0=True)
    # values on the model object "0" are free resolutions of their H0, so
    # the augmented complexes over the models are acyclic
    assert is_g_acyclic(G, K, bound=5, cls="qis")


def test_restriction_and_acyclic_models_small():
    G, K0 = _arrow_instance(free_h0=True)
    K = apply_cotriple(G, K0).result
    rng = random.Random(7)
    cat = G.category
    L0 = rand_free_complex(rng, ZZ, max_len=2, max_rank=2)
    L1 = rand_free_complex(rng, ZZ, max_len=2, max_rank=2)
    from cekit.checks import rand_chain_map

    Lu = rand_chain_map(rng, L0, L1)
    L = FunctorComplex(
        cat,
        {"0": L0, "1": L1},
        {0: ChainMap.identity(L0), 1: ChainMap.identity(L1), 2: Lu},
    )
    rep = restriction_check(G, K, L, top=6)
    assert rep.is_isomorphism


def test_acyclic_models_suite():
    ok, detail = check_acyclic_models(11, 4)
    assert ok, detail
