"""Acceptance gate: the ten headline guarantees, one pass/fail line each.

Criteria 1 through 9 run the full-scale randomized suites from
cekit.checks with fixed seeds.  Criterion 10 exercises the command line:
serialization round trips over a generated corpus, a green `check all`,
and byte-identical reports across same-seed runs.
"""
import io
import random
import sys

from cekit.checks import rand_chain_map, rand_free_complex, rand_two_weight_filtered, run_check
from cekit.cli import run
from cekit.complexes import ChainMap
from cekit.filtered import FilteredMap
from cekit.rings import ZZ, ring_mod
from cekit.serialize import parse_document, print_document


def report(number: int, label: str, ok: bool, detail: str = ""):
    verdict = "PASS" if ok else "FAIL"
    tail = f" ({detail})" if detail and not ok else ""
    sys.__stdout__.write(f"criterion {number} [{label}]: {verdict}{tail}\n")
    sys.__stdout__.flush()


def run_suite(number: int, label: str, name: str, seed: int):
    ok, detail = run_check(name, seed)
    report(number, label, ok, detail)
    assert ok, detail


def test_criterion_01_smith_normal_form():
    run_suite(1, "smith normal form", "snf", 101)


def test_criterion_02_complex_constructions():
    run_suite(2, "cone/cylinder/path/total", "constructions", 102)


def test_criterion_03_homotopy_classes():
    run_suite(3, "homotopy classes vs enumeration", "hom-classes", 103)


def test_criterion_04_lifting():
    run_suite(4, "lifting through quasi-isomorphisms", "lifting", 104)


def test_criterion_05_whitehead_inversion():
    run_suite(5, "homotopy inversion", "inversion", 105)


def test_criterion_06_tor():
    run_suite(6, "derived tensor functors", "tor", 106)


def test_criterion_07_filtered():
    run_suite(7, "filtered resolutions and lifts", "filtered", 107)


def test_criterion_08_bar():
    run_suite(8, "bar construction and cofibrancy", "bar", 108)


def test_criterion_09_acyclic_models():
    run_suite(9, "acyclic models comparison", "acyclic-models", 109)


def _corpus():
    rng = random.Random(42)
    docs = []
    for ring in (ZZ, ring_mod(2), ring_mod(4), ring_mod(6)):
        for _ in range(5):
            docs.append(rand_free_complex(rng, ring, max_len=4, max_rank=3))
    for _ in range(5):
        A = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
        B = rand_free_complex(rng, ZZ, max_len=3, max_rank=2)
        docs.append(rand_chain_map(rng, A, B))
    for _ in range(5):
        F = rand_two_weight_filtered(rng, ZZ)
        docs.append(F)
        docs.append(FilteredMap(F, F, ChainMap.identity(F.base)))
    from cekit.checks import _arrow_instance, _one_object_instance

    for G, K in (_one_object_instance(), _arrow_instance()):
        docs.append((K, G))
    return docs


def test_criterion_10_cli():
    ok = True
    detail = ""
    for doc in _corpus():
        text = print_document(doc)
        back = parse_document(text)
        if back != doc or print_document(back) != text:
            ok, detail = False, "serialization round trip failed"
            break
    if ok:
        a_out, b_out = io.StringIO(), io.StringIO()
        code_a = run(["check", "all", "--seed", "7", "--instances", "5"], a_out, io.StringIO())
        code_b = run(["check", "all", "--seed", "7", "--instances", "5"], b_out, io.StringIO())
        if code_a != 0 or code_b != 0:
            ok, detail = False, "check all failed"
        elif a_out.getvalue() != b_out.getvalue():
            ok, detail = False, "same-seed reports differ"
    report(10, "cli round trips and determinism", ok, detail)
    assert ok, detail
