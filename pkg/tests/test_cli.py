import io
import random

from cekit.checks import rand_chain_map, rand_free_complex
from cekit.cli import run
from cekit.complexes import ChainComplex, ChainMap
from cekit.matrix import Matrix
from cekit.modules import PresentedModule
from cekit.rings import ZZ
from cekit.serialize import parse_document, print_document


def invoke(argv, env_window=None, monkeypatch=None):
    if env_window is not None:
        monkeypatch.setenv("CEKIT_WINDOW", str(env_window))
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def write_doc(tmp_path, name, value):
    p = tmp_path / name
    p.write_text(print_document(value))
    return str(p)


def two_term(k):
    return ChainComplex.from_modules(
        ZZ, 0, [PresentedModule.free(ZZ, 1)] * 2, [Matrix(ZZ, 1, 1, (k,))]
    )


def test_tor_known_value():
    code, out, _ = invoke(["tor", "--ring", "Z", "--M", "Z/2", "--N", "Z/2", "--n", "1"])
    assert code == 0
    assert out.strip() == "(0; 2)"


def test_ext_known_value():
    code, out, _ = invoke(["ext", "--ring", "Z", "--M", "Z/3", "--N", "Z", "--n", "1"])
    assert code == 0
    assert out.strip() == "(0; 3)"


def test_homology_output(tmp_path):
    path = write_doc(tmp_path, "c.ck", two_term(2))
    code, out, _ = invoke(["homology", path])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == ["0: (0; 2)", "1: (0; )"]


def test_cone_output_parses(tmp_path):
    C = two_term(2)
    f = ChainMap.identity(C)
    path = write_doc(tmp_path, "f.ck", f)
    code, out, _ = invoke(["cone", path])
    assert code == 0
    cone = parse_document(out)
    assert cone.rank(1) == 2


def test_invert_negative_exit(tmp_path):
    C = two_term(2)
    path = write_doc(tmp_path, "z.ck", ChainMap.zero(C, C))
    code, out, err = invoke(["invert", path])
    assert code == 1


def test_invert_positive(tmp_path):
    C = two_term(1)
    D = ChainComplex.zero(ZZ, 0)
    w = ChainMap.zero(C, D)
    path = write_doc(tmp_path, "w.ck", w)
    code, out, _ = invoke(["invert", path])
    assert code == 0
    g = parse_document(out)
    assert g.source == D and g.target == C


def test_input_error_exit(tmp_path):
    p = tmp_path / "bad.ck"
    p.write_text("garbage tokens")
    code, _, err = invoke(["homology", str(p)])
    assert code == 2
    assert "error:" in err
    code, _, _ = invoke(["tor", "--ring", "Q", "--M", "Z", "--N", "Z", "--n", "0"])
    assert code == 2


def test_resolve_round_trip(tmp_path):
    C = ChainComplex.concentrated(PresentedModule.cyclic(ZZ, 4), 0)
    path = write_doc(tmp_path, "m.ck", C)
    code, out, _ = invoke(["resolve", path])
    assert code == 0
    P = parse_document(out)
    assert P.is_free_degreewise


def test_check_single_suite_deterministic():
    a = invoke(["check", "snf", "--seed", "3", "--instances", "5"])
    b = invoke(["check", "snf", "--seed", "3", "--instances", "5"])
    assert a[0] == 0 and a == b
    assert "snf: PASS" in a[1]
    assert "result: PASS" in a[1]


def test_window_env_controls_resolution_bound(tmp_path, monkeypatch):
    from cekit.rings import ring_mod

    C = ChainComplex.concentrated(PresentedModule.cyclic(ring_mod(4), 2), 0)
    path = write_doc(tmp_path, "p.ck", C)
    code, out, _ = invoke(["resolve", path], env_window=3, monkeypatch=monkeypatch)
    assert code == 0
    P = parse_document(out)
    assert P.highest == 3
