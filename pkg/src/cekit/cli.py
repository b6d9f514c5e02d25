"""Command-line front end.

Every capability is a subcommand producing a deterministic textual report.
Exit codes: 0 success, 1 verified-negative answer, 2 input error.
"""
from __future__ import annotations

import argparse
import os
import sys

from .checks import CHECKS, run_check
from .complexes import (
    ChainComplex,
    ChainMap,
    ComplexValidationError,
    cone,
    cylinder,
    homology,
)
from .filtered import FilteredComplex, FilteredMap, filtered_lift, filtered_resolution
from .functors import (
    CategoryError,
    FunctorComplex,
    ModelsCotriple,
    acyclic_models_check,
    bar,
    is_g_cofibrant,
)
from .homotopy import invert_weak_equivalence, lift_cofibrant
from .resolutions import ext, free_resolution_complex, tor
from .serialize import (
    SerializationError,
    parse_document,
    parse_module_shorthand,
    parse_ring,
    print_document,
)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _default_window() -> int:
    try:
        return int(os.environ.get("CEKIT_WINDOW", "8"))
    except ValueError:
        raise InputError("CEKIT_WINDOW must be an integer")


def _load(path: str, kinds):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e}")
    try:
        value = parse_document(text)
    except SerializationError as e:
        raise InputError(f"{path}: {e}")
    if not isinstance(value, kinds):
        names = kinds.__name__ if isinstance(kinds, type) else "/".join(k.__name__ for k in kinds)
        raise InputError(f"{path}: expected a {names} document")
    return value


def _load_functor(path: str):
    value = _load(path, tuple)
    K, G = value
    if G is None:
        raise InputError(f"{path}: functor document has an empty model set")
    return K, G


def cmd_homology(args, out):
    C = _load(args.file, ChainComplex)
    for d in C.degrees():
        out.write(f"{d}: {homology(C, d)}\n")
    if not C.length:
        out.write("0: (0; )\n")
    return EXIT_OK


def cmd_resolve(args, out):
    C = _load(args.file, ChainComplex)
    bound = args.bound
    if bound is None and C.ring.modulus is not None:
        bound = _default_window()
    try:
        res = free_resolution_complex(C, bound)
    except ValueError as e:
        raise InputError(str(e))
    out.write(print_document(res.complex))
    return EXIT_OK


def _derived(args, out, fn):
    ring = parse_ring(args.ring)
    M = parse_module_shorthand(ring, args.M)
    N = parse_module_shorthand(ring, args.N)
    out.write(f"{fn(M, N, args.n)[args.n]}\n")
    return EXIT_OK


def cmd_tor(args, out):
    return _derived(args, out, tor)


def cmd_ext(args, out):
    return _derived(args, out, ext)


def cmd_cone(args, out):
    f = _load(args.file, ChainMap)
    out.write(print_document(cone(f)))
    return EXIT_OK


def cmd_cylinder(args, out):
    C = _load(args.file, ChainComplex)
    Cyl, i0, i1, p = cylinder(C)
    out.write(print_document(Cyl))
    return EXIT_OK


def cmd_lift(args, out):
    w = _load(args.w, ChainMap)
    f = _load(args.f, ChainMap)
    if f.target != w.target:
        raise InputError("lift: the two maps must share a target")
    res = lift_cofibrant(w, f)
    if res is None:
        out.write("no lift within preconditions\n")
        return EXIT_NEGATIVE
    out.write(print_document(res.lift))
    return EXIT_OK


def cmd_invert(args, out):
    w = _load(args.file, ChainMap)
    he = invert_weak_equivalence(w)
    if he is None:
        out.write("not a quasi-isomorphism\n")
        return EXIT_NEGATIVE
    out.write(print_document(he.g))
    return EXIT_OK


def cmd_filtered_resolve(args, out):
    F = _load(args.file, FilteredComplex)
    bound = args.bound
    if bound is None and F.base.ring.modulus is not None:
        bound = _default_window()
    res = filtered_resolution(F, bound)
    out.write(print_document(res.resolution))
    return EXIT_OK


def cmd_filtered_lift(args, out):
    w = _load(args.w, FilteredMap)
    f = _load(args.f, FilteredMap)
    res = filtered_lift(w, f)
    if res is None:
        out.write("no filtered lift\n")
        return EXIT_NEGATIVE
    out.write(print_document(res.lift))
    return EXIT_OK


def cmd_bar(args, out):
    K, G = _load_functor(args.file)
    bound = args.bound if args.bound is not None else _default_window()
    br = bar(G, K, bound)
    out.write(print_document((br.functor, G)))
    return EXIT_OK


def cmd_cofibrant(args, out):
    K, G = _load_functor(args.file)
    bound = args.bound if args.bound is not None else _default_window()
    ok = is_g_cofibrant(G, K, bound, args.cls)
    out.write(f"cofibrant ({args.cls}, window {bound}): {'yes' if ok else 'no'}\n")
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_acyclic_models(args, out):
    K, G = _load_functor(args.k)
    L = _load(args.l, tuple)[0]
    if L.category != K.category:
        raise InputError("acyclic-models: K and L must share a category")
    try:
        report = acyclic_models_check(G, K, L, args.top)
    except ValueError as e:
        raise InputError(str(e))
    out.write(f"[K, L] = {report.classes_KL}\n")
    out.write(f"[K, H0 L] = {report.classes_KH0L}\n")
    out.write(f"[K|M, H0 L|M] = {report.classes_restricted}\n")
    out.write(f"[H0 K|M, H0 L|M] = {report.classes_H0}\n")
    out.write(f"factor tau: {'iso' if report.factor_tau_iso else 'not iso'}\n")
    out.write(f"factor restriction: {'iso' if report.factor_restriction_iso else 'not iso'}\n")
    out.write(f"factor H0: {'iso' if report.factor_h0_iso else 'not iso'}\n")
    out.write(f"H0 rho bijective: {'yes' if report.is_bijective else 'no'}\n")
    return EXIT_OK if report.is_bijective else EXIT_NEGATIVE


def cmd_check(args, out):
    names = list(CHECKS) if args.which == "all" else [args.which]
    for name in names:
        if name not in CHECKS:
            raise InputError(f"unknown check {name!r}")
    all_ok = True
    for name in names:
        ok, detail = run_check(name, args.seed, args.instances)
        all_ok = all_ok and ok
        out.write(f"{name}: {'PASS' if ok else 'FAIL'} ({detail})\n")
    out.write(f"result: {'PASS' if all_ok else 'FAIL'}\n")
    return EXIT_OK if all_ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cekit", description="Exact computational homological algebra over Z and Z/m.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("homology", help="invariant factors of each homology module")
    s.add_argument("file")
    s.set_defaults(fn=cmd_homology)

    s = sub.add_parser("resolve", help="degreewise free replacement of a complex")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(fn=cmd_resolve)

    for name, fn in (("tor", cmd_tor), ("ext", cmd_ext)):
        s = sub.add_parser(name, help=f"{name} of two presented modules")
        s.add_argument("--ring", required=True)
        s.add_argument("--M", required=True)
        s.add_argument("--N", required=True)
        s.add_argument("--n", type=int, required=True)
        s.set_defaults(fn=fn)

    s = sub.add_parser("cone", help="mapping cone of a chain map")
    s.add_argument("file")
    s.set_defaults(fn=cmd_cone)

    s = sub.add_parser("cylinder", help="mapping cylinder of a complex")
    s.add_argument("file")
    s.set_defaults(fn=cmd_cylinder)

    s = sub.add_parser("lift", help="lift a map through a surjective quasi-isomorphism")
    s.add_argument("w")
    s.add_argument("f")
    s.set_defaults(fn=cmd_lift)

    s = sub.add_parser("invert", help="homotopy inverse of a quasi-isomorphism")
    s.add_argument("file")
    s.set_defaults(fn=cmd_invert)

    s = sub.add_parser("filtered-resolve", help="weighted-free filtered replacement")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(fn=cmd_filtered_resolve)

    s = sub.add_parser("filtered-lift", help="lift through a filtered quasi-isomorphism")
    s.add_argument("w")
    s.add_argument("f")
    s.set_defaults(fn=cmd_filtered_lift)

    s = sub.add_parser("bar", help="cotriple bar construction of a functor")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.set_defaults(fn=cmd_bar)

    s = sub.add_parser("cofibrant", help="certify the bar augmentation within a window")
    s.add_argument("file")
    s.add_argument("--bound", type=int)
    s.add_argument("--class", dest="cls", choices=("h", "ph", "qis"), default="h")
    s.set_defaults(fn=cmd_cofibrant)

    s = sub.add_parser("acyclic-models", help="verify bijectivity of the comparison map")
    s.add_argument("k")
    s.add_argument("l")
    s.add_argument("--top", type=int)
    s.set_defaults(fn=cmd_acyclic_models)

    s = sub.add_parser("check", help="run the randomized property suites")
    s.add_argument("which", nargs="?", default="all")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--instances", type=int)
    s.set_defaults(fn=cmd_check)
    return p


def run(argv, out=None, err=None):
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        return args.fn(args, out)
    except InputError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    except (SerializationError, ComplexValidationError, CategoryError, ValueError) as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
