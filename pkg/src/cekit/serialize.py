"""Canonical text documents for modules, maps, complexes, filtered
complexes, and functor diagrams.

The format is a whitespace-insensitive token stream with explicit integer
literals.  Every document begins with "cekit 1 <kind>" and ends with "end";
nested payloads carry their own kind token and terminator.  Printing is
canonical, so parse(print(x)) = x and print(parse(s)) is byte-stable.
"""
from __future__ import annotations

from .complexes import ChainComplex, ChainMap
from .filtered import FilteredComplex, FilteredMap
from .functors import FiniteCategory, FunctorComplex, ModelsCotriple
from .matrix import Matrix
from .modules import PresentedModule
from .rings import Ring, ZZ, ring_mod


class SerializationError(ValueError):
    pass


FORMAT_VERSION = 1


def _ring_token(ring: Ring) -> str:
    return str(ring)


def parse_ring(token: str) -> Ring:
    if token == "Z":
        return ZZ
    if token.startswith("Z/"):
        try:
            m = int(token[2:])
        except ValueError:
            raise SerializationError(f"bad ring token {token!r}")
        if m < 2:
            raise SerializationError(f"bad modulus {m}")
        return ring_mod(m)
    raise SerializationError(f"bad ring token {token!r}")


def parse_module_shorthand(ring: Ring, text: str) -> PresentedModule:
    """Shorthand like "Z", "Z^2", "Z/4", "Z^2+Z/6+Z/2".

    "Z" means a free rank-one module over the ambient ring; "Z/m" a cyclic
    module with relation m.
    """
    text = text.strip()
    if not text or text == "0":
        return PresentedModule.zero(ring)
    gens = 0
    torsion = []  # (generator index, m)
    for part in text.split("+"):
        part = part.strip()
        if part in ("Z", "Z^1"):
            gens += 1
        elif part.startswith("Z^"):
            try:
                k = int(part[2:])
            except ValueError:
                raise SerializationError(f"bad summand {part!r}")
            if k < 0:
                raise SerializationError(f"bad summand {part!r}")
            gens += k
        elif part.startswith("Z/"):
            try:
                m = int(part[2:])
            except ValueError:
                raise SerializationError(f"bad summand {part!r}")
            if m < 2:
                raise SerializationError(f"bad summand {part!r}")
            torsion.append(m)
            gens += 1
        else:
            raise SerializationError(f"bad summand {part!r}")
    cols = []
    free = gens - len(torsion)
    for k, m in enumerate(torsion):
        col = [0] * gens
        col[free + k] = ring.normalize(m)
        cols.append(col)
    rel = Matrix(ring, gens, len(cols), tuple(cols[j][i] for i in range(gens) for j in range(len(cols))))
    return PresentedModule(ring, gens, rel)


# -- writer --------------------------------------------------------------


class _Writer:
    def __init__(self):
        self.lines = []

    def line(self, *tokens):
        self.lines.append(" ".join(str(t) for t in tokens))

    def matrix(self, label, m: Matrix):
        self.line(label, m.rows, m.cols)
        for i in range(m.rows):
            self.line(*m.row_list(i))

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _emit_module(w: _Writer, M: PresentedModule):
    w.line("module")
    w.line("ring", _ring_token(M.ring))
    w.line("gens", M.generators)
    w.matrix("relations", M.relations)
    w.line("end")


def _emit_complex(w: _Writer, C: ChainComplex):
    w.line("complex")
    w.line("ring", _ring_token(C.ring))
    w.line("lowest", C.lowest)
    w.line("degrees", C.length)
    for d in C.degrees():
        w.line("degree", d, "gens", C.rank(d))
        w.matrix("relations", C.module(d).relations)
    for d in C.degrees():
        if d > C.lowest:
            w.matrix(f"diff {d}", C.diff(d))
    w.line("end")


def _emit_filtered(w: _Writer, F: FilteredComplex):
    w.line("filtered-complex")
    _emit_complex(w, F.base)
    for d in F.base.degrees():
        w.line("weights", d, *F.weight(d))
    w.line("end")


def _emit_map(w: _Writer, f):
    filtered = isinstance(f, FilteredMap)
    chain = f.map if filtered else f
    w.line("map")
    w.line("source")
    if filtered:
        _emit_filtered(w, f.source)
    else:
        _emit_complex(w, chain.source)
    w.line("target")
    if filtered:
        _emit_filtered(w, f.target)
    else:
        _emit_complex(w, chain.target)
    comps = [(d, m) for d, m in chain.comps if not m.is_zero]
    w.line("comps", len(comps))
    for d, m in sorted(comps):
        w.matrix(f"comp {d}", m)
    w.line("end")


def _emit_functor(w: _Writer, K: FunctorComplex, G: ModelsCotriple | None):
    cat = K.category
    w.line("functor")
    w.line("objects", len(cat.objects), *cat.objects)
    w.line("morphisms", len(cat.morphisms))
    for name, s, t in cat.morphisms:
        w.line("morphism", name, s, t)
    w.line("identities", *[cat.identities[X] for X in cat.objects])
    comp = sorted(cat.composition.items())
    w.line("composition", len(comp))
    for (g, f), c in comp:
        w.line("compose", g, f, c)
    models = G.models if G is not None else ()
    w.line("models", len(models), *models)
    for X in cat.objects:
        w.line("value", X)
        _emit_complex(w, K.value(X))
    for i in range(len(cat.morphisms)):
        f = K.map(i)
        comps = sorted((d, m) for d, m in f.comps if not m.is_zero)
        w.line("arrow", i, "comps", len(comps))
        for d, m in comps:
            w.matrix(f"comp {d}", m)
    w.line("end")


def print_document(value) -> str:
    """Serialize a module, chain map, complex, filtered complex, or
    (functor, cotriple) pair to canonical text."""
    w = _Writer()
    w.line("cekit", FORMAT_VERSION)
    if isinstance(value, PresentedModule):
        _emit_module(w, value)
    elif isinstance(value, ChainComplex):
        _emit_complex(w, value)
    elif isinstance(value, FilteredComplex):
        _emit_filtered(w, value)
    elif isinstance(value, (ChainMap, FilteredMap)):
        _emit_map(w, value)
    elif isinstance(value, tuple) and len(value) == 2 and isinstance(value[0], FunctorComplex):
        _emit_functor(w, value[0], value[1])
    elif isinstance(value, FunctorComplex):
        _emit_functor(w, value, None)
    else:
        raise SerializationError(f"cannot serialize {type(value).__name__}")
    return w.text()


# -- reader --------------------------------------------------------------


class _Tokens:
    def __init__(self, text: str):
        self.toks = text.split()
        self.pos = 0

    def next(self) -> str:
        if self.pos >= len(self.toks):
            raise SerializationError("unexpected end of document")
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def peek(self) -> str | None:
        return self.toks[self.pos] if self.pos < len(self.toks) else None

    def expect(self, word: str):
        t = self.next()
        if t != word:
            raise SerializationError(f"expected {word!r}, found {t!r} at token {self.pos - 1}")

    def int(self) -> int:
        t = self.next()
        try:
            return int(t)
        except ValueError:
            raise SerializationError(f"expected integer, found {t!r} at token {self.pos - 1}")

    def done(self):
        if self.pos != len(self.toks):
            raise SerializationError(f"trailing tokens at {self.pos}")


def _read_matrix(t: _Tokens, ring: Ring, label: str, arg: int | None = None) -> Matrix:
    t.expect(label)
    if arg is not None:
        got = t.int()
        if got != arg:
            raise SerializationError(f"expected {label} {arg}, found {got}")
    rows, cols = t.int(), t.int()
    entries = tuple(ring.normalize(t.int()) for _ in range(rows * cols))
    return Matrix(ring, rows, cols, entries)


def _read_module(t: _Tokens) -> PresentedModule:
    t.expect("module")
    t.expect("ring")
    ring = parse_ring(t.next())
    t.expect("gens")
    g = t.int()
    rel = _read_matrix(t, ring, "relations")
    if rel.rows != g:
        raise SerializationError("relations row count does not match gens")
    t.expect("end")
    return PresentedModule(ring, g, rel)


def _read_complex(t: _Tokens) -> ChainComplex:
    t.expect("complex")
    t.expect("ring")
    ring = parse_ring(t.next())
    t.expect("lowest")
    lowest = t.int()
    t.expect("degrees")
    n = t.int()
    mods = []
    for k in range(n):
        t.expect("degree")
        d = t.int()
        if d != lowest + k:
            raise SerializationError(f"degrees out of order at {d}")
        t.expect("gens")
        g = t.int()
        rel = _read_matrix(t, ring, "relations")
        if rel.rows != g:
            raise SerializationError(f"relations row count mismatch at degree {d}")
        mods.append(PresentedModule(ring, g, rel))
    diffs = []
    for k in range(1, n):
        m = _read_matrix(t, ring, "diff", lowest + k)
        if (m.rows, m.cols) != (mods[k - 1].generators, mods[k].generators):
            raise SerializationError(f"diff {lowest + k} has wrong shape")
        diffs.append(m)
    t.expect("end")
    return ChainComplex(ring, lowest, tuple(mods), tuple(diffs))


def _read_filtered(t: _Tokens) -> FilteredComplex:
    t.expect("filtered-complex")
    base = _read_complex(t)
    weights = []
    for d in base.degrees():
        t.expect("weights")
        got = t.int()
        if got != d:
            raise SerializationError(f"weights out of order at {got}")
        weights.append(tuple(t.int() for _ in range(base.rank(d))))
    t.expect("end")
    return FilteredComplex(base, tuple(weights))


def _read_endpoint(t: _Tokens):
    if t.peek() == "filtered-complex":
        return _read_filtered(t)
    return _read_complex(t)


def _read_map(t: _Tokens):
    t.expect("map")
    t.expect("source")
    src = _read_endpoint(t)
    t.expect("target")
    tgt = _read_endpoint(t)
    filtered = isinstance(src, FilteredComplex)
    if filtered != isinstance(tgt, FilteredComplex):
        raise SerializationError("mixed filtered and plain endpoints")
    csrc = src.base if filtered else src
    ctgt = tgt.base if filtered else tgt
    t.expect("comps")
    n = t.int()
    comps = {}
    for _ in range(n):
        t.expect("comp")
        d = t.int()
        rows, cols = t.int(), t.int()
        if (rows, cols) != (ctgt.rank(d), csrc.rank(d)):
            raise SerializationError(f"comp {d} has wrong shape")
        comps[d] = Matrix(
            csrc.ring, rows, cols, tuple(csrc.ring.normalize(t.int()) for _ in range(rows * cols))
        )
    t.expect("end")
    chain = ChainMap.from_dict(csrc, ctgt, comps)
    if filtered:
        return FilteredMap(src, tgt, chain)
    return chain


def _read_functor(t: _Tokens):
    t.expect("functor")
    t.expect("objects")
    nobj = t.int()
    objects = tuple(t.next() for _ in range(nobj))
    t.expect("morphisms")
    nmor = t.int()
    morphisms = []
    for _ in range(nmor):
        t.expect("morphism")
        morphisms.append((t.next(), t.next(), t.next()))
    t.expect("identities")
    identities = {X: t.int() for X in objects}
    t.expect("composition")
    ncomp = t.int()
    composition = {}
    for _ in range(ncomp):
        t.expect("compose")
        g, f, c = t.int(), t.int(), t.int()
        composition[(g, f)] = c
    cat = FiniteCategory(objects, tuple(morphisms), identities, composition)
    cat.validate()
    t.expect("models")
    nmodels = t.int()
    models = tuple(t.next() for _ in range(nmodels))
    values = {}
    for X in objects:
        t.expect("value")
        got = t.next()
        if got != X:
            raise SerializationError(f"values out of order at {got}")
        values[X] = _read_complex(t)
    maps = {}
    for i in range(nmor):
        t.expect("arrow")
        if t.int() != i:
            raise SerializationError("arrows out of order")
        t.expect("comps")
        n = t.int()
        comps = {}
        src = values[morphisms[i][1]]
        tgt = values[morphisms[i][2]]
        for _ in range(n):
            t.expect("comp")
            d = t.int()
            rows, cols = t.int(), t.int()
            if (rows, cols) != (tgt.rank(d), src.rank(d)):
                raise SerializationError(f"arrow {i} comp {d} has wrong shape")
            comps[d] = Matrix(
                src.ring, rows, cols, tuple(src.ring.normalize(t.int()) for _ in range(rows * cols))
            )
        maps[i] = ChainMap.from_dict(src, tgt, comps)
    t.expect("end")
    K = FunctorComplex(cat, values, maps)
    G = ModelsCotriple(cat, models) if models else None
    return K, G


def parse_document(text: str):
    """Parse a canonical document; returns the corresponding value.

    Functor documents return a (FunctorComplex, ModelsCotriple | None) pair.
    """
    t = _Tokens(text)
    t.expect("cekit")
    v = t.int()
    if v != FORMAT_VERSION:
        raise SerializationError(f"unsupported format version {v}")
    kind = t.peek()
    readers = {
        "module": _read_module,
        "complex": _read_complex,
        "filtered-complex": _read_filtered,
        "map": _read_map,
        "functor": _read_functor,
    }
    if kind not in readers:
        raise SerializationError(f"unknown document kind {kind!r}")
    value = readers[kind](t)
    t.done()
    return value
