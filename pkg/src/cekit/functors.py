"""Finite index categories, complex-valued functors, the model-set cotriple,
the simplicial bar construction, cofibrancy and acyclicity certificates, and
the acyclic-models comparison harness.

All functor values are degreewise free complexes over one shared ring, so
naturality and simplicial identities are exact matrix identities.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    ChainMap,
    DoubleComplex,
    cone,
    total,
    total_offsets,
    is_quasi_iso,
)
from .homotopy import Homotopy, find_homotopy
from .linsys import LinearSystem
from .matrix import Matrix, kernel_basis, smith_normal_form, solve
from .modules import ModuleMap, PresentedModule, is_module_iso, quotient_presentation


class CategoryError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteCategory:
    objects: tuple  # object names
    morphisms: tuple  # (name, source, target)
    identities: dict  # object -> morphism index
    composition: dict  # (g, f) -> index of g after f

    def validate(self) -> bool:
        objs = set(self.objects)
        for name, s, t in self.morphisms:
            if s not in objs or t not in objs:
                raise CategoryError(f"morphism {name} has unknown endpoint")
        for X in self.objects:
            i = self.identities[X]
            _, s, t = self.morphisms[i]
            if s != X or t != X:
                raise CategoryError(f"identity of {X} has wrong endpoints")
        for g, (gn, gs, gt) in enumerate(self.morphisms):
            for f, (fn, fs, ft) in enumerate(self.morphisms):
                if ft != gs:
                    if (g, f) in self.composition:
                        raise CategoryError("composite defined for non-composable pair")
                    continue
                if (g, f) not in self.composition:
                    raise CategoryError(f"missing composite {gn} after {fn}")
                c = self.composition[(g, f)]
                _, cs, ct = self.morphisms[c]
                if cs != fs or ct != gt:
                    raise CategoryError(f"composite {gn} after {fn} has wrong endpoints")
        for X in self.objects:
            i = self.identities[X]
            for f, (fn, fs, ft) in enumerate(self.morphisms):
                if ft == X and self.composition[(i, f)] != f:
                    raise CategoryError("left unit law fails")
                if fs == X and self.composition[(f, i)] != f:
                    raise CategoryError("right unit law fails")
        for h in range(len(self.morphisms)):
            for g in range(len(self.morphisms)):
                if (h, g) not in self.composition:
                    continue
                for f in range(len(self.morphisms)):
                    if (g, f) not in self.composition:
                        continue
                    if self.composition[(h, self.composition[(g, f)])] != self.composition[(self.composition[(h, g)], f)]:
                        raise CategoryError("associativity fails")
        return True

    def compose(self, g: int, f: int) -> int:
        return self.composition[(g, f)]

    def source(self, f: int):
        return self.morphisms[f][1]

    def target(self, f: int):
        return self.morphisms[f][2]

    def morphisms_between(self, A, B):
        return [i for i, (_, s, t) in enumerate(self.morphisms) if s == A and t == B]

    def full_subcategory(self, objs):
        """(subcategory, morphism index map old -> new)."""
        objs = tuple(o for o in self.objects if o in objs)
        keep = [
            i
            for i, (_, s, t) in enumerate(self.morphisms)
            if s in objs and t in objs
        ]
        remap = {old: new for new, old in enumerate(keep)}
        morphs = tuple(self.morphisms[i] for i in keep)
        idents = {X: remap[self.identities[X]] for X in objs}
        comp = {
            (remap[g], remap[f]): remap[c]
            for (g, f), c in self.composition.items()
            if g in remap and f in remap
        }
        sub = FiniteCategory(objs, morphs, idents, comp)
        return sub, remap

    @staticmethod
    def one_object() -> "FiniteCategory":
        return FiniteCategory(("*",), (("id", "*", "*"),), {"*": 0}, {(0, 0): 0})

    @staticmethod
    def arrow() -> "FiniteCategory":
        morphs = (("id0", "0", "0"), ("id1", "1", "1"), ("u", "0", "1"))
        comp = {
            (0, 0): 0,
            (1, 1): 1,
            (2, 0): 2,
            (1, 2): 2,
        }
        return FiniteCategory(("0", "1"), morphs, {"0": 0, "1": 1}, comp)


@dataclass(frozen=True)
class FunctorComplex:
    category: FiniteCategory
    values: dict  # object -> ChainComplex
    maps: dict  # morphism index -> ChainMap

    def value(self, X) -> ChainComplex:
        return self.values[X]

    def map(self, f: int) -> ChainMap:
        return self.maps[f]

    @property
    def ring(self):
        return self.values[self.category.objects[0]].ring

    def validate(self) -> bool:
        for X, C in self.values.items():
            if not C.is_free_degreewise:
                raise CategoryError(f"value at {X} is not free degreewise")
        for i, (name, s, t) in enumerate(self.category.morphisms):
            self.maps[i].validate()
        for X in self.category.objects:
            if not self.maps[self.category.identities[X]].equals(
                ChainMap.identity(self.values[X])
            ):
                raise CategoryError(f"identity morphism at {X} is not the identity map")
        for (g, f), c in self.category.composition.items():
            if not self.maps[c].equals(self.maps[g].compose(self.maps[f])):
                raise CategoryError("functor does not respect composition")
        return True

    @staticmethod
    def constant(cat: FiniteCategory, C: ChainComplex) -> "FunctorComplex":
        vals = {X: C for X in cat.objects}
        maps = {i: ChainMap.identity(C) for i in range(len(cat.morphisms))}
        return FunctorComplex(cat, vals, maps)

    @staticmethod
    def zero(cat: FiniteCategory, ring) -> "FunctorComplex":
        Z = ChainComplex.zero(ring, 0)
        return FunctorComplex.constant(cat, Z)

    def restrict(self, objs) -> "FunctorComplex":
        sub, remap = self.category.full_subcategory(objs)
        vals = {X: self.values[X] for X in sub.objects}
        maps = {new: self.maps[old] for old, new in remap.items()}
        return FunctorComplex(sub, vals, maps)


@dataclass(frozen=True)
class NaturalMap:
    source: FunctorComplex
    target: FunctorComplex
    comps: dict  # object -> ChainMap

    def comp(self, X) -> ChainMap:
        return self.comps[X]

    def validate(self) -> bool:
        cat = self.source.category
        for X in cat.objects:
            self.comps[X].validate()
        for i, (name, s, t) in enumerate(cat.morphisms):
            lhs = self.comps[t].compose(self.source.map(i))
            rhs = self.target.map(i).compose(self.comps[s])
            if not lhs.equals(rhs):
                raise CategoryError(f"naturality fails at {name}")
        return True

    @staticmethod
    def identity(K: FunctorComplex) -> "NaturalMap":
        return NaturalMap(
            K, K, {X: ChainMap.identity(K.value(X)) for X in K.category.objects}
        )

    @staticmethod
    def zero(K: FunctorComplex, L: FunctorComplex) -> "NaturalMap":
        return NaturalMap(
            K,
            L,
            {X: ChainMap.zero(K.value(X), L.value(X)) for X in K.category.objects},
        )

    def compose(self, other: "NaturalMap") -> "NaturalMap":
        return NaturalMap(
            other.source,
            self.target,
            {
                X: self.comps[X].compose(other.comps[X])
                for X in self.source.category.objects
            },
        )


@dataclass(frozen=True)
class NaturalHomotopy:
    f: NaturalMap
    g: NaturalMap
    comps: dict  # object -> Homotopy

    def verify(self) -> bool:
        cat = self.f.source.category
        for X in cat.objects:
            if not self.comps[X].verify():
                return False
        # components natural
        K, L = self.f.source, self.f.target
        for i, (name, s, t) in enumerate(cat.morphisms):
            for d in K.value(s).degrees():
                lhs = L.map(i).comp(d + 1) * self.comps[s].comp(d)
                rhs = self.comps[t].comp(d) * K.map(i).comp(d)
                if not (lhs - rhs).is_zero:
                    return False
        return True


@dataclass(frozen=True)
class ModelsCotriple:
    category: FiniteCategory
    models: tuple  # subset of objects

    def __post_init__(self):
        if not self.models:
            raise CategoryError("model set must be nonempty")
        for M in self.models:
            if M not in self.category.objects:
                raise CategoryError(f"model {M} is not an object")

    def summands(self, X):
        """Canonical summand order for (GK)(X): (model index, morphism index)."""
        out = []
        for mi, M in enumerate(self.models):
            for f in self.category.morphisms_between(M, X):
                out.append((M, f))
        return out


@dataclass(frozen=True)
class CotripleApplication:
    cotriple: ModelsCotriple
    base: FunctorComplex
    result: FunctorComplex
    summands: dict  # object -> tuple of (model object, morphism index)

    def offset(self, X, k: int, d: int) -> int:
        """Offset of summand k inside (G base)(X) at degree d."""
        off = 0
        for M, f in self.summands[X][:k]:
            off += self.base.value(M).rank(d)
        return off


def apply_cotriple(G: ModelsCotriple, K: FunctorComplex) -> CotripleApplication:
    """(GK)(X) = direct sum over (M, f: M -> X) of K(M), with G(a)<f> = <af>."""
    cat = G.category
    ring = K.ring
    from .modules import direct_sum

    summands = {X: tuple(G.summands(X)) for X in cat.objects}
    values = {}
    for X in cat.objects:
        parts = [K.value(M) for M, f in summands[X]]
        if not parts:
            values[X] = ChainComplex.zero(ring, 0)
            continue
        lo = min(p.lowest for p in parts)
        hi = max(p.highest for p in parts)
        mods, diffs = [], []
        for d in range(lo, hi + 1):
            mods.append(direct_sum([p.module(d) for p in parts]))
            if d > lo:
                diffs.append(Matrix.block_diag(ring, [p.diff(d) for p in parts]))
        values[X] = ChainComplex.from_modules(ring, lo, mods, diffs)
    maps = {}
    for a, (name, X, Y) in enumerate(cat.morphisms):
        src, tgt = values[X], values[Y]
        comps = {}
        for d in sorted(set(src.degrees()) | set(tgt.degrees())):
            data = [[0] * src.rank(d) for _ in range(tgt.rank(d))]
            for k, (M, f) in enumerate(summands[X]):
                af = cat.compose(a, f)
                kt = summands[Y].index((M, af))
                r = K.value(M).rank(d)
                so = _sum_offset(K, summands[X], k, d)
                to = _sum_offset(K, summands[Y], kt, d)
                for i in range(r):
                    data[to + i][so + i] = 1
            comps[d] = Matrix(
                ring,
                tgt.rank(d),
                src.rank(d),
                tuple(x for row in data for x in row),
            )
        maps[a] = ChainMap.from_dict(src, tgt, comps)
    GK = FunctorComplex(cat, values, maps)
    return CotripleApplication(G, K, GK, summands)


def _sum_offset(K: FunctorComplex, summands, k: int, d: int) -> int:
    return sum(K.value(M).rank(d) for M, f in summands[:k])


def summand_inclusion(app: CotripleApplication, X, k: int) -> ChainMap:
    """<f>: K(M) -> (GK)(X) for summand k = (M, f)."""
    M, f = app.summands[X][k]
    src = app.base.value(M)
    tgt = app.result.value(X)
    ring = app.base.ring
    comps = {}
    for d in tgt.degrees():
        r = src.rank(d)
        off = app.offset(X, k, d)
        data = [[1 if (i - off) == j and off <= i < off + r else 0 for j in range(r)] for i in range(tgt.rank(d))]
        comps[d] = (
            Matrix.from_rows(ring, data)
            if tgt.rank(d)
            else Matrix(ring, 0, r, ())
        )
    return ChainMap.from_dict(src, tgt, comps)


def counit(app: CotripleApplication) -> NaturalMap:
    """epsilon_K: GK -> K, epsilon composed with <f> equals K(f)."""
    K = app.base
    ring = K.ring
    comps = {}
    for X in K.category.objects:
        src = app.result.value(X)
        tgt = K.value(X)
        mats = {}
        for d in sorted(set(src.degrees()) | set(tgt.degrees())):
            blocks = [K.map(f).comp(d) for M, f in app.summands[X]]
            m = Matrix.zeros(ring, tgt.rank(d), 0)
            for b in blocks:
                m = m.hstack(b)
            if m.cols != src.rank(d):
                m = m.hstack(Matrix.zeros(ring, tgt.rank(d), src.rank(d) - m.cols))
            mats[d] = m
        comps[X] = ChainMap.from_dict(src, tgt, mats)
    return NaturalMap(app.result, K, comps)


def comultiplication(app: CotripleApplication, app2: CotripleApplication) -> NaturalMap:
    """delta_K: GK -> G(GK), delta composed with <f> equals <<f>>.

    app2 must be the application of the cotriple to app.result.
    """
    K = app.base
    ring = K.ring
    cat = K.category
    comps = {}
    for X in cat.objects:
        src = app.result.value(X)
        tgt = app2.result.value(X)
        mats = {}
        for d in sorted(set(src.degrees()) | set(tgt.degrees())):
            data = [[0] * src.rank(d) for _ in range(tgt.rank(d))]
            for k, (M, f) in enumerate(app.summands[X]):
                so = app.offset(X, k, d)
                outer = app2.offset(X, k, d)
                inner_idx = app.summands[M].index((M, cat.identities[M]))
                inner = app.offset(M, inner_idx, d)
                r = K.value(M).rank(d)
                for i in range(r):
                    data[outer + inner + i][so + i] = 1
            mats[d] = Matrix(
                ring, tgt.rank(d), src.rank(d), tuple(x for row in data for x in row)
            )
        comps[X] = ChainMap.from_dict(src, tgt, mats)
    return NaturalMap(app.result, app2.result, comps)


def g_of_natural(
    phi: NaturalMap, appA: CotripleApplication, appB: CotripleApplication
) -> NaturalMap:
    """G(phi): G(source) -> G(target), block diagonal over summands.

    appA and appB are the cotriple applications to the source and target.
    """
    cat = appA.base.category
    ring = appA.base.ring
    comps = {}
    for X in cat.objects:
        src = appA.result.value(X)
        tgt = appB.result.value(X)
        mats = {}
        for d in sorted(set(src.degrees()) | set(tgt.degrees())):
            blocks = [phi.comps[M].comp(d) for M, f in appA.summands[X]]
            mats[d] = (
                Matrix.block_diag(ring, blocks)
                if blocks
                else Matrix.zeros(ring, tgt.rank(d), src.rank(d))
            )
        comps[X] = ChainMap.from_dict(src, tgt, mats)
    return NaturalMap(appA.result, appB.result, comps)


# -- bar construction ----------------------------------------------------


@dataclass(frozen=True)
class BarResult:
    cotriple: ModelsCotriple
    base: FunctorComplex
    functor: FunctorComplex  # Tot, truncated to degrees <= bound
    augmentation: NaturalMap  # BK -> K
    levels: tuple  # levels[n].result = G^{n+1} K
    doubles: dict  # object -> DoubleComplex
    bound: int

    def face(self, n: int, i: int) -> NaturalMap:
        """delta^n_i = G^i applied to the counit at level n - i."""
        phi = counit(self.levels[n - i])
        for t in range(1, i + 1):
            appA = self.levels[n - i + t]
            appB = self.levels[n - i + t - 1]
            phi = g_of_natural(phi, appA, appB)
        return phi


def bar(G: ModelsCotriple, K: FunctorComplex, bound: int) -> BarResult:
    """Simplicial bar construction B_n = G^{n+1}K totalized and truncated.

    The horizontal differential is the alternating sum of the face maps; the
    vertical differentials carry the sign (-1)^p in the total complex.  The
    augmentation is induced by the counit on the bottom column.
    """
    cat = G.category
    ring = K.ring
    levels = []
    cur = K
    for n in range(bound + 1):
        app = apply_cotriple(G, cur)
        levels.append(app)
        cur = app.result
    res = BarResult(G, K, None, None, tuple(levels), {}, bound)  # temp for face()

    doubles = {}
    for X in cat.objects:
        mods, horiz, vert = {}, {}, {}
        for p in range(bound + 1):
            col = levels[p].result.value(X)
            for q in range(0, bound + 1):
                r = col.rank(q)
                if r:
                    mods[(p, q)] = PresentedModule.free(ring, r)
                if q >= 1:
                    vert[(p, q)] = col.diff(q)
        for p in range(1, bound + 1):
            faces = [res.face(p, i) for i in range(p + 1)]
            tgt = levels[p - 1].result.value(X)
            src = levels[p].result.value(X)
            for q in range(0, bound + 1):
                m = Matrix.zeros(ring, tgt.rank(q), src.rank(q))
                for i, fc in enumerate(faces):
                    term = fc.comps[X].comp(q)
                    m = m + term if i % 2 == 0 else m - term
                horiz[(p, q)] = m
        doubles[X] = DoubleComplex(ring, mods, horiz, vert)

    values = {X: total(doubles[X]).truncate_above(bound) for X in cat.objects}
    maps = {}
    for a, (name, X, Y) in enumerate(cat.morphisms):
        src, tgt = values[X], values[Y]
        comps = {}
        for n in range(0, bound + 1):
            offs_in, rin = total_offsets(doubles[X], n)
            offs_out, rout = total_offsets(doubles[Y], n)
            out_off = {(p, q): off for p, q, off in offs_out}
            data = [[0] * rin for _ in range(rout)]
            for p, q, off in offs_in:
                blk = levels[p].result.map(a).comp(q)
                if (p, q) not in out_off:
                    if not blk.is_zero:
                        raise CategoryError("bar morphism block out of range")
                    continue
                o = out_off[(p, q)]
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        if blk[i, j]:
                            data[o + i][off + j] = blk[i, j]
            comps[n] = Matrix(
                ring, rout, rin, tuple(x for row in data for x in row)
            )
        maps[a] = ChainMap.from_dict(src, tgt, comps)
    BK = FunctorComplex(cat, values, maps)

    eps0 = counit(levels[0])
    aug = {}
    for X in cat.objects:
        src = values[X]
        tgt = K.value(X)
        comps = {}
        for n in src.degrees():
            offs, rtot = total_offsets(doubles[X], n)
            m = Matrix.zeros(ring, tgt.rank(n), rtot).to_lists()
            for p, q, off in offs:
                if p == 0:
                    blk = eps0.comps[X].comp(q)
                    for i in range(blk.rows):
                        for j in range(blk.cols):
                            m[i][off + j] = blk[i, j]
            comps[n] = (
                Matrix.from_rows(ring, m) if tgt.rank(n) else Matrix(ring, 0, rtot, ())
            )
        aug[X] = ChainMap.from_dict(src, tgt, comps)
    augmentation = NaturalMap(BK, K, aug)
    return BarResult(G, K, BK, augmentation, tuple(levels), doubles, bound)


@dataclass(frozen=True)
class BarContraction:
    """Per-object contraction data for the augmented bar of GK.

    section: GK -> B(GK) in the bottom column; contraction s raises the
    total degree by one, mapping the (p, q) summand into (p+1, q) by
    (-1)^{p+1} G^{p+1}(delta_K).
    """

    bar_result: BarResult
    section: dict  # object -> ChainMap GK(X) -> B(GK)(X)
    contraction: dict  # object -> dict degree -> Matrix

    def verify(self, top: int | None = None) -> bool:
        br = self.bar_result
        eps = br.augmentation
        hi = br.bound - 1 if top is None else min(top, br.bound - 1)
        for X in br.base.category.objects:
            B = br.functor.value(X)
            KX = br.base.value(X)
            eta, epsX = self.section[X], eps.comps[X]
            for d in range(0, hi + 1):
                if not (epsX.comp(d) * eta.comp(d) - Matrix.identity(B.ring, KX.rank(d))).is_zero:
                    return False
                s_d = self.contraction[X].get(d, Matrix.zeros(B.ring, B.rank(d + 1), B.rank(d)))
                s_prev = self.contraction[X].get(d - 1, Matrix.zeros(B.ring, B.rank(d), B.rank(d - 1)))
                lhs = B.diff(d + 1) * s_d + s_prev * B.diff(d)
                rhs = Matrix.identity(B.ring, B.rank(d)) - eta.comp(d) * epsX.comp(d)
                if not (lhs - rhs).is_zero:
                    return False
        return True


def contraction_for_GK(G: ModelsCotriple, K: FunctorComplex, bound: int) -> BarContraction:
    """Explicit contraction of the augmented bar of GK, built from delta."""
    app0 = apply_cotriple(G, K)
    GK = app0.result
    br = bar(G, GK, bound)
    cat = G.category
    ring = K.ring
    # delta: GK -> G(GK) = levels[0].result
    delta = comultiplication(app0, br.levels[0])
    # gdeltas[t] = G^t(delta): G^t(GK) -> G^{t+1}(GK)
    gdeltas = [delta]
    for t in range(1, bound + 1):
        gdeltas.append(g_of_natural(gdeltas[-1], br.levels[t - 1], br.levels[t]))
    section = {}
    contraction = {}
    for X in cat.objects:
        B = br.functor.value(X)
        GKX = GK.value(X)
        comps = {}
        for d in B.degrees():
            offs, rtot = total_offsets(br.doubles[X], d)
            m = [[0] * GKX.rank(d) for _ in range(rtot)]
            for p, q, off in offs:
                if p == 0:
                    blk = delta.comps[X].comp(q)
                    for i in range(blk.rows):
                        for j in range(blk.cols):
                            m[off + i][j] = blk[i, j]
            comps[d] = Matrix(
                ring, rtot, GKX.rank(d), tuple(x for row in m for x in row)
            )
        section[X] = ChainMap.from_dict(GKX, B, comps)
        smat = {}
        for d in range(0, br.bound):
            offs_in, rin = total_offsets(br.doubles[X], d)
            offs_out, rout = total_offsets(br.doubles[X], d + 1)
            out_off = {(p, q): off for p, q, off in offs_out}
            data = [[0] * rin for _ in range(rout)]
            for p, q, off in offs_in:
                if (p + 1, q) not in out_off or p + 1 > br.bound:
                    continue
                blk = gdeltas[p + 1].comps[X].comp(q)
                sign = 1 if (p + 1) % 2 == 0 else -1
                o = out_off[(p + 1, q)]
                for i in range(blk.rows):
                    for j in range(blk.cols):
                        if blk[i, j]:
                            data[o + i][off + j] = ring.normalize(sign * blk[i, j])
            smat[d] = Matrix(ring, rout, rin, tuple(x for row in data for x in row))
        contraction[X] = smat
    return BarContraction(br, section, contraction)


# -- equivalence classes -------------------------------------------------


def is_pointwise_homotopy_equivalence(phi: NaturalMap, window: int | None = None) -> bool:
    """Each component a homotopy equivalence: its cone is contractible."""
    for X in phi.source.category.objects:
        C = cone(phi.comps[X])
        h = find_homotopy(ChainMap.identity(C), ChainMap.zero(C, C), window)
        if h is None:
            return False
    return True


def is_natural_homotopy_equivalence(phi: NaturalMap, window: int | None = None) -> bool:
    """One joint system: a natural inverse with natural homotopies on both
    sides.  Strictly stronger than the pointwise class."""
    K, L = phi.source, phi.target
    cat = K.category
    ring = K.ring
    sys = LinearSystem(ring)
    degs = {}
    for X in cat.objects:
        dd = sorted(set(K.value(X).degrees()) | set(L.value(X).degrees()))
        degs[X] = [d for d in dd if window is None or d <= window]
        for d in degs[X]:
            sys.block(f"psi{X},{d}", K.value(X).rank(d), L.value(X).rank(d))
            sys.block(f"h{X},{d}", K.value(X).rank(d + 1), K.value(X).rank(d))
            sys.block(f"k{X},{d}", L.value(X).rank(d + 1), L.value(X).rank(d))
    for X in cat.objects:
        KX, LX = K.value(X), L.value(X)
        for d in degs[X]:
            if window is not None and d > window - 1:
                continue
            ident_K = Matrix.identity(ring, KX.rank(d))
            ident_L = Matrix.identity(ring, LX.rank(d))
            # psi a chain map
            terms = [(KX.diff(d), f"psi{X},{d}", Matrix.identity(ring, LX.rank(d)))]
            if d - 1 in degs[X]:
                terms.append((Matrix.identity(ring, KX.rank(d - 1)).scale(-1), f"psi{X},{d - 1}", LX.diff(d)))
            sys.add_equation(terms, Matrix.zeros(ring, KX.rank(d - 1), LX.rank(d)))
            # d h + h d = id - psi phi
            terms = [
                (KX.diff(d + 1), f"h{X},{d}", ident_K),
                (Matrix.identity(ring, KX.rank(d)), f"psi{X},{d}", phi.comps[X].comp(d)),
            ]
            if d - 1 in degs[X]:
                terms.append((ident_K, f"h{X},{d - 1}", KX.diff(d)))
            sys.add_equation(terms, ident_K)
            # d k + k d = id - phi psi
            terms = [
                (LX.diff(d + 1), f"k{X},{d}", ident_L),
                (phi.comps[X].comp(d), f"psi{X},{d}", ident_L),
            ]
            if d - 1 in degs[X]:
                terms.append((ident_L, f"k{X},{d - 1}", LX.diff(d)))
            sys.add_equation(terms, ident_L)
    for a, (name, X, Y) in enumerate(cat.morphisms):
        for d in degs[X]:
            if d not in degs[Y]:
                continue
            if window is not None and d > window - 1:
                continue
            # naturality of psi, h, k
            sys.add_equation(
                [
                    (K.map(a).comp(d), f"psi{X},{d}", Matrix.identity(ring, L.value(X).rank(d))),
                    (Matrix.identity(ring, K.value(Y).rank(d)).scale(-1), f"psi{Y},{d}", L.map(a).comp(d)),
                ],
                Matrix.zeros(ring, K.value(Y).rank(d), L.value(X).rank(d)),
            )
            sys.add_equation(
                [
                    (K.map(a).comp(d + 1), f"h{X},{d}", Matrix.identity(ring, K.value(X).rank(d))),
                    (Matrix.identity(ring, K.value(Y).rank(d + 1)).scale(-1), f"h{Y},{d}", K.map(a).comp(d)),
                ],
                Matrix.zeros(ring, K.value(Y).rank(d + 1), K.value(X).rank(d)),
            )
            sys.add_equation(
                [
                    (L.map(a).comp(d + 1), f"k{X},{d}", Matrix.identity(ring, L.value(X).rank(d))),
                    (Matrix.identity(ring, L.value(Y).rank(d + 1)).scale(-1), f"k{Y},{d}", L.map(a).comp(d)),
                ],
                Matrix.zeros(ring, L.value(Y).rank(d + 1), L.value(X).rank(d)),
            )
    return sys.solve() is not None


def is_g_cofibrant(G: ModelsCotriple, K: FunctorComplex, bound: int, cls: str = "h") -> bool:
    """Whether the bar augmentation BK -> K lies in the selected class
    within the window (cls in {"h", "ph", "qis"})."""
    br = bar(G, K, bound)
    phi = br.augmentation
    if cls == "ph":
        return is_pointwise_homotopy_equivalence(phi, bound - 1)
    if cls == "h":
        return is_natural_homotopy_equivalence(phi, bound - 1)
    if cls == "qis":
        return all(
            is_quasi_iso(phi.comps[X], range(0, bound - 1))
            for X in K.category.objects
        )
    raise ValueError("unknown class")


def strictness_example():
    """A natural map in S_ph but not S_h, on the arrow category.

    Both values are contractible (so the zero map to the zero functor is a
    pointwise homotopy equivalence), but any natural contraction is forced
    into a contradiction by the connecting morphism.
    """
    from .rings import ZZ

    cat = FiniteCategory.arrow()
    K0 = ChainComplex.from_modules(
        ZZ, 0, [PresentedModule.free(ZZ, 1)] * 2, [Matrix.from_rows(ZZ, [[1]])]
    )
    K1 = ChainComplex.from_modules(
        ZZ, 1, [PresentedModule.free(ZZ, 1)] * 2, [Matrix.from_rows(ZZ, [[-1]])]
    )
    Ku = ChainMap.from_dict(K0, K1, {1: Matrix.from_rows(ZZ, [[1]])})
    K = FunctorComplex(
        cat,
        {"0": K0, "1": K1},
        {0: ChainMap.identity(K0), 1: ChainMap.identity(K1), 2: Ku},
    )
    L = FunctorComplex.zero(cat, ZZ)
    return NaturalMap.zero(K, L)


# -- natural transformation classes --------------------------------------


class NatSpace:
    """Natural chain maps K -> L modulo natural homotopies, as a canonical
    presentation with explicit cycle representatives."""

    def __init__(self, K: FunctorComplex, L: FunctorComplex, top: int | None = None):
        self.K, self.L = K, L
        cat = K.category
        ring = K.ring
        self.ring = ring
        self.slots = []  # (X, d) in canonical order
        for X in cat.objects:
            for d in K.value(X).degrees():
                if top is None or d <= top:
                    self.slots.append((X, d))
        self.offsets = {}
        off = 0
        for X, d in self.slots:
            r = L.value(X).rank(d) * K.value(X).rank(d)
            self.offsets[(X, d)] = off
            off += r
        self.size = off

        fsys = LinearSystem(ring)
        for X, d in self.slots:
            fsys.block(f"f{X},{d}", L.value(X).rank(d), K.value(X).rank(d))
        for X, d in self.slots:
            KX, LX = K.value(X), L.value(X)
            terms = [(LX.diff(d), f"f{X},{d}", Matrix.identity(ring, KX.rank(d)))]
            if (X, d - 1) in self.offsets:
                terms.append(
                    (Matrix.identity(ring, LX.rank(d - 1)).scale(-1), f"f{X},{d - 1}", KX.diff(d))
                )
            fsys.add_equation(terms, Matrix.zeros(ring, LX.rank(d - 1), KX.rank(d)))
        for a, (name, Xs, Xt) in enumerate(cat.morphisms):
            for d in K.value(Xs).degrees():
                if (Xs, d) not in self.offsets or (Xt, d) not in self.offsets:
                    continue
                fsys.add_equation(
                    [
                        (L.map(a).comp(d), f"f{Xs},{d}", Matrix.identity(ring, K.value(Xs).rank(d))),
                        (Matrix.identity(ring, L.value(Xt).rank(d)).scale(-1), f"f{Xt},{d}", K.map(a).comp(d)),
                    ],
                    Matrix.zeros(ring, L.value(Xt).rank(d), K.value(Xs).rank(d)),
                )
        self._fsys = fsys
        self.cycles = kernel_basis(fsys.matrix()) if fsys.size else Matrix(ring, 0, 0, ())

        hsys = LinearSystem(ring)
        for X, d in self.slots:
            hsys.block(f"h{X},{d}", L.value(X).rank(d + 1), K.value(X).rank(d))
        for a, (name, Xs, Xt) in enumerate(cat.morphisms):
            for d in K.value(Xs).degrees():
                if (Xs, d) not in self.offsets or (Xt, d) not in self.offsets:
                    continue
                hsys.add_equation(
                    [
                        (L.map(a).comp(d + 1), f"h{Xs},{d}", Matrix.identity(ring, K.value(Xs).rank(d))),
                        (Matrix.identity(ring, L.value(Xt).rank(d + 1)).scale(-1), f"h{Xt},{d}", K.map(a).comp(d)),
                    ],
                    Matrix.zeros(ring, L.value(Xt).rank(d + 1), K.value(Xs).rank(d)),
                )
        self._hsys = hsys
        hker = kernel_basis(hsys.matrix()) if hsys.size else Matrix(ring, 0, 0, ())
        self.boundaries = self._apply_d(hker)
        self.module = quotient_presentation(ring, self.cycles, self.boundaries)

    def _apply_d(self, hcols: Matrix) -> Matrix:
        """D h = d h + h d, from flattened h-space to flattened f-space."""
        ring = self.ring
        K, L = self.K, self.L
        rows = self.size
        out = [[0] * hcols.cols for _ in range(rows)]
        for c in range(hcols.cols):
            hvec = hcols.col(c)
            hmats = self._decode_h(hvec)
            for X, d in self.slots:
                KX, LX = K.value(X), L.value(X)
                m = LX.diff(d + 1) * hmats[(X, d)]
                if (X, d - 1) in hmats:
                    m = m + hmats[(X, d - 1)] * KX.diff(d)
                off = self.offsets[(X, d)]
                for k, v in enumerate(m.entries):
                    out[off + k][c] = v
        return Matrix(ring, rows, hcols.cols, tuple(x for row in out for x in row))

    def _decode_h(self, vec: Matrix) -> dict:
        hmats = {}
        off = 0
        for X, d in self.slots:
            r = self.L.value(X).rank(d + 1)
            c = self.K.value(X).rank(d)
            hmats[(X, d)] = Matrix(
                self.ring, r, c, tuple(vec.entries[off : off + r * c])
            )
            off += r * c
        return hmats

    def decode(self, vec: Matrix) -> NaturalMap:
        comps = {}
        for X in self.K.category.objects:
            mats = {}
            for d in self.K.value(X).degrees():
                if (X, d) not in self.offsets:
                    continue
                off = self.offsets[(X, d)]
                r = self.L.value(X).rank(d)
                c = self.K.value(X).rank(d)
                mats[d] = Matrix(
                    self.ring, r, c, tuple(vec.entries[off : off + r * c])
                )
            comps[X] = ChainMap.from_dict(self.K.value(X), self.L.value(X), mats)
        return NaturalMap(self.K, self.L, comps)

    def encode(self, phi: NaturalMap) -> Matrix:
        vals = [0] * self.size
        for X, d in self.slots:
            off = self.offsets[(X, d)]
            for k, v in enumerate(phi.comps[X].comp(d).entries):
                vals[off + k] = v
        return Matrix.column(self.ring, vals)

    def representatives(self):
        return [self.decode(self.cycles.col(j)) for j in range(self.module.generators)]

    def class_of(self, vec: Matrix):
        """Coordinates of a flattened natural chain map in the presentation."""
        aug = self.cycles.hstack(self.boundaries)
        sol = solve(aug, vec)
        if sol is None:
            raise ValueError("vector is not a natural chain map cycle")
        g = self.module.generators
        return Matrix(self.ring, g, 1, tuple(sol.entries[:g]))


def natural_transformation_classes(
    K: FunctorComplex, L: FunctorComplex, top: int | None = None
) -> PresentedModule:
    return NatSpace(K, L, top).module


# -- H0 and acyclicity ---------------------------------------------------


@dataclass(frozen=True)
class H0Data:
    functor: FunctorComplex  # concentrated in degree 0, free values
    projection: NaturalMap  # tau: L -> H0 L
    sections: dict  # object -> Matrix, right inverse of the projection


def h0_functor(L: FunctorComplex) -> H0Data:
    """H0 of each value as a degree-0 functor; requires free H0.

    The projection is read off the row operations of the Smith form of the
    first differential; its section is the matching columns of the inverse.
    Rejects instances whose H0 has torsion.
    """
    cat = L.category
    ring = L.ring
    values, qs, sigmas = {}, {}, {}
    for X in cat.objects:
        C = L.value(X)
        s = smith_normal_form(C.diff(1))
        diag = s.diagonal()
        for v in diag:
            if v not in (0, 1):
                raise ValueError(f"H0 at {X} is not free (invariant factor {v})")
        free_rows = [i for i in range(C.rank(0)) if i >= len(diag) or diag[i] == 0]
        q = Matrix.from_rows(ring, [s.U.row_list(i) for i in free_rows]) if free_rows else Matrix(ring, 0, C.rank(0), ())
        sigma_cols = [s.U_inv.col_list(i) for i in free_rows]
        sigma = (
            Matrix(ring, C.rank(0), len(free_rows), tuple(
                sigma_cols[j][i] for i in range(C.rank(0)) for j in range(len(free_rows))
            ))
            if free_rows
            else Matrix(ring, C.rank(0), 0, ())
        )
        values[X] = ChainComplex.concentrated(PresentedModule.free(ring, len(free_rows)))
        qs[X], sigmas[X] = q, sigma
    maps = {}
    for a, (name, Xs, Xt) in enumerate(cat.morphisms):
        m = qs[Xt] * L.map(a).comp(0) * sigmas[Xs]
        maps[a] = ChainMap.from_dict(values[Xs], values[Xt], {0: m})
    H0 = FunctorComplex(cat, values, maps)
    tau = NaturalMap(
        L,
        H0,
        {X: ChainMap.from_dict(L.value(X), values[X], {0: qs[X]}) for X in cat.objects},
    )
    return H0Data(H0, tau, sigmas)


def is_g_acyclic(G: ModelsCotriple, L: FunctorComplex, bound: int, cls: str = "qis") -> bool:
    """Whether G applied to the canonical map L -> H0 L is in the class."""
    data = h0_functor(L)
    appL = apply_cotriple(G, L)
    appH = apply_cotriple(G, data.functor)
    gtau = g_of_natural(data.projection, appL, appH)
    if cls == "ph":
        return is_pointwise_homotopy_equivalence(gtau, bound)
    if cls == "h":
        return is_natural_homotopy_equivalence(gtau, bound)
    if cls == "qis":
        return all(
            is_quasi_iso(gtau.comps[X], range(0, bound))
            for X in L.category.objects
        )
    raise ValueError("unknown class")


# -- comparison reports --------------------------------------------------


@dataclass(frozen=True)
class RestrictionReport:
    full_classes: PresentedModule
    restricted_classes: PresentedModule
    matrix: Matrix
    is_isomorphism: bool


def restriction_check(G: ModelsCotriple, K: FunctorComplex, L: FunctorComplex, top: int | None = None) -> RestrictionReport:
    """The restriction map [K, L] -> [K|_M, L|_M] on model objects, with an
    isomorphism verdict."""
    full = NatSpace(K, L, top)
    KM = K.restrict(G.models)
    LM = L.restrict(G.models)
    restr = NatSpace(KM, LM, top)
    cols = []
    for rep in full.representatives():
        vec = [0] * restr.size
        for (X, d), off in restr.offsets.items():
            for k, v in enumerate(rep.comps[X].comp(d).entries):
                vec[off + k] = v
        cols.append(restr.class_of(Matrix.column(restr.ring, vec)))
    g = full.module.generators
    mat = Matrix.zeros(full.ring, restr.module.generators, 0)
    for c in cols:
        mat = mat.hstack(c)
    if g == 0:
        mat = Matrix.zeros(full.ring, restr.module.generators, 0)
    fmap = ModuleMap(full.module, restr.module, mat)
    ok, _ = is_module_iso(fmap)
    return RestrictionReport(full.module, restr.module, mat, ok)


@dataclass(frozen=True)
class AcyclicModelsReport:
    classes_KL: PresentedModule  # [K, L]
    classes_KH0L: PresentedModule  # [K, H0 L]
    classes_restricted: PresentedModule  # [K|_M, H0 L|_M]
    classes_H0: PresentedModule  # [H0 K|_M, H0 L|_M]
    factor_tau_iso: bool
    factor_restriction_iso: bool
    factor_h0_iso: bool
    composite_matrix: Matrix
    is_bijective: bool


def acyclic_models_check(G: ModelsCotriple, K: FunctorComplex, L: FunctorComplex, top: int | None = None) -> AcyclicModelsReport:
    """Factorized comparison [K, L] -> [H0 K|_M, H0 L|_M].

    Factors: postcomposition with tau_L, restriction to the models, and the
    induced map on H0.  Each factor's isomorphism status is reported along
    with the composite verdict.
    """
    ring = K.ring
    dataL = h0_functor(L)
    S1 = NatSpace(K, L, top)
    S2 = NatSpace(K, dataL.functor, top)
    # factor 1: postcompose with tau
    cols1 = []
    for rep in S1.representatives():
        pushed = dataL.projection.compose(rep)
        cols1.append(S2.class_of(S2.encode(pushed)))
    m1 = _assemble(ring, S2.module.generators, cols1)
    f1 = ModuleMap(S1.module, S2.module, m1)
    iso1, _ = is_module_iso(f1)
    # factor 2: restrict to models
    KM = K.restrict(G.models)
    HM = dataL.functor.restrict(G.models)
    S3 = NatSpace(KM, HM, top)
    cols2 = []
    for rep in S2.representatives():
        vec = [0] * S3.size
        for (X, d), off in S3.offsets.items():
            for k, v in enumerate(rep.comps[X].comp(d).entries):
                vec[off + k] = v
        cols2.append(S3.class_of(Matrix.column(ring, vec)))
    m2 = _assemble(ring, S3.module.generators, cols2)
    f2 = ModuleMap(S2.module, S3.module, m2)
    iso2, _ = is_module_iso(f2)
    # factor 3: induced map on H0 of the source
    dataKM = h0_functor(KM)
    S4 = NatSpace(dataKM.functor, HM, top)
    cols3 = []
    for rep in S3.representatives():
        comps = {}
        for X in KM.category.objects:
            m = rep.comps[X].comp(0) * dataKM.sections[X]
            comps[X] = ChainMap.from_dict(
                dataKM.functor.value(X), HM.value(X), {0: m}
            )
        pushed = NaturalMap(dataKM.functor, HM, comps)
        cols3.append(S4.class_of(S4.encode(pushed)))
    m3 = _assemble(ring, S4.module.generators, cols3)
    f3 = ModuleMap(S3.module, S4.module, m3)
    iso3, _ = is_module_iso(f3)
    composite = f3.compose(f2).compose(f1)
    ok, _ = is_module_iso(composite)
    return AcyclicModelsReport(
        S1.module, S2.module, S3.module, S4.module, iso1, iso2, iso3, composite.matrix, ok
    )


def _assemble(ring, rows: int, cols) -> Matrix:
    m = Matrix.zeros(ring, rows, 0)
    for c in cols:
        m = m.hstack(c)
    return m
