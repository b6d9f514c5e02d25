"""Chain homotopies, homotopy classes, and lifting along weak equivalences.

The convention throughout: h is a homotopy from f to g when
d h + h d = g - f degreewise.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    ChainMap,
    HomBasis,
    cone,
    homology_with_basis,
    hom_complex_with_basis,
    is_quasi_iso,
    shift,
)
from .linsys import LinearSystem
from .matrix import Matrix, kernel_basis, smith_normal_form, solve
from .modules import PresentedModule


@dataclass(frozen=True)
class Homotopy:
    """h: f => g with components h_d : X_d -> Y_{d+1}."""

    f: ChainMap
    g: ChainMap
    comps: tuple  # sorted tuple of (degree, Matrix)

    @staticmethod
    def from_dict(f: ChainMap, g: ChainMap, comps: dict) -> "Homotopy":
        X, Y = f.source, f.target
        items = []
        for d in sorted(comps):
            mat = comps[d]
            if mat.rows != Y.rank(d + 1) or mat.cols != X.rank(d):
                raise ValueError(f"homotopy component shape mismatch at degree {d}")
            items.append((d, mat))
        return Homotopy(f, g, tuple(items))

    def comp(self, d: int) -> Matrix:
        for deg, mat in self.comps:
            if deg == d:
                return mat
        X, Y = self.f.source, self.f.target
        return Matrix.zeros(X.ring, Y.rank(d + 1), X.rank(d))

    def verify(self) -> bool:
        """Check d h + h d = g - f modulo the target relations."""
        X, Y = self.f.source, self.f.target
        for d in X.degrees():
            lhs = Y.diff(d + 1) * self.comp(d) + self.comp(d - 1) * X.diff(d)
            rhs = self.g.comp(d) - self.f.comp(d)
            diff = lhs - rhs
            if not all(
                Y.module(d).is_zero_element(diff.col(j)) for j in range(diff.cols)
            ):
                return False
        return True


@dataclass(frozen=True)
class HomotopyEquivalence:
    """f: X -> Y and g: Y -> X with h: g f => id_X and k: f g => id_Y."""

    f: ChainMap
    g: ChainMap
    h: Homotopy
    k: Homotopy

    def verify(self) -> bool:
        return (
            self.f.is_chain_map()
            and self.g.is_chain_map()
            and self.h.verify()
            and self.k.verify()
        )


def find_homotopy(f: ChainMap, g: ChainMap, window: int | None = None):
    """Solve d h + h d = g - f for h, or return None.

    Target relations enter through slack unknowns, so the equation is solved
    as maps rather than as raw matrices.  With a window N the unknowns run
    over degrees <= N and the equations over degrees <= N - 1, so truncation
    never manufactures infeasibility.
    """
    X, Y = f.source, f.target
    ring = X.ring
    degs = sorted(set(X.degrees()) | set(Y.degrees()))
    if not degs:
        return Homotopy(f, g, ())
    unknown_degs = [d for d in degs if window is None or d <= window]
    eq_degs = [d for d in degs if window is None or d <= window - 1]
    if window is not None and not eq_degs:
        return Homotopy(f, g, ())
    sys = LinearSystem(ring)
    for d in unknown_degs:
        sys.block(f"h{d}", Y.rank(d + 1), X.rank(d))
    for d in eq_degs:
        rel = Y.module(d).relations
        sys.block(f"s{d}", rel.cols, X.rank(d))
    for d in eq_degs:
        rel = Y.module(d).relations
        terms = []
        if d in unknown_degs:
            terms.append((Y.diff(d + 1), f"h{d}", Matrix.identity(ring, X.rank(d))))
        if d - 1 in unknown_degs:
            terms.append(
                (Matrix.identity(ring, Y.rank(d)), f"h{d - 1}", X.diff(d))
            )
        terms.append((rel, f"s{d}", Matrix.identity(ring, X.rank(d))))
        sys.add_equation(terms, g.comp(d) - f.comp(d))
    sol = sys.solve()
    if sol is None:
        return None
    return Homotopy.from_dict(
        f, g, {d: sol[f"h{d}"] for d in unknown_degs if sol[f"h{d}"].rows}
    )


def are_homotopic(f: ChainMap, g: ChainMap, window: int | None = None) -> bool:
    return find_homotopy(f, g, window) is not None


def homotopy_classes(X: ChainComplex, Y: ChainComplex):
    """Classes of chain maps X -> Y up to homotopy.

    Returns (module, representatives): the degree-zero homology of the
    homomorphism complex, and one chain map per generator.  X and Y must be
    free degreewise.
    """
    H, basis = hom_complex_with_basis(X, Y)
    mod, cycles = homology_with_basis(H, 0)
    reps = []
    for j in range(mod.generators):
        comps = basis.decode(0, cycles.col(j))
        reps.append(ChainMap.from_dict(X, Y, comps))
    return mod, reps


# -- lifting -------------------------------------------------------------


def elementary_lift(f: ChainMap, d: int, a: Matrix, b: Matrix):
    """Solve f_d(c) = a and d(c) = b for c in the source of f at degree d.

    Requires d(a) = f_{d-1}(b).  The solution is assembled from a preimage
    of a and a kernel correction: c0 with f(c0) = a, then r = b - d(c0)
    lands in the kernel of f_{d-1} and is absorbed by a kernel element with
    prescribed boundary.  Returns None when any stage is infeasible.
    """
    X = f.source
    if not (f.target.diff(d) * a - f.comp(d - 1) * b).is_zero:
        raise ValueError("incompatible boundary data for elementary lift")
    c0 = solve(f.comp(d), a)
    if c0 is None:
        return None
    r = b - X.diff(d) * c0
    ker_low = kernel_basis(f.comp(d - 1))
    if solve(ker_low, r) is None:
        return None
    ker_top = kernel_basis(f.comp(d))
    lam = solve(X.diff(d) * ker_top, r)
    if lam is None:
        return None
    return c0 + ker_top * lam


def _is_degreewise_split_mono(j: ChainMap) -> bool:
    """Each component injective with free cokernel, so a split mono over Z
    and over Z/m alike: every invariant factor must be a unit."""
    Q = j.source
    for d in set(Q.degrees()) | set(j.target.degrees()):
        mat = j.comp(d)
        diag = smith_normal_form(mat).diagonal()
        units = [x for x in diag if x != 0]
        if len(units) != mat.cols or any(x != 1 for x in units):
            return False
    return True


def _postcompose(w: ChainMap, R: ChainComplex):
    """Hom(R, X) -> Hom(R, Y) induced by w: X -> Y, with its two bases."""
    HX, bX = hom_complex_with_basis(R, w.source)
    HY, bY = hom_complex_with_basis(R, w.target)
    ring = w.ring
    comps = {}
    for n in sorted(set(HX.degrees()) | set(HY.degrees())):
        segs_in, rin = bX.segments(n)
        segs_out, rout = bY.segments(n)
        out_off = {i: off for i, r, c, off in segs_out}
        data = [[0] * rin for _ in range(rout)]
        for i, r, c, off in segs_in:
            if i not in out_off:
                continue
            blk = w.comp(i + n).kron(Matrix.identity(ring, c))
            o = out_off[i]
            for rr in range(blk.rows):
                for cc in range(blk.cols):
                    if blk[rr, cc]:
                        data[o + rr][off + cc] = blk[rr, cc]
        comps[n] = Matrix(ring, rout, rin, tuple(x for row in data for x in row))
    return ChainMap.from_dict(HX, HY, comps), bX, bY


def _precompose(j: ChainMap, T: ChainComplex):
    """Hom(R, T) -> Hom(Q, T) induced by j: Q -> R, with its two bases."""
    HR, bR = hom_complex_with_basis(j.target, T)
    HQ, bQ = hom_complex_with_basis(j.source, T)
    ring = j.ring
    comps = {}
    for n in sorted(set(HR.degrees()) | set(HQ.degrees())):
        segs_in, rin = bR.segments(n)
        segs_out, rout = bQ.segments(n)
        in_off = {i: (r, c, off) for i, r, c, off in segs_in}
        data = [[0] * rin for _ in range(rout)]
        for i, r, c, off in segs_out:
            if i not in in_off:
                continue
            rin_i, cin_i, off_in = in_off[i]
            blk = Matrix.identity(ring, r).kron(j.comp(i).transpose())
            for rr in range(blk.rows):
                for cc in range(blk.cols):
                    if blk[rr, cc]:
                        data[off + rr][off_in + cc] = blk[rr, cc]
        comps[n] = Matrix(ring, rout, rin, tuple(x for row in data for x in row))
    return ChainMap.from_dict(HR, HQ, comps), bR, bQ


@dataclass(frozen=True)
class LiftResult:
    lift: ChainMap  # G: R -> X
    homotopy: Homotopy  # H: w G => F


def lift_up_to_homotopy(
    j: ChainMap,
    w: ChainMap,
    F: ChainMap,
    G0: ChainMap | None = None,
    lam: Homotopy | None = None,
):
    """Lift F: R -> Y through the weak equivalence w: X -> Y, extending G0.

    j: Q -> R must be a degreewise split mono between bounded free
    complexes, G0: Q -> X a partial lift, and lam a homotopy from w G0 to
    F j.  Returns a LiftResult (G with G j = G0, H j = lam) or None.

    The search is a single elementary lift inside the mapping cones of the
    two postcomposition maps Hom(R, X) -> Hom(R, Y) and
    Hom(Q, X) -> Hom(Q, Y), connected by restriction along j.
    """
    Q, R = j.source, j.target
    X, Y = w.source, w.target
    ring = w.ring
    for C in (Q, R, X, Y):
        if not C.is_free_degreewise:
            raise ValueError("lifting requires free degreewise complexes")
    if not _is_degreewise_split_mono(j):
        raise ValueError("lifting requires a degreewise split mono")
    if G0 is None:
        G0 = ChainMap.zero(Q, X)
    if lam is None:
        lam = Homotopy(w.compose(G0), F.compose(j), ())

    wR, bRX, bRY = _postcompose(w, R)
    wQ, bQX, bQY = _postcompose(w, Q)
    jX, _, _ = _precompose(j, X)
    jY, _, _ = _precompose(j, Y)
    CR = cone(wR, trim=False)
    CQ = cone(wQ, trim=False)

    # restriction of cones: degree n holds Hom(-, X)_{n-1} + Hom(-, Y)_n
    comps = {}
    for n in sorted(set(CR.degrees()) | set(CQ.degrees())):
        comps[n] = Matrix.block_diag(ring, [jX.comp(n - 1), jY.comp(n)])
    jcone = ChainMap.from_dict(CR, CQ, comps)

    a = _cone_element(bQX, bQY, 1, {d: G0.comp(d) for d in Q.degrees()}, dict(lam.comps))
    b = _cone_element(bRX, bRY, 0, {}, {d: F.comp(d) for d in R.degrees()})
    c = elementary_lift(jcone, 1, a, b)
    if c is None:
        return None
    gcomps, hcomps = _split_cone_element(bRX, bRY, 1, c)
    G = ChainMap.from_dict(R, X, gcomps)
    H = Homotopy.from_dict(w.compose(G), F, hcomps)
    return LiftResult(G, H)


def _cone_element(bX: HomBasis, bY: HomBasis, n: int, xcomps: dict, ycomps: dict):
    """Element of cone degree n: Hom(-, X)_{n-1} part then Hom(-, Y)_n part."""
    vx = bX.encode(n - 1, xcomps)
    vy = bY.encode(n, ycomps)
    return vx.vstack(vy)


def _split_cone_element(bX: HomBasis, bY: HomBasis, n: int, v: Matrix):
    rx = bX.rank(n - 1)
    ring = v.ring
    vx = Matrix(ring, rx, 1, tuple(v.entries[:rx]))
    vy = Matrix(ring, v.rows - rx, 1, tuple(v.entries[rx:]))
    return bX.decode(n - 1, vx), bY.decode(n, vy)


def lift_cofibrant(w: ChainMap, F: ChainMap):
    """Lift F: P -> Y through w: X -> Y for a bounded free P.

    Special case of lift_up_to_homotopy with empty partial data.
    """
    P = F.source
    zero = ChainComplex.zero(P.ring, P.lowest)
    j = ChainMap.zero(zero, P)
    return lift_up_to_homotopy(j, w, F)


def invert_weak_equivalence(w: ChainMap):
    """Homotopy inverse of a quasi-isomorphism between bounded free complexes.

    Returns a HomotopyEquivalence or None if w is not a quasi-isomorphism.
    """
    X, Y = w.source, w.target
    if not is_quasi_iso(w):
        return None
    res = lift_cofibrant(w, ChainMap.identity(Y))
    if res is None:
        return None
    v, k = res.lift, res.homotopy  # v: Y -> X, k: w v => id_Y
    h = find_homotopy(v.compose(w), ChainMap.identity(X))
    if h is None:
        return None
    return HomotopyEquivalence(w, v, h, k)
