"""Increasing filtrations by generator weight: W_p, Gr, filtered homotopy,
filtered lifting, and the stagewise filtered resolution.

A filtration is carried by an integer weight per generator; W_p is the
subcomplex generated by weight <= p generators.  Bounded weights make every
filtration biregular for free.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import (
    ChainComplex,
    ChainMap,
    ComplexValidationError,
    cone,
    is_quasi_iso,
    path_with_maps,
    shift,
    validate as validate_complex,
)
from .homotopy import Homotopy, lift_up_to_homotopy
from .linsys import LinearSystem
from .matrix import Matrix, solve
from .modules import ModuleMap, PresentedModule, submodule
from .resolutions import free_resolution_complex


@dataclass(frozen=True)
class FilteredComplex:
    base: ChainComplex
    weights: tuple  # per degree, a tuple of ints, one per generator

    def __post_init__(self):
        if len(self.weights) != self.base.length:
            raise ValueError("one weight vector per degree required")
        for d, w in zip(self.base.degrees(), self.weights):
            if len(w) != self.base.rank(d):
                raise ValueError(f"weight count mismatch at degree {d}")

    def weight(self, d: int):
        if self.base.lowest <= d <= self.base.highest:
            return self.weights[d - self.base.lowest]
        return ()

    @property
    def min_weight(self) -> int:
        ws = [w for vec in self.weights for w in vec]
        return min(ws) if ws else 0

    @property
    def max_weight(self) -> int:
        ws = [w for vec in self.weights for w in vec]
        return max(ws) if ws else 0

    def weight_range(self):
        return range(self.min_weight, self.max_weight + 1)

    @staticmethod
    def trivial(C: ChainComplex, weight: int = 0) -> "FilteredComplex":
        return FilteredComplex(C, tuple((weight,) * C.rank(d) for d in C.degrees()))

    def validate(self) -> bool:
        """Base must be a complex and every W_p closed under the differential."""
        validate_complex(self.base)
        for p in self.weight_range():
            sub, incl = w_sub(self, p)
            validate_complex(sub)
        return True

    @property
    def is_weighted_free(self) -> bool:
        return self.base.is_free_degreewise


def _selection(ring, weights, p: int) -> Matrix:
    """Columns of the identity at indices of weight <= p."""
    idx = [i for i, w in enumerate(weights) if w <= p]
    n = len(weights)
    data = [[1 if i == j else 0 for j in idx] for i in range(n)]
    return Matrix.from_rows(ring, data) if n else Matrix(ring, 0, len(idx), ())


def w_sub(F: FilteredComplex, p: int):
    """(W_p as a complex, inclusion into the base).

    The degree-d piece is the submodule generated by the weight <= p
    generators; the restricted differential is solved through the inclusion,
    which fails loudly if the filtration is not differential-closed.
    """
    C = F.base
    ring = C.ring
    mods, incls = [], {}
    for d in C.degrees():
        gens = [
            C.module(d).element([1 if i == j else 0 for i in range(C.rank(d))])
            for j, w in enumerate(F.weight(d))
            if w <= p
        ]
        sub, inc = submodule(C.module(d), gens)
        mods.append(sub)
        incls[d] = inc.matrix
    diffs = []
    degs = list(C.degrees())
    for d in degs[1:]:
        rhs = C.diff(d) * incls[d]
        low = incls[d - 1].hstack(C.module(d - 1).relations)
        sol = solve(low, rhs)
        if sol is None:
            raise ComplexValidationError(
                f"differential leaves W_{p} at degree {d}; filtration invalid"
            )
        k = mods[d - 1 - C.lowest].generators
        diffs.append(Matrix(ring, k, rhs.cols, tuple(sol.entries[: k * rhs.cols])))
    sub = ChainComplex.from_modules(ring, C.lowest, mods, diffs)
    incl = ChainMap.from_dict(sub, C, incls)
    return sub, incl


def gr(F: FilteredComplex, p: int) -> ChainComplex:
    """W_p / W_{p-1} with the induced differential.

    For a free base this is free on the weight-p generators; in general it
    is computed as a double quotient on the W_p presentation.
    """
    C = F.base
    ring = C.ring
    if C.is_free_degreewise:
        # basis splitting: free on the weight-p generators
        mods, diffs = [], []
        for d in C.degrees():
            idx = [i for i, w in enumerate(F.weight(d)) if w == p]
            mods.append(PresentedModule.free(ring, len(idx)))
            if d > C.lowest:
                prev = [i for i, w in enumerate(F.weight(d - 1)) if w == p]
                full = C.diff(d)
                diffs.append(
                    Matrix.from_rows(
                        ring, [[full[i, j] for j in idx] for i in prev]
                    )
                    if prev
                    else Matrix(ring, 0, len(idx), ())
                )
        return ChainComplex.from_modules(ring, C.lowest, mods, diffs)
    Wp, _ = w_sub(F, p)
    # the W_{p-1} generators sit inside W_p: weight <= p-1 indices are a
    # prefix-compatible subset of the weight <= p indices
    mods, diffs = [], []
    degs = list(C.degrees())
    mats = {}
    for d in degs:
        idx_p = [i for i, w in enumerate(F.weight(d)) if w <= p]
        idx_low = [i for i, w in enumerate(F.weight(d)) if w <= p - 1]
        pos = {g: k for k, g in enumerate(idx_p)}
        n = len(idx_p)
        inc = [[1 if pos[g] == i else 0 for g in idx_low] for i in range(n)]
        incmat = (
            Matrix.from_rows(ring, inc) if n else Matrix(ring, 0, len(idx_low), ())
        )
        rel = incmat.hstack(Wp.module(d).relations)
        mods.append(PresentedModule(ring, n, rel))
        mats[d] = Wp.diff(d)
    for d in degs[1:]:
        diffs.append(mats[d])
    G = ChainComplex.from_modules(ring, C.lowest, mods, diffs)
    return G


@dataclass(frozen=True)
class FilteredMap:
    source: FilteredComplex
    target: FilteredComplex
    map: ChainMap

    def restrict(self, p: int) -> ChainMap:
        """Restriction W_p(f), solved through the inclusions."""
        S, incS = w_sub(self.source, p)
        T, incT = w_sub(self.target, p)
        comps = {}
        for d in S.degrees():
            rhs = self.map.comp(d) * incS.comp(d)
            low = incT.comp(d).hstack(self.target.base.module(d).relations)
            sol = solve(low, rhs)
            if sol is None:
                raise ValueError(f"map does not preserve W_{p} at degree {d}")
            k = T.rank(d)
            comps[d] = Matrix(S.ring, k, rhs.cols, tuple(sol.entries[: k * rhs.cols]))
        return ChainMap.from_dict(S, T, comps)

    def validate(self) -> bool:
        self.map.validate()
        for p in _joint_weight_range(self.source, self.target):
            self.restrict(p)
        return True

    def is_weight_compatible(self) -> bool:
        try:
            self.validate()
            return True
        except (ValueError, ComplexValidationError):
            return False


@dataclass(frozen=True)
class FilteredHomotopy:
    source: FilteredComplex
    target: FilteredComplex
    homotopy: Homotopy

    def validate(self) -> bool:
        if not self.homotopy.verify():
            return False
        # components must carry W_p into W_p
        for p in _joint_weight_range(self.source, self.target):
            S, incS = w_sub(self.source, p)
            T, incT = w_sub(self.target, p)
            for d in S.degrees():
                rhs = self.homotopy.comp(d) * incS.comp(d)
                low = incT.comp(d + 1).hstack(
                    self.target.base.module(d + 1).relations
                )
                if solve(low, rhs) is None:
                    return False
        return True


def _joint_weight_range(*fcs):
    lo = min(f.min_weight for f in fcs)
    hi = max(f.max_weight for f in fcs)
    return range(lo, hi + 1)


def is_filtered_quasi_iso(f: FilteredMap, window=None) -> bool:
    """Every W_p(f) a quasi-isomorphism.

    The graded criterion (every Gr_p(f) a quasi-isomorphism) is computed as
    well and the two verdicts must agree; a mismatch raises.
    """
    sub_ok = True
    for p in _joint_weight_range(f.source, f.target):
        if not is_quasi_iso(f.restrict(p), window):
            sub_ok = False
            break
    gr_ok = True
    for p in _joint_weight_range(f.source, f.target):
        if not is_quasi_iso(_gr_map(f, p), window):
            gr_ok = False
            break
    if sub_ok != gr_ok:
        raise RuntimeError("W_p and Gr_p quasi-isomorphism criteria disagree")
    return sub_ok


def _gr_map(f: FilteredMap, p: int) -> ChainMap:
    """Induced map Gr_p(source) -> Gr_p(target)."""
    GS, GT = gr(f.source, p), gr(f.target, p)
    if f.source.base.is_free_degreewise and f.target.base.is_free_degreewise:
        comps = {}
        for d in GS.degrees():
            idx_s = [i for i, w in enumerate(f.source.weight(d)) if w == p]
            idx_t = [i for i, w in enumerate(f.target.weight(d)) if w == p]
            full = f.map.comp(d)
            comps[d] = (
                Matrix.from_rows(
                    f.source.base.ring, [[full[i, j] for j in idx_s] for i in idx_t]
                )
                if idx_t
                else Matrix(f.source.base.ring, 0, len(idx_s), ())
            )
        return ChainMap.from_dict(GS, GT, comps)
    rp = f.restrict(p)
    return ChainMap.from_dict(GS, GT, {d: rp.comp(d) for d in GS.degrees()})


def filtered_cylinder(F: FilteredComplex):
    """Cylinder with inherited weights and its three filtered structure maps."""
    from .complexes import cylinder

    Cyl, i0, i1, p = cylinder(F.base)
    ws = []
    for d in Cyl.degrees():
        ws.append(tuple(F.weight(d)) + tuple(F.weight(d - 1)) + tuple(F.weight(d)))
    FCyl = FilteredComplex(Cyl, tuple(ws))
    return (
        FCyl,
        FilteredMap(F, FCyl, i0),
        FilteredMap(F, FCyl, i1),
        FilteredMap(FCyl, F, p),
    )


def find_filtered_homotopy(f: FilteredMap, g: FilteredMap, window: int | None = None):
    """Filtered homotopy from f to g, or None.

    Same linear system as find_homotopy plus, for each weight stage p, a
    factorization unknown forcing h(W_p) inside W_p of the target.
    """
    X, Y = f.source, g.target
    XC, YC = X.base, Y.base
    ring = XC.ring
    degs = sorted(set(XC.degrees()) | set(YC.degrees()))
    if not degs:
        return FilteredHomotopy(X, Y, Homotopy(f.map, g.map, ()))
    unknown_degs = [d for d in degs if window is None or d <= window]
    eq_degs = [d for d in degs if window is None or d <= window - 1]
    sys = LinearSystem(ring)
    for d in unknown_degs:
        sys.block(f"h{d}", YC.rank(d + 1), XC.rank(d))
    for d in eq_degs:
        rel = YC.module(d).relations
        sys.block(f"s{d}", rel.cols, XC.rank(d))
        terms = []
        if d in unknown_degs:
            terms.append((YC.diff(d + 1), f"h{d}", Matrix.identity(ring, XC.rank(d))))
        if d - 1 in unknown_degs:
            terms.append((Matrix.identity(ring, YC.rank(d)), f"h{d - 1}", XC.diff(d)))
        terms.append((rel, f"s{d}", Matrix.identity(ring, XC.rank(d))))
        sys.add_equation(terms, g.map.comp(d) - f.map.comp(d))
    # weight compatibility: h incl_{X,p} = incl_{Y,p} u + relations slack
    stages = list(_joint_weight_range(X, Y))
    if stages:
        stages = stages[:-1]  # the top stage is the whole complex
    for p in stages:
        for d in unknown_degs:
            selX = _selection(ring, X.weight(d), p)
            if selX.cols == 0:
                continue
            S, incS = None, selX  # free-selection inclusion on generators
            # target inclusion of W_p(Y)_{d+1}
            TY, incT = w_sub(Y, p)
            it = incT.comp(d + 1)
            rel = YC.module(d + 1).relations
            sys.block(f"u{p},{d}", it.cols, selX.cols)
            sys.block(f"t{p},{d}", rel.cols, selX.cols)
            sys.add_equation(
                [
                    (Matrix.identity(ring, YC.rank(d + 1)), f"h{d}", selX),
                    (-it, f"u{p},{d}", Matrix.identity(ring, selX.cols)),
                    (-rel, f"t{p},{d}", Matrix.identity(ring, selX.cols)),
                ],
                Matrix.zeros(ring, YC.rank(d + 1), selX.cols),
            )
    sol = sys.solve()
    if sol is None:
        return None
    h = Homotopy.from_dict(
        f.map, g.map, {d: sol[f"h{d}"] for d in unknown_degs if sol[f"h{d}"].rows}
    )
    return FilteredHomotopy(X, Y, h)


def are_filtered_homotopic(f: FilteredMap, g: FilteredMap, window=None) -> bool:
    return find_filtered_homotopy(f, g, window) is not None


@dataclass(frozen=True)
class FilteredLiftResult:
    lift: FilteredMap  # g: P -> Y
    homotopy: FilteredHomotopy  # w g => f


def filtered_lift(w: FilteredMap, f: FilteredMap):
    """Lift f: P -> X through the filtered quasi-isomorphism w: Y -> X.

    P, Y, X must be weighted-free.  The lift is built by induction on the
    weight: each stage extends the previous lift along the split inclusion
    W_{p-1}P -> W_pP by a single lifting-up-to-homotopy step inside W_p.
    Returns a FilteredLiftResult or None.
    """
    P, X = f.source, f.target
    Y = w.source
    for F in (P, X, Y):
        if not F.is_weighted_free:
            raise ValueError("filtered lifting requires weighted-free complexes")
    ring = P.base.ring
    stages = sorted(set(_joint_weight_range(P, X, Y)))
    G_prev = None  # ChainMap W_{p-1}P -> W_{p-1}Y
    H_prev = None  # Homotopy at stage p-1
    for p in stages:
        subP, _ = w_sub(P, p)
        wp = w.restrict(p)
        fp = f.restrict(p)
        if G_prev is None:
            zero = ChainComplex.zero(ring, subP.lowest)
            j = ChainMap.zero(zero, subP)
            res = lift_up_to_homotopy(j, wp, fp)
        else:
            j = _stage_inclusion(P, p - 1, p)
            iY = _stage_inclusion(Y, p - 1, p)
            G0 = ChainMap.from_dict(
                j.source,
                wp.source,
                {d: iY.comp(d) * G_prev.comp(d) for d in j.source.degrees()},
            )
            lam = Homotopy.from_dict(
                wp.compose(G0),
                fp.compose(j),
                {
                    d: _pad_rows(H_prev.comp(d), X, p - 1, p, d + 1)
                    for d in j.source.degrees()
                },
            )
            res = lift_up_to_homotopy(j, wp, fp, G0, lam)
        if res is None:
            return None
        G_prev, H_prev = res.lift, res.homotopy
    if G_prev is None:
        zl = ChainMap.zero(P.base, Y.base)
        return FilteredLiftResult(
            FilteredMap(P, Y, zl),
            FilteredHomotopy(P, X, Homotopy(w.map.compose(zl), f.map, ())),
        )
    g = FilteredMap(P, Y, ChainMap.from_dict(P.base, Y.base, {d: G_prev.comp(d) for d in P.base.degrees()}))
    hom = Homotopy.from_dict(
        w.map.compose(g.map), f.map, {d: H_prev.comp(d) for d in P.base.degrees()}
    )
    return FilteredLiftResult(g, FilteredHomotopy(P, X, hom))


def _stage_inclusion(F: FilteredComplex, lo_p: int, hi_p: int) -> ChainMap:
    """W_{lo_p}F -> W_{hi_p}F as free complexes of generator selections."""
    A, _ = w_sub(F, lo_p)
    B, _ = w_sub(F, hi_p)
    ring = F.base.ring
    comps = {}
    for d in F.base.degrees():
        idx_a = [i for i, w in enumerate(F.weight(d)) if w <= lo_p]
        idx_b = [i for i, w in enumerate(F.weight(d)) if w <= hi_p]
        pos = {g: k for k, g in enumerate(idx_b)}
        data = [[1 if pos[g] == i else 0 for g in idx_a] for i in range(len(idx_b))]
        comps[d] = (
            Matrix.from_rows(ring, data)
            if idx_b
            else Matrix(ring, 0, len(idx_a), ())
        )
    return ChainMap.from_dict(A, B, comps)


def _pad_rows(mat: Matrix, F: FilteredComplex, lo_p: int, hi_p: int, d: int) -> Matrix:
    """Reindex a column block from W_{lo_p}F_d coordinates into W_{hi_p}F_d."""
    ring = F.base.ring
    idx_a = [i for i, w in enumerate(F.weight(d)) if w <= lo_p]
    idx_b = [i for i, w in enumerate(F.weight(d)) if w <= hi_p]
    pos = {g: k for k, g in enumerate(idx_b)}
    out = [[0] * mat.cols for _ in range(len(idx_b))]
    for r, g in enumerate(idx_a):
        for c in range(mat.cols):
            out[pos[g]][c] = mat[r, c]
    return (
        Matrix.from_rows(ring, out) if idx_b else Matrix(ring, 0, mat.cols, ())
    )


@dataclass(frozen=True)
class FilteredResolution:
    target: FilteredComplex
    resolution: FilteredComplex
    augmentation: FilteredMap

    def verify(self, window=None) -> bool:
        if not self.resolution.is_weighted_free:
            return False
        self.augmentation.map.validate()
        for p in _joint_weight_range(self.resolution, self.target):
            wp = self.augmentation.restrict(p)
            if not is_quasi_iso(wp, window):
                return False
        return True


def filtered_resolution(X: FilteredComplex, bound: int | None = None) -> FilteredResolution:
    """Weighted-free replacement with a filtered quasi-isomorphism onto X.

    Stage induction on the weight p: given the previous stage epsilon
    into W_{p-1}X, compose with the inclusion into W_pX, take the path
    complex of that composite, resolve it by a free complex, and attach the
    resolving generators in weight p through a mapping cone.  The second
    component of the resolving map is automatically the homotopy making the
    new augmentation a chain map.
    """
    if X.is_weighted_free:
        return FilteredResolution(
            X, X, FilteredMap(X, X, ChainMap.identity(X.base))
        )
    ring = X.base.ring
    stages = sorted(set(X.weight_range()))
    P_prev: ChainComplex | None = None
    weights_prev: dict | None = None
    eps_prev: ChainMap | None = None
    for p in stages:
        Wp, inclp = w_sub(X, p)
        if P_prev is None:
            res = free_resolution_complex(Wp, bound)
            P_prev = res.complex
            eps_prev = res.augmentation
            weights_prev = {d: (p,) * P_prev.rank(d) for d in P_prev.degrees()}
            continue
        # rho: previous resolution into the current filtration stage
        lowdegs = sorted(set(P_prev.degrees()) | set(Wp.degrees()))
        rho = ChainMap.from_dict(
            P_prev,
            Wp,
            {d: _lift_through(inclp, X, p - 1, eps_prev, d) for d in lowdegs},
        )
        L, projP, projX = path_with_maps(rho)
        res = free_resolution_complex(L, bound)
        Gp, s = res.complex, res.augmentation
        xi = projP.compose(s)  # G_p -> P_{p-1}
        s2 = projX.compose(s)  # second component, the chain homotopy
        P_new = cone(xi, trim=False)
        # epsilon on the cone: s2 on the shifted part, previous rho on the rest
        comps = {}
        for d in P_new.degrees():
            comps[d] = s2.comp(d - 1).hstack(rho.comp(d))
        eps_new = ChainMap.from_dict(P_new, Wp, comps)
        weights_new = {}
        for d in P_new.degrees():
            weights_new[d] = (p,) * Gp.rank(d - 1) + tuple(weights_prev.get(d, ()))
        # promote everything into base coordinates of W_p for the next stage
        P_prev = P_new
        eps_prev = eps_new
        weights_prev = weights_new
    assert P_prev is not None
    weights = tuple(weights_prev.get(d, ()) for d in P_prev.degrees())
    P = FilteredComplex(P_prev, weights)
    # the final stage's target is W_pmax X; include into the base
    _, incl_top = w_sub(X, stages[-1])
    eps = incl_top.compose(eps_prev)
    return FilteredResolution(X, P, FilteredMap(P, X, eps))


def _lift_through(inclp: ChainMap, X: FilteredComplex, prev_p: int, eps_prev: ChainMap, d: int) -> Matrix:
    """Component of (W_{p-1}X -> W_pX) composed with the previous epsilon."""
    _, incl_prev = w_sub(X, prev_p)
    # express the W_{p-1} inclusion in W_p coordinates
    tgt = inclp.source
    rhs = incl_prev.comp(d) * eps_prev.comp(d)
    low = inclp.comp(d).hstack(X.base.module(d).relations)
    sol = solve(low, rhs)
    if sol is None:
        raise RuntimeError("stage inclusion failed; filtration invalid")
    k = tgt.rank(d)
    ring = X.base.ring
    return Matrix(ring, k, rhs.cols, tuple(sol.entries[: k * rhs.cols]))
