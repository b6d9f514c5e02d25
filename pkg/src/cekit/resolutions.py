"""Free resolutions of modules and of bounded complexes, with Tor and Ext.

Over Z a finitely presented module resolves in length one, so everything
terminates.  Over Z/m resolutions can be periodic and are computed out to a
requested bound.
"""
from __future__ import annotations

from dataclasses import dataclass

from .complexes import ChainComplex, ChainMap, cone, homology, is_acyclic
from .matrix import Matrix, column_span_basis, kernel_basis
from .modules import ModuleMap, PresentedModule


@dataclass(frozen=True)
class ModuleResolution:
    """Free complex P in degrees >= 0 with augmentation P_0 -> M.

    Exact by construction: the image of each differential is the kernel of
    the previous one, and the image of d_1 is the relation span of M.
    """

    target: PresentedModule
    complex: ChainComplex
    augmentation: ModuleMap

    def verify(self, top: int | None = None) -> bool:
        P, M = self.complex, self.target
        if not P.is_free_degreewise:
            return False
        if not self.augmentation.is_well_defined():
            return False
        hi = P.highest if top is None else min(top, P.highest)
        # exactness in positive degrees below the computed top
        for d in range(1, hi):
            if not homology(P, d).is_trivial():
                return False
        # H_0 must map isomorphically onto M through the augmentation
        from .modules import is_module_iso, quotient_presentation

        h0 = quotient_presentation(
            P.ring, Matrix.identity(P.ring, P.rank(0)), P.diff(1)
        )
        ok, _ = is_module_iso(ModuleMap(h0, M, self.augmentation.matrix))
        return ok


def free_resolution_module(M: PresentedModule, length: int) -> ModuleResolution:
    """Resolution 0 <- M <- P_0 <- P_1 <- ... computed out to the bound.

    P_0 is free on the generators of M with the identity augmentation; each
    later differential is a kernel basis of the previous one.  Over Z the
    kernel of the first differential is trivial and the resolution stops.
    """
    ring = M.ring
    mods = [PresentedModule.free(ring, M.generators)]
    diffs = []
    current = column_span_basis(M.relations)
    for k in range(1, length + 1):
        if current.cols == 0:
            mods.append(PresentedModule.zero(ring))
            diffs.append(Matrix.zeros(ring, mods[-2].generators, 0))
            current = Matrix.zeros(ring, 0, 0)
            continue
        mods.append(PresentedModule.free(ring, current.cols))
        diffs.append(current)
        current = kernel_basis(current)
    P = ChainComplex.from_modules(ring, 0, mods, diffs).trim()
    if P.length == 0:
        P = ChainComplex.concentrated(PresentedModule.free(ring, M.generators))
    aug = ModuleMap(P.module(0), M, Matrix.identity(ring, M.generators))
    return ModuleResolution(M, P, aug)


@dataclass(frozen=True)
class ComplexResolution:
    """Degreewise free P with a quasi-isomorphism onto the target complex."""

    target: ChainComplex
    complex: ChainComplex
    augmentation: ChainMap

    def verify(self, window=None) -> bool:
        if not self.complex.is_free_degreewise:
            return False
        self.augmentation.validate()
        Cf = cone(self.augmentation)
        if window is None:
            window = range(Cf.lowest, Cf.highest + 1)
        return is_acyclic(Cf, window)


def free_resolution_complex(X: ChainComplex, bound: int | None = None) -> ComplexResolution:
    """Degreewise free replacement of a bounded complex.

    Already-free complexes are returned as their own resolution.  Otherwise
    each degree is resolved by a free module resolution and the columns are
    glued into a perturbed total complex: the vertical differentials carry
    the sign (-1)^p, the comparison maps lift the differential of X, and
    higher corrections d_k : Q_{p,q} -> Q_{p-k,q+k-1} are solved degreewise
    so the total differential squares to zero.

    Over Z/m the vertical resolutions are cut at the bound; the
    augmentation is then a quasi-isomorphism in degrees below
    X.lowest + bound.  Over Z no bound is needed.
    """
    ring = X.ring
    if X.is_free_degreewise:
        return ComplexResolution(X, X, ChainMap.identity(X))
    if X.length == 0:
        return ComplexResolution(X, X, ChainMap.identity(X))
    if bound is None:
        if ring.modulus is None:
            bound = 1
        else:
            raise ValueError("a bound is required over Z/m")

    ps = list(X.degrees())
    kmax = len(ps) - 1
    # headroom above the bound so every correction below the truncation
    # degree can be solved inside an exact range
    L = bound + 2 * kmax + 2
    res = {p: free_resolution_module(X.module(p), L) for p in ps}

    def Q(p: int, q: int) -> int:
        if p not in res or q < 0 or q > L:
            return 0
        return res[p].complex.rank(q)

    def delta(p: int, q: int) -> Matrix:
        return res[p].complex.diff(q)

    # d[k][(p, q)]: Q_{p,q} -> Q_{p-k, q+k-1}
    d: dict = {0: {}, 1: {}}
    for p in ps:
        for q in range(0, L + 1):
            sign = 1 if p % 2 == 0 else -1
            d[0][(p, q)] = delta(p, q).scale(sign)

    # comparison maps lifting the differential of X; at q = 0 the
    # augmentations are identity matrices so the lift is the matrix itself
    from .matrix import solve

    for p in ps:
        if p - 1 not in res:
            continue
        d[1][(p, 0)] = X.diff(p)
        for q in range(1, L + 1):
            rhs = d[1][(p, q - 1)] * delta(p, q)
            lam = solve(delta(p - 1, q), rhs)
            if lam is None:
                raise RuntimeError("comparison lift failed; resolution not exact")
            d[1][(p, q)] = lam

    for k in range(2, kmax + 1):
        d[k] = {}
        for p in ps:
            if p - k not in res:
                continue
            for q in range(0, L + 1):
                if q + k > L:
                    continue
                rhs = Matrix.zeros(ring, Q(p - k, q + k - 2), Q(p, q))
                for i in range(1, k):
                    j = k - i
                    # d_i after d_j : Q_{p,q} -> Q_{p-j,q+j-1} -> Q_{p-k,q+k-2}
                    left = d[i].get((p - j, q + j - 1))
                    right = d[j].get((p, q))
                    if left is not None and right is not None:
                        rhs = rhs + left * right
                if q > 0:
                    prev = d[k].get((p, q - 1))
                    if prev is not None:
                        rhs = rhs + prev * d[0][(p, q)]
                rhs = -rhs
                if Q(p - k, q + k - 1) == 0:
                    if not rhs.is_zero:
                        raise RuntimeError("higher correction failed; resolution not exact")
                    d[k][(p, q)] = Matrix.zeros(ring, 0, Q(p, q))
                    continue
                sol = solve(d[0][(p - k, q + k - 1)], rhs)
                if sol is None:
                    raise RuntimeError("higher correction failed; resolution not exact")
                d[k][(p, q)] = sol

    # assemble the total complex
    lo = X.lowest
    top = X.highest + bound
    offsets = {}
    mods = []
    for n in range(lo, top + 1):
        offs, off = [], 0
        for p in ps:
            q = n - p
            r = Q(p, q)
            if r:
                offs.append((p, q, off))
                off += r
        offsets[n] = (offs, off)
        mods.append(PresentedModule.free(ring, off))
    diffs = []
    for n in range(lo + 1, top + 1):
        offs_in, rin = offsets[n]
        offs_out, rout = offsets[n - 1]
        out_off = {(p, q): off for p, q, off in offs_out}
        data = [[0] * rin for _ in range(rout)]
        for p, q, off in offs_in:
            for k in sorted(d):
                mat = d[k].get((p, q))
                tgt = (p - k, q + k - 1)
                if mat is None or tgt not in out_off or mat.rows == 0:
                    continue
                o = out_off[tgt]
                for i in range(mat.rows):
                    for j in range(mat.cols):
                        v = mat[i, j]
                        if v:
                            data[o + i][off + j] = ring.normalize(data[o + i][off + j] + v)
        diffs.append(Matrix(ring, rout, rin, tuple(x for row in data for x in row)))
    P = ChainComplex.from_modules(ring, lo, mods, diffs)

    aug = {}
    for n in P.degrees():
        offs, rtot = offsets[n]
        rk = X.rank(n)
        blk = Matrix.zeros(ring, rk, rtot).to_lists()
        for p, q, off in offs:
            if q == 0 and p == n:
                for i in range(rk):
                    blk[i][off + i] = 1
        aug[n] = Matrix.from_rows(ring, blk) if rk else Matrix(ring, 0, rtot, ())
    eps = ChainMap.from_dict(P, X, aug)
    return ComplexResolution(X, P, eps)


# -- derived functors ----------------------------------------------------


def tensor_complex(P: ChainComplex, N: PresentedModule) -> ChainComplex:
    """P tensor N for degreewise free P: degree k is N^{rank P_k}.

    Generators are ordered (generator of P_k, generator of N); the
    differential is d kron identity.
    """
    ring = P.ring
    g = N.generators
    mods, diffs = [], []
    for d in P.degrees():
        r = P.rank(d)
        rel = Matrix.block_diag(ring, [N.relations] * r)
        mods.append(PresentedModule(ring, r * g, rel))
        if d > P.lowest:
            diffs.append(P.diff(d).kron(Matrix.identity(ring, g)))
    return ChainComplex.from_modules(ring, P.lowest, mods, diffs)


def hom_into_module_complex(P: ChainComplex, N: PresentedModule) -> ChainComplex:
    """Hom(P, N) for degreewise free P, regraded so degree -k holds Hom(P_k, N).

    The differential is precomposition, transpose kron identity.
    """
    ring = P.ring
    g = N.generators
    mods, diffs = [], []
    for d in range(P.highest, P.lowest - 1, -1):
        r = P.rank(d)
        rel = Matrix.block_diag(ring, [N.relations] * r)
        mods.append(PresentedModule(ring, r * g, rel))
        if d < P.highest:
            diffs.append(P.diff(d + 1).transpose().kron(Matrix.identity(ring, g)))
    return ChainComplex.from_modules(ring, -P.highest, mods, diffs)


def tor(M: PresentedModule, N: PresentedModule, top: int) -> list:
    """[Tor_0(M, N), ..., Tor_top(M, N)]."""
    res = free_resolution_module(M, top + 1)
    C = tensor_complex(res.complex, N)
    return [homology(C, d) for d in range(0, top + 1)]


def ext(M: PresentedModule, N: PresentedModule, top: int) -> list:
    """[Ext^0(M, N), ..., Ext^top(M, N)]."""
    res = free_resolution_module(M, top + 1)
    C = hom_into_module_complex(res.complex, N)
    return [homology(C, -d) for d in range(0, top + 1)]
