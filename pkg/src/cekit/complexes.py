"""Bounded-below chain complexes with finitely presented degrees.

The explicit constructions live here: shift, mapping cone, cylinder, path
complex, complex of homogeneous homomorphisms, total complex of a double
complex, and homology through presentation arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .matrix import Matrix, kernel_basis
from .modules import (
    IllDefinedMapError,
    ModuleMap,
    PresentedModule,
    quotient_presentation,
)
from .rings import Ring


class ComplexValidationError(ValueError):
    pass


@dataclass(frozen=True)
class ChainComplex:
    ring: Ring
    lowest: int
    modules: tuple  # PresentedModule for degrees lowest .. lowest+len-1
    diffs: tuple  # diffs[i]: modules[i] -> modules[i-1], i = 1..len-1 (Matrix)

    def __post_init__(self):
        if len(self.diffs) != max(0, len(self.modules) - 1):
            raise ValueError("differential count must be len(modules) - 1")

    # -- structure -------------------------------------------------------
    @property
    def length(self) -> int:
        return len(self.modules)

    @property
    def highest(self) -> int:
        return self.lowest + self.length - 1

    def degrees(self):
        return range(self.lowest, self.lowest + self.length)

    def module(self, d: int) -> PresentedModule:
        if self.lowest <= d <= self.highest:
            return self.modules[d - self.lowest]
        return PresentedModule.zero(self.ring)

    def rank(self, d: int) -> int:
        return self.module(d).generators

    def diff(self, d: int) -> Matrix:
        """Matrix of the differential C_d -> C_{d-1}."""
        i = d - self.lowest
        if 1 <= i < self.length:
            return self.diffs[i - 1]
        return Matrix.zeros(self.ring, self.rank(d - 1), self.rank(d))

    def diff_map(self, d: int) -> ModuleMap:
        return ModuleMap(self.module(d), self.module(d - 1), self.diff(d))

    @property
    def is_free_degreewise(self) -> bool:
        return all(m.is_free_presentation for m in self.modules)

    @staticmethod
    def zero(ring: Ring, lowest: int = 0) -> "ChainComplex":
        return ChainComplex(ring, lowest, (), ())

    @staticmethod
    def concentrated(M: PresentedModule, degree: int = 0) -> "ChainComplex":
        return ChainComplex(M.ring, degree, (M,), ())

    @staticmethod
    def from_modules(ring: Ring, lowest: int, modules, diffs) -> "ChainComplex":
        return ChainComplex(ring, lowest, tuple(modules), tuple(diffs))

    def trim(self) -> "ChainComplex":
        """Drop zero modules at both ends."""
        mods = list(self.modules)
        lo = self.lowest
        while mods and mods[0].generators == 0:
            mods.pop(0)
            lo += 1
        while mods and mods[-1].generators == 0:
            mods.pop()
        if not mods:
            return ChainComplex.zero(self.ring, 0)
        diffs = tuple(self.diff(d) for d in range(lo + 1, lo + len(mods)))
        return ChainComplex(self.ring, lo, tuple(mods), diffs)

    def truncate_above(self, top: int) -> "ChainComplex":
        """Keep degrees <= top (stupid truncation)."""
        if top >= self.highest:
            return self
        if top < self.lowest:
            return ChainComplex.zero(self.ring, self.lowest)
        n = top - self.lowest + 1
        return ChainComplex(self.ring, self.lowest, self.modules[:n], self.diffs[: n - 1])

    def __str__(self) -> str:
        parts = [f"{d}:{self.module(d)}" for d in self.degrees()]
        return f"Complex[{', '.join(parts)}]"


def validate(C: ChainComplex) -> bool:
    """Check well-definedness of each differential and dd = 0.

    Raises ComplexValidationError naming the first failing degree.
    """
    for d in C.degrees():
        try:
            C.diff_map(d).check_well_defined()
        except IllDefinedMapError as exc:
            raise ComplexValidationError(
                f"differential at degree {d} is ill-defined: {exc}"
            ) from exc
    for d in C.degrees():
        if d - 2 < C.lowest:
            continue
        square = C.diff_map(d - 1).compose(C.diff_map(d))
        if not square.equals(ModuleMap.zero(C.module(d), C.module(d - 2))):
            raise ComplexValidationError(
                f"differential squared is nonzero at degree {d}"
            )
    return True


@dataclass(frozen=True)
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    comps: tuple  # sorted tuple of (degree, Matrix); zero elsewhere

    @staticmethod
    def from_dict(source, target, comps: dict) -> "ChainMap":
        items = []
        for d in sorted(comps):
            mat = comps[d]
            if mat.rows != target.rank(d) or mat.cols != source.rank(d):
                raise ValueError(f"component shape mismatch at degree {d}")
            if not mat.is_zero:
                items.append((d, mat))
        return ChainMap(source, target, tuple(items))

    def comp(self, d: int) -> Matrix:
        for deg, mat in self.comps:
            if deg == d:
                return mat
        return Matrix.zeros(self.source.ring, self.target.rank(d), self.source.rank(d))

    def comp_map(self, d: int) -> ModuleMap:
        return ModuleMap(self.source.module(d), self.target.module(d), self.comp(d))

    @property
    def ring(self) -> Ring:
        return self.source.ring

    @staticmethod
    def identity(C: ChainComplex) -> "ChainMap":
        return ChainMap.from_dict(
            C, C, {d: Matrix.identity(C.ring, C.rank(d)) for d in C.degrees()}
        )

    @staticmethod
    def zero(source: ChainComplex, target: ChainComplex) -> "ChainMap":
        return ChainMap(source, target, ())

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self after other."""
        degs = sorted({d for d, _ in other.comps} | {d for d, _ in self.comps})
        return ChainMap.from_dict(
            other.source,
            self.target,
            {d: self.comp(d) * other.comp(d) for d in degs},
        )

    def __add__(self, other: "ChainMap") -> "ChainMap":
        degs = sorted({d for d, _ in self.comps} | {d for d, _ in other.comps})
        return ChainMap.from_dict(
            self.source, self.target, {d: self.comp(d) + other.comp(d) for d in degs}
        )

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        degs = sorted({d for d, _ in self.comps} | {d for d, _ in other.comps})
        return ChainMap.from_dict(
            self.source, self.target, {d: self.comp(d) - other.comp(d) for d in degs}
        )

    def __neg__(self) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple((d, -m) for d, m in self.comps))

    def validate(self, check_squares: bool = True) -> bool:
        """Well-definedness plus the chain-map squares."""
        degs = set(self.source.degrees()) | set(self.target.degrees())
        for d in sorted(degs):
            self.comp_map(d).check_well_defined()
        if check_squares:
            for d in sorted(degs):
                lhs = self.target.diff_map(d).compose(self.comp_map(d))
                rhs = self.comp_map(d - 1).compose(self.source.diff_map(d))
                if not lhs.equals(rhs):
                    raise ComplexValidationError(
                        f"chain-map square fails at degree {d}"
                    )
        return True

    def is_chain_map(self) -> bool:
        try:
            self.validate()
            return True
        except (ComplexValidationError, IllDefinedMapError):
            return False

    def equals(self, other: "ChainMap") -> bool:
        degs = {d for d, _ in self.comps} | {d for d, _ in other.comps}
        return all(self.comp_map(d).equals(other.comp_map(d)) for d in degs)


# -- constructions -------------------------------------------------------


def shift(C: ChainComplex, n: int) -> ChainComplex:
    """(C[n])_i = C_{i-n} with differential (-1)^n times the original."""
    sign = 1 if n % 2 == 0 else -1
    return ChainComplex(
        C.ring,
        C.lowest + n,
        C.modules,
        tuple(m.scale(sign) for m in C.diffs),
    )


def shift_map(f: ChainMap, n: int) -> ChainMap:
    return ChainMap.from_dict(
        shift(f.source, n),
        shift(f.target, n),
        {d + n: m for d, m in f.comps},
    )


def direct_sum_complexes(A: ChainComplex, B: ChainComplex):
    """A + B with the four canonical structure maps (iA, iB, pA, pB)."""
    ring = A.ring
    lo = min(A.lowest, B.lowest) if A.length or B.length else 0
    hi = max(A.highest, B.highest) if A.length or B.length else lo - 1
    mods, diffs = [], []
    from .modules import direct_sum

    for d in range(lo, hi + 1):
        mods.append(direct_sum([A.module(d), B.module(d)]))
        if d > lo:
            diffs.append(Matrix.block_diag(ring, [A.diff(d), B.diff(d)]))
    S = ChainComplex(ring, lo, tuple(mods), tuple(diffs))
    iA, iB, pA, pB = {}, {}, {}, {}
    for d in range(lo, hi + 1):
        ra, rb = A.rank(d), B.rank(d)
        iA[d] = Matrix.identity(ring, ra).vstack(Matrix.zeros(ring, rb, ra))
        iB[d] = Matrix.zeros(ring, ra, rb).vstack(Matrix.identity(ring, rb))
        pA[d] = Matrix.identity(ring, ra).hstack(Matrix.zeros(ring, ra, rb))
        pB[d] = Matrix.zeros(ring, rb, ra).hstack(Matrix.identity(ring, rb))
    return (
        S,
        ChainMap.from_dict(A, S, iA),
        ChainMap.from_dict(B, S, iB),
        ChainMap.from_dict(S, A, pA),
        ChainMap.from_dict(S, B, pB),
    )


def cone(f: ChainMap, trim: bool = True) -> ChainComplex:
    """C(f) = X[1] + Y for f: X -> Y, differential [[-dX, 0], [f, dY]]."""
    X, Y = f.source, f.target
    ring = f.ring
    lo = min(X.lowest + 1, Y.lowest) if X.length or Y.length else 0
    hi = max(X.highest + 1, Y.highest) if X.length or Y.length else lo - 1
    from .modules import direct_sum

    mods, diffs = [], []
    for d in range(lo, hi + 1):
        mods.append(direct_sum([X.module(d - 1), Y.module(d)]))
        if d > lo:
            top = (-X.diff(d - 1)).hstack(
                Matrix.zeros(ring, X.rank(d - 2), Y.rank(d))
            )
            bot = f.comp(d - 1).hstack(Y.diff(d))
            diffs.append(top.vstack(bot))
    C = ChainComplex(ring, lo, tuple(mods), tuple(diffs))
    return C.trim() if trim else C


def cone_with_maps(f: ChainMap):
    """cone(f) together with the inclusion Y -> C(f) and projection C(f) -> X[1]."""
    C = cone(f)
    X, Y = f.source, f.target
    ring = f.ring
    incl, proj = {}, {}
    for d in C.degrees():
        rx, ry = X.rank(d - 1), Y.rank(d)
        incl[d] = Matrix.zeros(ring, rx, ry).vstack(Matrix.identity(ring, ry))
        proj[d] = Matrix.identity(ring, rx).hstack(Matrix.zeros(ring, rx, ry))
    return (
        C,
        ChainMap.from_dict(Y, C, incl),
        ChainMap.from_dict(C, shift(X, 1), proj),
    )


def cylinder(C: ChainComplex):
    """Cyl(C) = C + C[1] + C with the printed 3x3 block differential.

    Returns (Cyl, i0, i1, p) with p i0 = id = p i1.
    """
    ring = C.ring
    if C.length == 0:
        Z = ChainComplex.zero(ring, C.lowest)
        zmap = ChainMap.zero(Z, Z)
        return Z, ChainMap.zero(C, Z), ChainMap.zero(C, Z), ChainMap.zero(Z, C)
    lo, hi = C.lowest, C.highest + 1
    from .modules import direct_sum

    mods, diffs = [], []
    for d in range(lo, hi + 1):
        mods.append(direct_sum([C.module(d), C.module(d - 1), C.module(d)]))
        if d > lo:
            r, rp = C.rank(d), C.rank(d - 1)
            rtp = C.rank(d - 2)
            dd = C.diff(d)
            ddp = C.diff(d - 1)
            ident = Matrix.identity(ring, rp)
            row0 = dd.hstack(-ident).hstack(Matrix.zeros(ring, rp, r))
            row1 = Matrix.zeros(ring, rtp, r).hstack(-ddp).hstack(Matrix.zeros(ring, rtp, r))
            row2 = Matrix.zeros(ring, rp, r).hstack(ident).hstack(dd)
            diffs.append(row0.vstack(row1).vstack(row2))
    Cyl = ChainComplex(ring, lo, tuple(mods), tuple(diffs))
    i0, i1, p = {}, {}, {}
    for d in Cyl.degrees():
        r, rp = C.rank(d), C.rank(d - 1)
        ident = Matrix.identity(ring, r)
        z_mid = Matrix.zeros(ring, rp, r)
        i0[d] = ident.vstack(z_mid).vstack(Matrix.zeros(ring, r, r))
        i1[d] = Matrix.zeros(ring, r, r).vstack(z_mid).vstack(ident)
        p[d] = ident.hstack(Matrix.zeros(ring, r, rp)).hstack(ident)
    return (
        Cyl,
        ChainMap.from_dict(C, Cyl, i0),
        ChainMap.from_dict(C, Cyl, i1),
        ChainMap.from_dict(Cyl, C, p),
    )


def path(f: ChainMap) -> ChainComplex:
    """L(f) = B + A[-1] for f: B -> A, differential [[dB, 0], [f, -dA]]."""
    B, A = f.source, f.target
    ring = f.ring
    lo = min(B.lowest, A.lowest - 1) if B.length or A.length else 0
    hi = max(B.highest, A.highest - 1) if B.length or A.length else lo - 1
    from .modules import direct_sum

    mods, diffs = [], []
    for d in range(lo, hi + 1):
        mods.append(direct_sum([B.module(d), A.module(d + 1)]))
        if d > lo:
            top = B.diff(d).hstack(Matrix.zeros(ring, B.rank(d - 1), A.rank(d + 1)))
            bot = f.comp(d).hstack(-A.diff(d + 1))
            diffs.append(top.vstack(bot))
    return ChainComplex(ring, lo, tuple(mods), tuple(diffs)).trim()


def path_with_maps(f: ChainMap):
    """path(f) with projection to B and the second-component projection to A[-1]."""
    L = path(f)
    B, A = f.source, f.target
    ring = f.ring
    projB, projA = {}, {}
    for d in L.degrees():
        rb, ra = B.rank(d), A.rank(d + 1)
        projB[d] = Matrix.identity(ring, rb).hstack(Matrix.zeros(ring, rb, ra))
        projA[d] = Matrix.zeros(ring, ra, rb).hstack(Matrix.identity(ring, ra))
    return (
        L,
        ChainMap.from_dict(L, B, projB),
        ChainMap.from_dict(L, shift(A, -1), projA),
    )


# -- Hom complex ---------------------------------------------------------


@dataclass(frozen=True)
class HomBasis:
    """Bookkeeping for Hom_n(A, B) = sum_i Hom(A_i, B_{i+n}).

    Degree-n elements are flattened columns: segments ordered by ascending
    source degree i, each segment the row-major flattening of a matrix
    A_i -> B_{i+n}.
    """

    A: ChainComplex
    B: ChainComplex
    lowest: int
    highest: int

    def segments(self, n: int):
        out = []
        off = 0
        for i in self.A.degrees():
            r, c = self.B.rank(i + n), self.A.rank(i)
            if r and c:
                out.append((i, r, c, off))
                off += r * c
        return out, off

    def rank(self, n: int) -> int:
        return self.segments(n)[1]

    def encode(self, n: int, comps: dict) -> Matrix:
        """comps: source degree -> Matrix(B.rank(i+n) x A.rank(i))."""
        segs, total = self.segments(n)
        vals = [0] * total
        for i, r, c, off in segs:
            mat = comps.get(i)
            if mat is None:
                continue
            if (mat.rows, mat.cols) != (r, c):
                raise ValueError(f"hom component shape mismatch at degree {i}")
            for k, v in enumerate(mat.entries):
                vals[off + k] = v
        return Matrix.column(self.A.ring, vals)

    def decode(self, n: int, vec: Matrix) -> dict:
        segs, total = self.segments(n)
        if vec.rows != total or vec.cols != 1:
            raise ValueError("hom element length mismatch")
        out = {}
        for i, r, c, off in segs:
            out[i] = Matrix(self.A.ring, r, c, tuple(vec.entries[off : off + r * c]))
        return out


def hom_complex_with_basis(A: ChainComplex, B: ChainComplex):
    """Complex of homogeneous homomorphisms, D f = df - (-1)^{|f|} f d.

    A must be free with finite support; B free degreewise.
    """
    if not A.is_free_degreewise:
        raise ValueError("hom complex requires a free degreewise source")
    if not B.is_free_degreewise:
        raise ValueError("hom complex requires a free degreewise target")
    ring = A.ring
    if A.length == 0 or B.length == 0:
        basis = HomBasis(A, B, 0, -1)
        return ChainComplex.zero(ring, 0), basis
    lo = B.lowest - A.highest
    hi = B.highest - A.lowest
    basis = HomBasis(A, B, lo, hi)
    mods, diffs = [], []
    for n in range(lo, hi + 1):
        mods.append(PresentedModule.free(ring, basis.rank(n)))
        if n > lo:
            diffs.append(_hom_diff(basis, n))
    C = ChainComplex(ring, lo, tuple(mods), tuple(diffs))
    return C, basis


def _hom_diff(basis: HomBasis, n: int) -> Matrix:
    """Matrix of D: Hom_n -> Hom_{n-1} in the flattened bases."""
    A, B = basis.A, basis.B
    ring = A.ring
    segs_in, rin = basis.segments(n)
    segs_out, rout = basis.segments(n - 1)
    out_off = {i: off for i, _, _, off in segs_out}
    sign = 1 if n % 2 == 0 else -1
    data = [[0] * rin for _ in range(rout)]
    nrm = ring.normalize
    for i, r, c, off in segs_in:
        # term d^B f_i : A_i -> B_{i+n-1}, block (A kron B^T) with A = d^B
        dB = B.diff(i + n)
        if i in out_off and dB.rows and dB.cols:
            blk = dB.kron(Matrix.identity(ring, c))
            o = out_off[i]
            for rr in range(blk.rows):
                for cc in range(blk.cols):
                    v = blk[rr, cc]
                    if v:
                        data[o + rr][off + cc] = nrm(data[o + rr][off + cc] + v)
        # term -(-1)^n f_i d^A : A_{i+1} -> A_i -> B_{i+n}, out segment i+1
        dA = A.diff(i + 1)
        j = i + 1
        if j in out_off and dA.rows and dA.cols and r:
            blk = Matrix.identity(ring, r).kron(dA.transpose()).scale(-sign)
            o = out_off[j]
            for rr in range(blk.rows):
                for cc in range(blk.cols):
                    v = blk[rr, cc]
                    if v:
                        data[o + rr][off + cc] = nrm(data[o + rr][off + cc] + v)
    return Matrix(ring, rout, rin, tuple(x for row in data for x in row))


def hom_complex(A: ChainComplex, B: ChainComplex) -> ChainComplex:
    return hom_complex_with_basis(A, B)[0]


# -- double and total complexes ------------------------------------------


@dataclass(frozen=True)
class DoubleComplex:
    """First-quadrant double complex with commuting squares.

    horiz[(p, q)]: C_{p,q} -> C_{p-1,q};  vert[(p, q)]: C_{p,q} -> C_{p,q-1}.
    The totalization inserts the sign (-1)^p on the vertical maps.
    """

    ring: Ring
    modules: dict
    horiz: dict
    vert: dict

    def module(self, p: int, q: int) -> PresentedModule:
        return self.modules.get((p, q), PresentedModule.zero(self.ring))

    def rank(self, p: int, q: int) -> int:
        return self.module(p, q).generators

    def h(self, p: int, q: int) -> Matrix:
        return self.horiz.get(
            (p, q), Matrix.zeros(self.ring, self.rank(p - 1, q), self.rank(p, q))
        )

    def v(self, p: int, q: int) -> Matrix:
        return self.vert.get(
            (p, q), Matrix.zeros(self.ring, self.rank(p, q - 1), self.rank(p, q))
        )

    def validate(self):
        for (p, q) in self.modules:
            hh = self.h(p - 1, q) * self.h(p, q)
            if not _zero_mod(self.module(p - 2, q), hh):
                raise ComplexValidationError(f"horizontal square fails at {(p, q)}")
            vv = self.v(p, q - 1) * self.v(p, q)
            if not _zero_mod(self.module(p, q - 2), vv):
                raise ComplexValidationError(f"vertical square fails at {(p, q)}")
            comm = self.h(p, q - 1) * self.v(p, q) - self.v(p - 1, q) * self.h(p, q)
            if not _zero_mod(self.module(p - 1, q - 1), comm):
                raise ComplexValidationError(f"square does not commute at {(p, q)}")
        return True


def _zero_mod(target: PresentedModule, mat: Matrix) -> bool:
    return all(target.is_zero_element(mat.col(j)) for j in range(mat.cols))


def total(D: DoubleComplex) -> ChainComplex:
    """Tot_n = sum_{p+q=n} C_{p,q}, differential d^h + (-1)^p d^v.

    Summands are ordered by ascending p within each total degree.
    """
    ring = D.ring
    if not D.modules:
        return ChainComplex.zero(ring, 0)
    top = max(p + q for p, q in D.modules)
    from .modules import direct_sum

    mods = []
    offsets = []  # per degree: list of (p, q, offset)
    for n in range(0, top + 1):
        parts, offs, off = [], [], 0
        for p in range(0, n + 1):
            q = n - p
            m = D.module(p, q)
            if m.generators:
                parts.append(m)
                offs.append((p, q, off))
                off += m.generators
        mods.append(direct_sum(parts) if parts else PresentedModule.zero(ring))
        offsets.append(offs)
    diffs = []
    for n in range(1, top + 1):
        rout = mods[n - 1].generators
        rin = mods[n].generators
        data = [[0] * rin for _ in range(rout)]
        out_off = {(p, q): off for p, q, off in offsets[n - 1]}
        for p, q, off in offsets[n]:
            hmat = D.h(p, q)
            if (p - 1, q) in out_off and not hmat.is_zero:
                o = out_off[(p - 1, q)]
                for i in range(hmat.rows):
                    for j in range(hmat.cols):
                        data[o + i][off + j] = ring.normalize(
                            data[o + i][off + j] + hmat[i, j]
                        )
            vmat = D.v(p, q)
            sign = 1 if p % 2 == 0 else -1
            if (p, q - 1) in out_off and not vmat.is_zero:
                o = out_off[(p, q - 1)]
                for i in range(vmat.rows):
                    for j in range(vmat.cols):
                        data[o + i][off + j] = ring.normalize(
                            data[o + i][off + j] + sign * vmat[i, j]
                        )
        diffs.append(Matrix(ring, rout, rin, tuple(x for row in data for x in row)))
    return ChainComplex(ring, 0, tuple(mods), tuple(diffs))


def total_offsets(D: DoubleComplex, n: int):
    """Summand layout of Tot_n: list of (p, q, offset)."""
    offs, off = [], 0
    for p in range(0, n + 1):
        q = n - p
        r = D.rank(p, q)
        if r:
            offs.append((p, q, off))
            off += r
    return offs, off


# -- homology ------------------------------------------------------------


def cycle_representatives(C: ChainComplex, d: int) -> Matrix:
    """Columns in Ring^{rank d} generating the preimages of the cycles."""
    n = C.rank(d)
    dmat = C.diff(d)
    rel = C.module(d - 1).relations
    if dmat.rows == 0:
        return Matrix.identity(C.ring, n)
    ker = kernel_basis(dmat.hstack(-rel))
    return Matrix(C.ring, n, ker.cols, tuple(ker.entries[: n * ker.cols]))


def homology(C: ChainComplex, d: int) -> PresentedModule:
    """Canonical presentation of ker d_d / im d_{d+1}."""
    if d < C.lowest or d > C.highest:
        return PresentedModule.zero(C.ring)
    cycles = cycle_representatives(C, d)
    boundaries = C.diff(d + 1).hstack(C.module(d).relations)
    return quotient_presentation(C.ring, cycles, boundaries)


def homology_with_basis(C: ChainComplex, d: int):
    """(H_d, cycle matrix Z) where H_d generators are the columns of Z."""
    cycles = cycle_representatives(C, d)
    boundaries = C.diff(d + 1).hstack(C.module(d).relations)
    return quotient_presentation(C.ring, cycles, boundaries), cycles


def is_acyclic(C: ChainComplex, window=None) -> bool:
    degs = window if window is not None else C.degrees()
    return all(homology(C, d).is_trivial() for d in degs)


def is_quasi_iso(f: ChainMap, window=None) -> bool:
    """Acyclicity of the mapping cone over the window."""
    Cf = cone(f)
    if window is None:
        window = range(Cf.lowest, Cf.highest + 1)
    else:
        lo, hi = min(window, default=0), max(window, default=0)
        if Cf.length and (lo > Cf.lowest or hi < Cf.highest):
            raise ValueError("window does not cover the support of the cone")
    return is_acyclic(Cf, window)
