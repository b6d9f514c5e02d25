"""Dense exact matrices over Z and Z/m, with Smith normal form and solvers.

The Smith normal form is the computational workhorse: solving linear
systems, kernels, column spans and invariant factors all reduce to it.
Entries are Python ints, so there is no overflow anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .rings import Ring, ZZ, associate_unit, xgcd


@dataclass(frozen=True)
class Matrix:
    ring: Ring
    rows: int
    cols: int
    entries: tuple  # row-major, length rows*cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        if self.ring.is_modular:
            m = self.ring.modulus
            if any(not (0 <= e < m) for e in self.entries):
                object.__setattr__(
                    self, "entries", tuple(e % m for e in self.entries)
                )

    # -- construction ----------------------------------------------------
    @staticmethod
    def from_rows(ring: Ring, rows_data) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        r = len(rows_data)
        c = len(rows_data[0]) if r else 0
        if any(len(row) != c for row in rows_data):
            raise ValueError("ragged rows")
        flat = tuple(ring.normalize(x) for row in rows_data for x in row)
        return Matrix(ring, r, c, flat)

    @staticmethod
    def zeros(ring: Ring, rows: int, cols: int) -> "Matrix":
        return Matrix(ring, rows, cols, (0,) * (rows * cols))

    @staticmethod
    def identity(ring: Ring, n: int) -> "Matrix":
        return Matrix(
            ring, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n))
        )

    @staticmethod
    def column(ring: Ring, values) -> "Matrix":
        vals = list(values)
        return Matrix(ring, len(vals), 1, tuple(ring.normalize(v) for v in vals))

    @staticmethod
    def diagonal(ring: Ring, diag, rows=None, cols=None) -> "Matrix":
        diag = list(diag)
        r = rows if rows is not None else len(diag)
        c = cols if cols is not None else len(diag)
        m = Matrix.zeros(ring, r, c).to_lists()
        for i, d in enumerate(diag):
            m[i][i] = ring.normalize(d)
        return Matrix.from_rows(ring, m) if r else Matrix(ring, r, c, ())

    # -- access ----------------------------------------------------------
    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_lists(self):
        return [
            list(self.entries[i * self.cols : (i + 1) * self.cols])
            for i in range(self.rows)
        ]

    def row_list(self, i: int):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col_list(self, j: int):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def col(self, j: int) -> "Matrix":
        return Matrix.column(self.ring, self.col_list(j))

    def cols_list(self):
        return [self.col(j) for j in range(self.cols)]

    def submatrix_cols(self, indices) -> "Matrix":
        rows = [[self.entries[i * self.cols + j] for j in indices] for i in range(self.rows)]
        if self.rows == 0:
            return Matrix(self.ring, 0, len(list(indices)), ())
        return Matrix.from_rows(self.ring, rows)

    @property
    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    # -- arithmetic ------------------------------------------------------
    def _check_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise ValueError("ring mismatch")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        n = self.ring.normalize
        return Matrix(
            self.ring,
            self.rows,
            self.cols,
            tuple(n(a + b) for a, b in zip(self.entries, other.entries)),
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        n = self.ring.normalize
        return Matrix(self.ring, self.rows, self.cols, tuple(n(-a) for a in self.entries))

    def scale(self, c: int) -> "Matrix":
        n = self.ring.normalize
        return Matrix(self.ring, self.rows, self.cols, tuple(n(c * a) for a in self.entries))

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise ValueError(
                f"shape mismatch in product: {self.rows}x{self.cols} * {other.rows}x{other.cols}"
            )
        n = self.ring.normalize
        a, b = self.entries, other.entries
        oc, sc = other.cols, self.cols
        out = []
        for i in range(self.rows):
            base = i * sc
            for j in range(oc):
                acc = 0
                for k in range(sc):
                    acc += a[base + k] * b[k * oc + j]
                out.append(n(acc))
        return Matrix(self.ring, self.rows, oc, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix(
            self.ring,
            self.cols,
            self.rows,
            tuple(self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    # -- stacking --------------------------------------------------------
    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        rows = [self.row_list(i) + other.row_list(i) for i in range(self.rows)]
        return Matrix(
            self.ring,
            self.rows,
            self.cols + other.cols,
            tuple(x for r in rows for x in r),
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(
            self.ring, self.rows + other.rows, self.cols, self.entries + other.entries
        )

    @staticmethod
    def block_diag(ring: Ring, blocks) -> "Matrix":
        blocks = list(blocks)
        r = sum(b.rows for b in blocks)
        c = sum(b.cols for b in blocks)
        data = [[0] * c for _ in range(r)]
        ro = co = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    data[ro + i][co + j] = b[i, j]
            ro += b.rows
            co += b.cols
        return Matrix(ring, r, c, tuple(x for row in data for x in row))

    @staticmethod
    def block(ring: Ring, grid) -> "Matrix":
        """Assemble from a 2D grid of matrices (each grid row same heights)."""
        rows_out = []
        for brow in grid:
            acc = brow[0]
            for b in brow[1:]:
                acc = acc.hstack(b)
            rows_out.append(acc)
        acc = rows_out[0]
        for b in rows_out[1:]:
            acc = acc.vstack(b)
        return acc

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; vec_rowmajor(A X B) = (A kron B^T) vec_rowmajor(X)."""
        self._check_ring(other)
        n = self.ring.normalize
        out = [
            [0] * (self.cols * other.cols) for _ in range(self.rows * other.rows)
        ]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.entries[i * self.cols + j]
                if a == 0:
                    continue
                for k in range(other.rows):
                    for l in range(other.cols):
                        out[i * other.rows + k][j * other.cols + l] = n(
                            a * other.entries[k * other.cols + l]
                        )
        return Matrix(
            self.ring,
            self.rows * other.rows,
            self.cols * other.cols,
            tuple(x for row in out for x in row),
        )

    def lift(self) -> "Matrix":
        """The canonical integer lift (entrywise residues as integers)."""
        return Matrix(ZZ, self.rows, self.cols, self.entries)

    def reduce(self, ring: Ring) -> "Matrix":
        return Matrix(ring, self.rows, self.cols, tuple(ring.normalize(e) for e in self.entries))

    def __str__(self) -> str:
        return "[" + "; ".join(" ".join(str(x) for x in self.row_list(i)) for i in range(self.rows)) + "]"


@dataclass(frozen=True)
class SNFResult:
    """S = U * A * V with S diagonal and divisibility chain d1 | d2 | ...

    U and V are invertible; their inverses are carried as witnesses.
    """

    U: Matrix
    S: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix

    def diagonal(self):
        n = min(self.S.rows, self.S.cols)
        return [self.S[i, i] for i in range(n)]


class _Eliminator:
    """Mutable elimination state tracking S = U A V with inverse witnesses."""

    def __init__(self, A: Matrix):
        self.ring = A.ring
        self.m = A.ring.modulus
        self.s = A.to_lists()
        self.rows, self.cols = A.rows, A.cols
        self.u = Matrix.identity(A.ring, A.rows).to_lists()
        self.uinv = Matrix.identity(A.ring, A.rows).to_lists()
        self.v = Matrix.identity(A.ring, A.cols).to_lists()
        self.vinv = Matrix.identity(A.ring, A.cols).to_lists()

    def _n(self, x):
        return x % self.m if self.m is not None else x

    # row ops act on s and u (left); inverse op on uinv columns.
    def row_block(self, t, i, a, b, c, d):
        # rows (t,i) <- (a*rt + b*ri, c*rt + d*ri); requires det(a d - b c) = +-1
        for mat in (self.s, self.u):
            rt, ri = mat[t], mat[i]
            mat[t] = [self._n(a * x + b * y) for x, y in zip(rt, ri)]
            mat[i] = [self._n(c * x + d * y) for x, y in zip(rt, ri)]
        det = a * d - b * c
        if self.m is None:
            if det not in (1, -1):
                raise AssertionError("non-unimodular row block")
            ia, ib, ic, id_ = d * det, -b * det, -c * det, a * det
        else:
            from .rings import inverse_mod

            dinv = inverse_mod(det, self.m)
            ia, ib, ic, id_ = d * dinv, -b * dinv, -c * dinv, a * dinv
        # uinv <- uinv * E^{-1}: column op on columns t, i
        mat = self.uinv
        for r in range(len(mat)):
            x, y = mat[r][t], mat[r][i]
            mat[r][t] = self._n(x * ia + y * ic)
            mat[r][i] = self._n(x * ib + y * id_)

    def col_block(self, t, j, a, b, c, d):
        # cols (t,j) <- (a*ct + b*cj, c*ct + d*cj) on s and v (right mult).
        for mat, nrows in ((self.s, self.rows), (self.v, self.cols)):
            for r in range(nrows):
                x, y = mat[r][t], mat[r][j]
                mat[r][t] = self._n(a * x + b * y)
                mat[r][j] = self._n(c * x + d * y)
        det = a * d - b * c
        # as a 2x2 block acting on the right, the op matrix is [[a, c], [b, d]]
        if self.m is None:
            if det not in (1, -1):
                raise AssertionError("non-unimodular col block")
            ia, ib, ic, id_ = d * det, -c * det, -b * det, a * det
        else:
            from .rings import inverse_mod

            dinv = inverse_mod(det, self.m)
            ia, ib, ic, id_ = d * dinv, -c * dinv, -b * dinv, a * dinv
        # vinv <- E^{-1} * vinv: row op
        rt, rj = self.vinv[t], self.vinv[j]
        self.vinv[t] = [self._n(ia * x + ib * y) for x, y in zip(rt, rj)]
        self.vinv[j] = [self._n(ic * x + id_ * y) for x, y in zip(rt, rj)]

    def swap_rows(self, t, i):
        if t != i:
            self.row_block(t, i, 0, 1, 1, 0)

    def swap_cols(self, t, j):
        if t != j:
            self.col_block(t, j, 0, 1, 1, 0)

    def scale_row(self, t, unit):
        # unit must be invertible in the ring.
        if self.m is None:
            if unit not in (1, -1):
                raise AssertionError("unit over Z must be +-1")
            inv = unit
        else:
            from .rings import inverse_mod

            inv = inverse_mod(unit, self.m)
        self.s[t] = [self._n(unit * x) for x in self.s[t]]
        self.u[t] = [self._n(unit * x) for x in self.u[t]]
        for r in range(len(self.uinv)):
            self.uinv[r][t] = self._n(self.uinv[r][t] * inv)

    def result(self) -> SNFResult:
        ring = self.ring

        def mk(lists, r, c):
            return Matrix(ring, r, c, tuple(self._n(x) for row in lists for x in row))

        return SNFResult(
            U=mk(self.u, self.rows, self.rows),
            S=mk(self.s, self.rows, self.cols),
            V=mk(self.v, self.cols, self.cols),
            U_inv=mk(self.uinv, self.rows, self.rows),
            V_inv=mk(self.vinv, self.cols, self.cols),
        )


def smith_normal_form(A: Matrix) -> SNFResult:
    """Diagonalize by unimodular row/column operations.

    Over Z the diagonal is nonnegative with d1 | d2 | ... . Over Z/m the
    elimination runs on canonical residues (every operation is invertible
    mod m) and each diagonal entry is normalized to gcd(d, m), so the
    diagonal entries divide m and form a divisibility chain.
    """
    e = _Eliminator(A)
    rows, cols, s = e.rows, e.cols, e.s
    t = 0
    limit = min(rows, cols)
    while t < limit:
        # locate minimal nonzero pivot in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                x = abs(s[i][j])
                if x and (piv is None or x < piv[0]):
                    piv = (x, i, j)
        if piv is None:
            break
        _, pi, pj = piv
        e.swap_rows(t, pi)
        e.swap_cols(t, pj)
        while True:
            # clear column t
            dirty = False
            for i in range(t + 1, rows):
                b = s[i][t]
                if b == 0:
                    continue
                a = s[t][t]
                if b % a == 0:
                    e.row_block(t, i, 1, 0, -(b // a), 1)
                else:
                    g, x, y = xgcd(a, b)
                    e.row_block(t, i, x, y, -(b // g), a // g)
                    dirty = True
            # clear row t
            for j in range(t + 1, cols):
                b = s[t][j]
                if b == 0:
                    continue
                a = s[t][t]
                if b % a == 0:
                    e.col_block(t, j, 1, 0, -(b // a), 1)
                    # column clearing may reintroduce entries in column t
                else:
                    g, x, y = xgcd(a, b)
                    e.col_block(t, j, x, y, -(b // g), a // g)
                    dirty = True
            if any(s[i][t] for i in range(t + 1, rows)) or dirty:
                continue
            # divisibility sweep: pivot must divide the remaining block
            a = s[t][t]
            offender = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if s[i][j] % a != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            e.row_block(t, offender, 1, 1, 0, 1)
        t += 1
    rank = t
    # normalize diagonal entries to canonical associates
    for i in range(rank):
        d = s[i][i]
        if e.m is None:
            if d < 0:
                e.scale_row(i, -1)
        else:
            d %= e.m
            g = gcd(d, e.m)
            if d != g:
                e.scale_row(i, associate_unit(d, e.m))
            s[i][i] = g
    if e.m is not None:
        # unit normalization can break the chain mod m; bubble-fix pairs
        changed = True
        while changed:
            changed = False
            for i in range(rank - 1):
                a, b = s[i][i], s[i + 1][i + 1]
                if a and b % a != 0:
                    _fix_pair(e, i)
                    changed = True
    return e.result()


def _fix_pair(e: _Eliminator, i: int):
    """Replace diag(a, b) at (i, i+1) by diag(gcd, lcm) unimodularly."""
    s = e.s
    e.row_block(i, i + 1, 1, 1, 0, 1)  # row_i += row_{i+1}
    a, b = s[i][i], s[i][i + 1]
    g, x, y = xgcd(a, b)
    e.col_block(i, i + 1, x, y, -(b // g), a // g)
    # clear the remaining (i+1, i) entry
    a = s[i][i]
    b = s[i + 1][i]
    if b:
        e.row_block(i, i + 1, 1, 0, -(b // a), 1)
    if e.m is not None:
        for k in (i, i + 1):
            d = s[k][k] % e.m
            g2 = gcd(d, e.m) if d else 0
            if d and d != g2:
                e.scale_row(k, associate_unit(d, e.m))
                s[k][k] = g2


def solve(A: Matrix, b: Matrix):
    """A canonical solution x of A x = b, or None when b is outside the span.

    Over Z/m the system is lifted to Z by adjoining m*identity columns.
    The solution is the canonical SNF back-substitution output, so repeated
    runs are bit-identical.
    """
    if A.rows != b.rows:
        raise ValueError("dimension mismatch in solve")
    if A.ring != b.ring:
        raise ValueError("ring mismatch in solve")
    if A.ring.is_modular:
        m = A.ring.modulus
        lifted = A.lift().hstack(Matrix.identity(ZZ, A.rows).scale(m))
        x = solve(lifted, b.lift())
        if x is None:
            return None
        return Matrix(
            A.ring, A.cols, b.cols, tuple(x.entries[: A.cols * b.cols])
        ).reduce(A.ring)
    snf = smith_normal_form(A)
    c = snf.U * b
    diag = snf.diagonal()
    y_rows = []
    for i in range(A.cols):
        d = diag[i] if i < len(diag) else 0
        row = []
        for j in range(b.cols):
            ci = c[i, j] if i < A.rows else 0
            if d == 0:
                if ci != 0:
                    return None
                row.append(0)
            else:
                if ci % d != 0:
                    return None
                row.append(ci // d)
        y_rows.append(row)
    for i in range(A.cols, A.rows):
        for j in range(b.cols):
            if c[i, j] != 0:
                return None
    y = Matrix.from_rows(ZZ, y_rows) if A.cols else Matrix(ZZ, 0, b.cols, ())
    return snf.V * y


def kernel_basis(A: Matrix) -> Matrix:
    """Columns generating {x : A x = 0} over the ring."""
    if A.ring.is_modular:
        m = A.ring.modulus
        lifted = A.lift().hstack(Matrix.identity(ZZ, A.rows).scale(m))
        k = kernel_basis(lifted)
        proj = Matrix(ZZ, A.cols, k.cols, tuple(k.entries[: A.cols * k.cols])).reduce(A.ring)
        keep = [j for j in range(proj.cols) if not proj.col(j).is_zero]
        return proj.submatrix_cols(keep)
    snf = smith_normal_form(A)
    diag = snf.diagonal()
    free = [i for i in range(A.cols) if i >= len(diag) or diag[i] == 0]
    return snf.V.submatrix_cols(free)


def column_span_basis(A: Matrix) -> Matrix:
    """An independent generating set for the column span over the ring."""
    snf = smith_normal_form(A)
    diag = snf.diagonal()
    cols = []
    for i, d in enumerate(diag):
        if d != 0:
            cols.append(snf.U_inv.col(i).scale(d))
    if not cols:
        return Matrix.zeros(A.ring, A.rows, 0)
    acc = cols[0]
    for c in cols[1:]:
        acc = acc.hstack(c)
    return acc
