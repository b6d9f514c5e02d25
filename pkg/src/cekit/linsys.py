"""A small builder for linear systems whose unknowns are matrices.

Equations have the shape  sum_t  L_t * X_{b(t)} * R_t  =  C  entrywise.
The builder flattens everything into one exact solve, so the solution (when
one exists) is the canonical SNF back-substitution output.
"""
from __future__ import annotations

from .matrix import Matrix, solve
from .rings import Ring


class LinearSystem:
    def __init__(self, ring: Ring):
        self.ring = ring
        self._blocks: dict[str, tuple[int, int, int]] = {}  # name -> (rows, cols, offset)
        self._size = 0
        # rows are kept sparse so blocks may be declared after equations
        self._rows: list[dict[int, int]] = []
        self._rhs: list[int] = []

    def block(self, name: str, rows: int, cols: int) -> str:
        if name in self._blocks:
            if self._blocks[name][:2] != (rows, cols):
                raise ValueError(f"block {name} redeclared with a different shape")
            return name
        self._blocks[name] = (rows, cols, self._size)
        self._size += rows * cols
        return name

    def add_equation(self, terms, const: Matrix):
        """terms: iterable of (L, block_name, R); asserts sum L X R = const."""
        n = self.ring.normalize
        terms = list(terms)
        for L, name, R in terms:
            br, bc, _ = self._blocks[name]
            if L.cols != br or R.rows != bc:
                raise ValueError(f"term shape mismatch for block {name}")
            if L.rows != const.rows or R.cols != const.cols:
                raise ValueError("term does not match equation shape")
        for i in range(const.rows):
            for j in range(const.cols):
                row: dict[int, int] = {}
                for L, name, R in terms:
                    br, bc, off = self._blocks[name]
                    for a in range(br):
                        la = L[i, a]
                        if la == 0:
                            continue
                        for b in range(bc):
                            rb = R[b, j]
                            if rb:
                                k = off + a * bc + b
                                row[k] = n(row.get(k, 0) + la * rb)
                self._rows.append(row)
                self._rhs.append(const[i, j])

    @property
    def size(self) -> int:
        return self._size

    def offset(self, name: str) -> tuple[int, int, int]:
        """(rows, cols, offset) of a block in the flattened unknown vector."""
        return self._blocks[name]

    def matrix(self) -> Matrix:
        """The homogeneous coefficient matrix of all equations added so far."""
        entries = []
        for row in self._rows:
            dense = [0] * self._size
            for k, v in row.items():
                dense[k] = v
            entries.extend(dense)
        return Matrix(self.ring, len(self._rows), self._size, tuple(entries))

    def solve(self):
        """Return {name: Matrix} or None if the system is infeasible."""
        if self._size == 0:
            if any(self.ring.normalize(v) != 0 for v in self._rhs):
                return None
            return {
                name: Matrix(self.ring, r, c, ())
                for name, (r, c, off) in self._blocks.items()
            }
        A = self.matrix()
        b = Matrix.column(self.ring, self._rhs)
        x = solve(A, b)
        if x is None:
            return None
        out = {}
        for name, (r, c, off) in self._blocks.items():
            out[name] = Matrix(
                self.ring, r, c, tuple(x.entries[off : off + r * c])
            )
        return out
