"""Finitely presented modules and maps between them.

A module is a cokernel: generators modulo the column span of a relations
matrix. Equality of elements, kernels and quotients all reduce to exact
linear algebra on the presentation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .matrix import Matrix, kernel_basis, smith_normal_form, solve
from .rings import Ring, ZZ


class IllDefinedMapError(ValueError):
    pass


@dataclass(frozen=True)
class PresentedModule:
    ring: Ring
    generators: int
    relations: Matrix  # generators x k; columns are relators

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relations row count must equal generator count")
        if self.relations.ring != self.ring:
            raise ValueError("relations ring mismatch")

    @staticmethod
    def free(ring: Ring, n: int) -> "PresentedModule":
        return PresentedModule(ring, n, Matrix.zeros(ring, n, 0))

    @staticmethod
    def zero(ring: Ring) -> "PresentedModule":
        return PresentedModule.free(ring, 0)

    @staticmethod
    def cyclic(ring: Ring, d: int) -> "PresentedModule":
        return PresentedModule(ring, 1, Matrix.from_rows(ring, [[d]]))

    @property
    def is_free_presentation(self) -> bool:
        return self.relations.cols == 0

    def element(self, values) -> Matrix:
        return Matrix.column(self.ring, values)

    def is_zero_element(self, x: Matrix) -> bool:
        if x.rows != self.generators or x.cols != 1:
            raise ValueError("malformed element")
        if x.is_zero:
            return True
        return solve(self.relations, x) is not None

    def elements_equal(self, x: Matrix, y: Matrix) -> bool:
        return self.is_zero_element(x - y)

    def invariant_factors(self) -> tuple[int, list[int]]:
        """(free_rank, torsion factors ordered by divisibility).

        Over Z/m the relations are lifted to Z with m*identity adjoined, so
        a diagonal entry equal to m marks a free Z/m summand.
        """
        ring = self.ring
        if ring.is_modular:
            m = ring.modulus
            rel = self.relations.lift().hstack(
                Matrix.identity(ZZ, self.generators).scale(m)
            )
            diag = smith_normal_form(rel).diagonal()
            free_rank = sum(1 for d in diag if d == m)
            torsion = [d for d in diag if 1 < d < m]
            return free_rank, torsion
        diag = smith_normal_form(self.relations).diagonal()
        nonzero = [d for d in diag if d != 0]
        free_rank = self.generators - len(nonzero)
        torsion = [d for d in nonzero if d != 1]
        return free_rank, torsion

    def is_trivial(self) -> bool:
        return self.invariant_factors() == (0, [])

    def __str__(self) -> str:
        free, tors = self.invariant_factors()
        return f"({free}; {','.join(str(t) for t in tors)})"


@dataclass(frozen=True)
class ModuleMap:
    source: PresentedModule
    target: PresentedModule
    matrix: Matrix  # target.generators x source.generators

    def __post_init__(self):
        if self.matrix.rows != self.target.generators or self.matrix.cols != self.source.generators:
            raise ValueError("map matrix shape mismatch")
        if self.matrix.ring != self.source.ring or self.source.ring != self.target.ring:
            raise ValueError("ring mismatch in module map")

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def check_well_defined(self):
        """Every relator of the source must land in the target relations."""
        img = self.matrix * self.source.relations
        for j in range(img.cols):
            if not self.target.is_zero_element(img.col(j)):
                raise IllDefinedMapError(
                    f"image of relator {j} is not zero in the target"
                )

    def is_well_defined(self) -> bool:
        try:
            self.check_well_defined()
            return True
        except IllDefinedMapError:
            return False

    def apply(self, x: Matrix) -> Matrix:
        return self.matrix * x

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self after other."""
        if other.target.generators != self.source.generators:
            raise ValueError("composition shape mismatch")
        return ModuleMap(other.source, self.target, self.matrix * other.matrix)

    def __add__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "ModuleMap") -> "ModuleMap":
        return ModuleMap(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "ModuleMap":
        return ModuleMap(self.source, self.target, -self.matrix)

    @staticmethod
    def identity(M: PresentedModule) -> "ModuleMap":
        return ModuleMap(M, M, Matrix.identity(M.ring, M.generators))

    @staticmethod
    def zero(source: PresentedModule, target: PresentedModule) -> "ModuleMap":
        return ModuleMap(source, target, Matrix.zeros(source.ring, target.generators, source.generators))

    def equals(self, other: "ModuleMap") -> bool:
        """Equality as maps, i.e. modulo the target relations, columnwise."""
        if (self.source.generators, self.target.generators) != (
            other.source.generators,
            other.target.generators,
        ):
            return False
        diff = self.matrix - other.matrix
        return all(
            self.target.is_zero_element(diff.col(j)) for j in range(diff.cols)
        )

    def is_identity(self) -> bool:
        return self.equals(ModuleMap.identity(self.source))


def is_module_iso(f: ModuleMap):
    """Decide invertibility; returns (True, inverse) or (False, None).

    A right inverse is assembled from generator preimages; the map is an
    isomorphism exactly when that right inverse is also a left inverse.
    """
    f.check_well_defined()
    M, N = f.source, f.target
    aug = f.matrix.hstack(N.relations)
    pre = solve(aug, Matrix.identity(f.ring, N.generators))
    if pre is None:
        return False, None  # not surjective
    g_mat = Matrix(
        f.ring, M.generators, N.generators, tuple(pre.entries[: M.generators * N.generators])
    )
    g = ModuleMap(N, M, g_mat)
    if not g.compose(f).is_identity():
        return False, None  # nontrivial kernel
    if not g.is_well_defined():
        return False, None
    return True, g


def submodule(M: PresentedModule, gens) -> tuple[PresentedModule, ModuleMap]:
    """The submodule generated by the given elements, with its inclusion.

    The result presents exactly the relations satisfied inside M, so the
    inclusion is injective by construction.
    """
    gens = list(gens)
    for x in gens:
        if x.rows != M.generators or x.cols != 1:
            raise ValueError("malformed element in submodule generators")
    s = len(gens)
    if s == 0:
        G = Matrix.zeros(M.ring, M.generators, 0)
    else:
        G = gens[0]
        for x in gens[1:]:
            G = G.hstack(x)
    # relations: coefficient vectors l with G l inside the relation span of M
    ker = kernel_basis(G.hstack(-M.relations))
    rel = Matrix(M.ring, s, ker.cols, tuple(ker.entries[: s * ker.cols]))
    sub = PresentedModule(M.ring, s, rel)
    incl = ModuleMap(sub, M, G)
    incl.check_well_defined()
    return sub, incl


def quotient_presentation(ring: Ring, numerator: Matrix, denominator: Matrix) -> PresentedModule:
    """Present span(numerator columns) / span(denominator columns).

    Both live in a common ambient free module; the denominator span must be
    contained in the numerator span for the result to be meaningful.
    """
    if numerator.rows != denominator.rows:
        raise ValueError("ambient rank mismatch")
    s = numerator.cols
    ker = kernel_basis(numerator.hstack(-denominator))
    rel = Matrix(ring, s, ker.cols, tuple(ker.entries[: s * ker.cols]))
    return PresentedModule(ring, s, rel)


def direct_sum(modules) -> PresentedModule:
    modules = list(modules)
    if not modules:
        raise ValueError("empty direct sum needs an explicit ring")
    ring = modules[0].ring
    gens = sum(m.generators for m in modules)
    rel = Matrix.block_diag(ring, [m.relations for m in modules])
    return PresentedModule(ring, gens, rel)


def tensor_with_free(M: PresentedModule, rank: int) -> PresentedModule:
    """M^rank, presented with block-diagonal relations."""
    return direct_sum([M] * rank) if rank else PresentedModule.zero(M.ring)
