"""Finitely generated abelian groups in Smith normal form coordinates.

A group is Z^r (+) Z/d_1 (+) ... (+) Z/d_k with 2 <= d_1 | d_2 | ... | d_k;
unit invariant factors are dropped so equal groups compare equal.  Elements
carry their owning group and keep torsion coordinates reduced into [0, d_i).
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .snf import smith_normal_form


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for i, d in enumerate(self.torsion):
            if d < 2:
                raise ValueError("torsion coefficients must be >= 2")
            if i and d % self.torsion[i - 1] != 0:
                raise ValueError("torsion coefficients must form a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def element(self, free=(), torsion=()):
        free = tuple(int(x) for x in free)
        torsion = tuple(int(x) for x in torsion)
        if len(free) != self.free_rank or len(torsion) != len(self.torsion):
            raise ValueError("coordinate length mismatch")
        torsion = tuple(x % d for x, d in zip(torsion, self.torsion))
        return AbelianElement(self, free, torsion)

    def zero(self):
        return self.element((0,) * self.free_rank, (0,) * len(self.torsion))

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AbelianElement:
    group: FgAbelianGroup
    free: tuple[int, ...]
    torsion: tuple[int, ...]

    def _check(self, other):
        if self.group != other.group:
            raise ValueError("elements of different groups")

    def __add__(self, other):
        self._check(other)
        return self.group.element(
            tuple(a + b for a, b in zip(self.free, other.free)),
            tuple(a + b for a, b in zip(self.torsion, other.torsion)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, n):
        n = int(n)
        return self.group.element(
            tuple(n * a for a in self.free), tuple(n * a for a in self.torsion)
        )

    @property
    def is_zero(self):
        return not any(self.free) and not any(self.torsion)

    def order(self):
        """Order of the element, or None if infinite."""
        if any(self.free):
            return None
        o = 1
        for x, d in zip(self.torsion, self.group.torsion):
            if x:
                o = lcm(o, d // gcd(d, x))
        return o

    def rational(self):
        """Image in H (tensor) Q, i.e. the free coordinates as fractions."""
        return tuple(Fraction(x) for x in self.free)

    def __str__(self):
        if self.is_zero:
            return "0"
        return "(" + ", ".join(
            [str(x) for x in self.free]
            + [f"{x} mod {d}" for x, d in zip(self.torsion, self.group.torsion)]
        ) + ")"


def quotient_by_relations(num_generators, relation_rows):
    """Z^n modulo the subgroup spanned by the given relation vectors.

    Returns (group, images) where images[i] is the class of the i-th
    standard generator.  Computed from the Smith normal form of the matrix
    whose columns are the relations.
    """
    n = num_generators
    k = len(relation_rows)
    for row in relation_rows:
        if len(row) != n:
            raise ValueError("relation length mismatch")
    cols = [[relation_rows[j][i] for j in range(k)] for i in range(n)]
    s, u, _v = smith_normal_form(cols)
    diag = [s[i][i] for i in range(min(n, k))]
    torsion_pos = [i for i, d in enumerate(diag) if d >= 2]
    free_pos = [i for i in range(n) if i >= len(diag) or diag[i] == 0]
    group = FgAbelianGroup(len(free_pos), tuple(diag[i] for i in torsion_pos))
    images = []
    for g in range(n):
        col = [u[i][g] for i in range(n)]
        images.append(group.element(
            tuple(col[i] for i in free_pos),
            tuple(col[i] for i in torsion_pos),
        ))
    return group, images
