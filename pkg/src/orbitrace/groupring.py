"""Integral group ring arithmetic and matrices over it.

Elements are finite integer combinations of normalized words; equality is
equality of normal forms, which is exact whenever the owning oracle's word
problem is (and formal otherwise, see groups.SeifertOracle).
"""

from dataclasses import dataclass, field

from .groups import IDENTITY, OracleMismatch, Word


@dataclass(frozen=True)
class GroupRingElement:
    oracle: object
    coeffs: tuple[tuple[Word, int], ...]  # sorted, normalized keys, no zeros

    @staticmethod
    def from_dict(oracle, mapping):
        items = {}
        for word, n in mapping.items():
            key = oracle.normalize(word)
            items[key] = items.get(key, 0) + int(n)
        return GroupRingElement(
            oracle, tuple(sorted((w, n) for w, n in items.items() if n))
        )

    @staticmethod
    def zero(oracle):
        return GroupRingElement(oracle, ())

    @staticmethod
    def from_word(oracle, word, n=1):
        return GroupRingElement.from_dict(oracle, {word: n})

    @staticmethod
    def one(oracle, n=1):
        return GroupRingElement.from_dict(oracle, {IDENTITY: n})

    def _check(self, other):
        if self.oracle != other.oracle:
            raise OracleMismatch("group ring elements over different oracles")

    @property
    def is_zero(self):
        return not self.coeffs

    def items(self):
        return self.coeffs

    def __add__(self, other):
        self._check(other)
        acc = dict(self.coeffs)
        for w, n in other.coeffs:
            acc[w] = acc.get(w, 0) + n
        return GroupRingElement(
            self.oracle, tuple(sorted((w, n) for w, n in acc.items() if n))
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, n):
        n = int(n)
        if n == 0:
            return GroupRingElement.zero(self.oracle)
        return GroupRingElement(self.oracle, tuple((w, n * c) for w, c in self.coeffs))

    def __mul__(self, other):
        """Distributive product, normalizing each monomial."""
        self._check(other)
        acc = {}
        for wa, na in self.coeffs:
            for wb, nb in other.coeffs:
                w = self.oracle.mul(wa, wb)
                acc[w] = acc.get(w, 0) + na * nb
        return GroupRingElement(
            self.oracle, tuple(sorted((w, n) for w, n in acc.items() if n))
        )

    def augment(self):
        """Sum of coefficients (image under the augmentation to Z)."""
        return sum(n for _w, n in self.coeffs)

    def abelianize(self):
        """Image under the additive extension of abelianization, in H_1."""
        group, _images = self.oracle.abelianization()
        acc = group.zero()
        for w, n in self.coeffs:
            acc = acc + self.oracle.abelianize_word(w).scaled(n)
        return acc

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for w, n in self.coeffs:
            name = self.oracle.word_str(w)
            if n == 1:
                parts.append(name)
            elif n == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{n}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def ring_mul(a, b):
    return a * b


def augment(a):
    return a.augment()


def abelianize_A(a):
    return a.abelianize()


def x_bracket(oracle, x, m):
    """The telescoping element attached to the power x^m.

    m > 0: 1 + x + ... + x^{m-1};  m = 0: 0;  m < 0: -x^{-1} - ... - x^{m}.
    Satisfies (1 - x) * x_bracket(x, m) = 1 - x^m for every m.
    """
    m = int(m)
    powers = {}
    ks = range(m) if m > 0 else range(-1, m - 1, -1)
    for k in ks:
        w = oracle.power(x, k)
        powers[w] = powers.get(w, 0) + (1 if m > 0 else -1)
    return GroupRingElement.from_dict(oracle, powers)


@dataclass(frozen=True)
class GroupRingMatrix:
    oracle: object
    rows: tuple[tuple[GroupRingElement, ...], ...]
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        width = {len(r) for r in self.rows}
        if len(width) > 1:
            raise ValueError("ragged matrix")
        for row in self.rows:
            for entry in row:
                if entry.oracle != self.oracle:
                    raise OracleMismatch("matrix entry over a different oracle")

    @staticmethod
    def build(oracle, nrows, ncols, entry_fn, labels=None):
        rows = tuple(
            tuple(entry_fn(i, j) for j in range(ncols)) for i in range(nrows)
        )
        return GroupRingMatrix(oracle, rows, labels)

    @staticmethod
    def zero(oracle, nrows, ncols):
        z = GroupRingElement.zero(oracle)
        return GroupRingMatrix(oracle, tuple((z,) * ncols for _ in range(nrows)))

    @staticmethod
    def identity(oracle, n):
        one = GroupRingElement.one(oracle)
        z = GroupRingElement.zero(oracle)
        return GroupRingMatrix(
            oracle, tuple(tuple(one if i == j else z for j in range(n)) for i in range(n))
        )

    @staticmethod
    def diagonal(oracle, entries):
        entries = tuple(entries)
        z = GroupRingElement.zero(oracle)
        n = len(entries)
        return GroupRingMatrix(
            oracle,
            tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n)),
        )

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def entry(self, i, j):
        return self.rows[i][j]

    def __add__(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")
        return GroupRingMatrix.build(
            self.oracle, self.nrows, self.ncols,
            lambda i, j: self.rows[i][j] + other.rows[i][j],
        )

    def __sub__(self, other):
        return self + other.scaled_int(-1)

    def scaled_int(self, n):
        return GroupRingMatrix.build(
            self.oracle, self.nrows, self.ncols, lambda i, j: self.rows[i][j].scaled(n)
        )

    def scaled_right(self, element):
        """Multiply every entry by a ring element on the right."""
        return GroupRingMatrix.build(
            self.oracle, self.nrows, self.ncols, lambda i, j: self.rows[i][j] * element
        )

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError(
                f"dimension mismatch: {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}"
            )
        z = GroupRingElement.zero(self.oracle)

        def entry(i, j):
            acc = z
            for k in range(self.ncols):
                acc = acc + self.rows[i][k] * other.rows[k][j]
            return acc

        return GroupRingMatrix.build(self.oracle, self.nrows, other.ncols, entry)

    @property
    def is_zero(self):
        return all(e.is_zero for row in self.rows for e in row)

    def __str__(self):
        return "[" + "; ".join(
            ", ".join(str(e) for e in row) for row in self.rows
        ) + "]"


def mat_trace_product(a, b):
    """sum_{i,j} A_ij * B_ji, the trace of AB computed without forming AB."""
    if a.ncols != b.nrows or a.nrows != b.ncols:
        raise ValueError(
            f"dimension mismatch: trace of {a.nrows}x{a.ncols} against {b.nrows}x{b.ncols}"
        )
    acc = GroupRingElement.zero(a.oracle)
    for i in range(a.nrows):
        for j in range(a.ncols):
            acc = acc + a.rows[i][j] * b.rows[j][i]
    return acc
