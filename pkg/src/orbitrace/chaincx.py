"""Based free chain complexes over a group ring, with chain homotopies.

Sign conventions, fixed once here:

* the aggregate boundary is the block matrix of the per-degree boundaries,
  with no extra signs;
* the aggregate homotopy folds the per-degree matrices D_k with the sign
  (-1)^{k+1};
* the diagonal sign matrix I~ carries (-1)^k in degree k;
* a homotopy with translation word eta must satisfy, as matrices,
  D~ @ d~ - d~ @ D~ = I~ * (1 - eta^{-1}).

The trace invariant of a (complex, homotopy) pair is the Hochschild 1-cycle
trace(d~ (x) D~); its reduction is the quantity the rest of the package
cross-checks against closed formulas.  A worked derivation of the folding
and of the homotopy concatenation order is in the README.
"""

from dataclasses import dataclass

from .groups import IDENTITY, OracleMismatch
from .groupring import GroupRingElement, GroupRingMatrix
from .hochschild import Chain1, central_action, trace_T1


class ChainComplexError(Exception):
    pass


class HomotopyRelationError(ChainComplexError):
    pass


class MixedEtaError(ChainComplexError):
    pass


class NotAContraction(ChainComplexError):
    pass


@dataclass(frozen=True)
class BasedComplex:
    """Free right modules with preferred bases and boundary matrices.

    ``ranks`` maps degree -> number of basis elements; ``boundaries`` maps a
    degree k to the matrix of d_k : degree k -> degree k-1 (rows indexed by
    the degree k-1 basis).  d_{k-1} d_k = 0 is enforced at construction.
    """

    oracle: object
    ranks: tuple[tuple[int, int], ...]  # sorted (degree, rank) pairs
    boundaries: tuple[tuple[int, GroupRingMatrix], ...]  # sorted (degree, matrix)

    @staticmethod
    def build(oracle, ranks, boundaries):
        ranks = tuple(sorted((int(k), int(r)) for k, r in dict(ranks).items() if r))
        boundaries = tuple(sorted(dict(boundaries).items()))
        cx = BasedComplex(oracle, ranks, boundaries)
        cx._validate()
        return cx

    def _validate(self):
        ranks = dict(self.ranks)
        for k, mat in self.boundaries:
            if mat.oracle != self.oracle:
                raise OracleMismatch("boundary over a different oracle")
            if k not in ranks or k - 1 not in ranks:
                raise ChainComplexError(f"boundary in degree {k} without bases")
            if (mat.nrows, mat.ncols) != (ranks[k - 1], ranks[k]):
                raise ChainComplexError(f"boundary shape mismatch in degree {k}")
        bnd = dict(self.boundaries)
        for k, mat in bnd.items():
            if k - 1 in bnd and not (bnd[k - 1] @ mat).is_zero:
                raise ChainComplexError(f"d d != 0 between degrees {k} and {k - 2}")

    def degrees(self):
        return tuple(k for k, _r in self.ranks)

    def rank(self, k):
        return dict(self.ranks).get(k, 0)

    def basis(self):
        """Aggregate basis as (degree, index) pairs, degree-major."""
        return tuple((k, i) for k, r in self.ranks for i in range(r))

    def boundary_matrix(self, k):
        ranks = dict(self.ranks)
        for kk, mat in self.boundaries:
            if kk == k:
                return mat
        return GroupRingMatrix.zero(self.oracle, ranks.get(k - 1, 0), ranks.get(k, 0))

    def aggregate_boundary(self):
        basis = self.basis()
        index = {b: i for i, b in enumerate(basis)}
        z = GroupRingElement.zero(self.oracle)
        n = len(basis)
        rows = [[z] * n for _ in range(n)]
        for k, mat in self.boundaries:
            for i in range(mat.nrows):
                for j in range(mat.ncols):
                    rows[index[(k - 1, i)]][index[(k, j)]] = mat.rows[i][j]
        return GroupRingMatrix(self.oracle, tuple(tuple(r) for r in rows), labels=basis)

    def sign_diagonal(self):
        """Entries of I~ = (+/-1 per basis element), degree parity signs."""
        return tuple((-1) ** k for k, _i in self.basis())

    def euler_characteristic(self):
        return sum(((-1) ** k) * r for k, r in self.ranks)


@dataclass(frozen=True)
class Homotopy:
    """Degree +1 matrices D_k (degree k -> k+1) and the translation word eta.

    The maps are stored exactly as constructed (any source-level signs such
    as the (-1)^{n+1} in suspension formulas are already inside); the
    (-1)^{k+1} folding is applied only when aggregating.
    """

    oracle: object
    maps: tuple[tuple[int, GroupRingMatrix], ...]  # sorted (degree, matrix)
    eta: object = IDENTITY

    @staticmethod
    def build(oracle, maps, eta=IDENTITY):
        maps = tuple(sorted((int(k), m) for k, m in dict(maps).items() if not m.is_zero))
        return Homotopy(oracle, maps, oracle.normalize(eta))

    def map_matrix(self, k, complex_):
        for kk, mat in self.maps:
            if kk == k:
                return mat
        return GroupRingMatrix.zero(
            complex_.oracle, complex_.rank(k + 1), complex_.rank(k)
        )

    def aggregate_folded(self, complex_):
        """The sign-folded aggregate: block (-1)^{k+1} D_k in degree k."""
        basis = complex_.basis()
        index = {b: i for i, b in enumerate(basis)}
        z = GroupRingElement.zero(self.oracle)
        n = len(basis)
        rows = [[z] * n for _ in range(n)]
        ranks = dict(complex_.ranks)
        for k, mat in self.maps:
            if k + 1 not in ranks or k not in ranks:
                raise ChainComplexError(f"homotopy in degree {k} without bases")
            if (mat.nrows, mat.ncols) != (ranks[k + 1], ranks[k]):
                raise ChainComplexError(f"homotopy shape mismatch in degree {k}")
            sign = (-1) ** (k + 1)
            for i in range(mat.nrows):
                for j in range(mat.ncols):
                    rows[index[(k + 1, i)]][index[(k, j)]] = mat.rows[i][j].scaled(sign)
        return GroupRingMatrix(self.oracle, tuple(tuple(r) for r in rows), labels=basis)


def verify_homotopy(complex_, homotopy):
    """Entrywise check of D~ d~ - d~ D~ = I~ (1 - eta^{-1})."""
    if complex_.oracle != homotopy.oracle:
        raise OracleMismatch("homotopy over a different oracle")
    oracle = complex_.oracle
    d = complex_.aggregate_boundary()
    dd = homotopy.aggregate_folded(complex_)
    lhs = (dd @ d) - (d @ dd)
    unit = GroupRingElement.one(oracle) - GroupRingElement.from_word(
        oracle, oracle.inverse(homotopy.eta)
    )
    signs = complex_.sign_diagonal()
    n = len(signs)
    for i in range(n):
        for j in range(n):
            expected = unit.scaled(signs[i]) if i == j else GroupRingElement.zero(oracle)
            if lhs.rows[i][j] != expected:
                return False
    return True


def x1_trace(complex_, homotopy, check=True):
    """The trace 1-cycle of a (complex, homotopy) pair.

    Raises HomotopyRelationError when the homotopy relation fails and
    NotACycle when the trace fails its cycle criterion (either signals a
    sign error in the construction of the inputs).
    """
    if check and not verify_homotopy(complex_, homotopy):
        raise HomotopyRelationError("homotopy relation fails")
    return trace_T1(complex_.aggregate_boundary(), homotopy.aggregate_folded(complex_))


def x1_filtered(levels, check=True):
    """Sum of the per-level traces of a filtered family.

    ``levels`` is a sequence of (BasedComplex, Homotopy) pairs sharing one
    translation word eta.
    """
    levels = list(levels)
    if not levels:
        raise ValueError("no levels")
    oracle = levels[0][0].oracle
    eta = levels[0][1].eta
    for cx, h in levels:
        if cx.oracle != oracle or h.oracle != oracle:
            raise OracleMismatch("levels over different oracles")
        if oracle.normalize(h.eta) != oracle.normalize(eta):
            raise MixedEtaError("levels carry different translation words")
    total = Chain1.zero(oracle)
    for cx, h in levels:
        total = total + x1_trace(cx, h, check=check)
    return total


def _check_unit_diagonal(diag):
    for e in diag:
        if len(e.coeffs) != 1 or e.coeffs[0][1] not in (1, -1):
            raise ChainComplexError("rebase entries must be +/- a single word")


def rebase(complex_, homotopy, diagonal):
    """Change preferred basis by a diagonal +/-word matrix.

    ``diagonal`` lists one +/-monomial per aggregate basis element, in the
    order of ``complex_.basis()``.  Both the boundary and the homotopy are
    conjugated (new = U M U^{-1}); the returned correction chain

        (1 - gamma) . T1(U (x) U^{-1})

    equals the difference x1_trace(old) - x1_trace(new) after reduction, and
    its doubleprime part vanishes since all its markers are central.
    """
    oracle = complex_.oracle
    basis = complex_.basis()
    diag = tuple(diagonal)
    if len(diag) != len(basis):
        raise ChainComplexError("diagonal length must match the aggregate basis")
    _check_unit_diagonal(diag)
    inv = tuple(
        GroupRingElement.from_word(oracle, oracle.inverse(e.coeffs[0][0]), e.coeffs[0][1])
        for e in diag
    )
    pos = {b: i for i, b in enumerate(basis)}

    def conjugate_block(k_target, k_source, mat):
        def entry(i, j):
            left = diag[pos[(k_target, i)]]
            right = inv[pos[(k_source, j)]]
            return left * mat.rows[i][j] * right

        return GroupRingMatrix.build(oracle, mat.nrows, mat.ncols, entry)

    new_boundaries = {
        k: conjugate_block(k - 1, k, mat) for k, mat in complex_.boundaries
    }
    new_complex = BasedComplex.build(oracle, complex_.ranks, new_boundaries)
    new_maps = {
        k: conjugate_block(k + 1, k, mat) for k, mat in homotopy.maps
    }
    new_homotopy = Homotopy.build(oracle, new_maps, homotopy.eta)
    u_mat = GroupRingMatrix.diagonal(oracle, diag)
    uinv_mat = GroupRingMatrix.diagonal(oracle, inv)
    base = trace_T1(u_mat, uinv_mat)
    correction = base - central_action(homotopy.eta, base)
    return new_complex, new_homotopy, correction


def concat_homotopies(complex_, h1, h2):
    """Compose two self-homotopies: first h1, then h2.

    The composite is D = D1 + D2 * eta1^{-1} with translation word
    eta1*eta2, matching the left action gamma1.(u (x) v) = u (x) v eta1^{-1};
    the result is verified against the homotopy relation.
    """
    oracle = complex_.oracle
    if oracle.is_central(h1.eta) is not True or oracle.is_central(h2.eta) is not True:
        raise ChainComplexError("translation words must be central")
    shift = GroupRingElement.from_word(oracle, oracle.inverse(h1.eta))
    maps = {}
    for k in set(dict(h1.maps)) | set(dict(h2.maps)):
        m1 = h1.map_matrix(k, complex_)
        m2 = h2.map_matrix(k, complex_)
        maps[k] = m1 + m2.scaled_right(shift)
    out = Homotopy.build(oracle, maps, oracle.mul(h1.eta, h2.eta))
    if not verify_homotopy(complex_, out):
        raise HomotopyRelationError("concatenated homotopy fails the relation")
    return out


def torsion_rep(complex_, contraction):
    """Invertible odd-to-even matrix representing an acyclic based complex.

    ``contraction`` maps degree k to the matrix of a chain contraction
    delta_k : degree k -> k+1 with delta d + d delta = id.  The returned
    pair (V, V^{-1}) is (d + delta')|odd and (d + delta')|even for the
    squared-to-zero contraction delta' = delta d delta; both compositions
    are verified to be identities.
    """
    oracle = complex_.oracle
    basis = complex_.basis()
    index = {b: i for i, b in enumerate(basis)}
    n = len(basis)
    z = GroupRingElement.zero(oracle)
    ranks = dict(complex_.ranks)

    rows = [[z] * n for _ in range(n)]
    for k, mat in dict(contraction).items():
        if (mat.nrows, mat.ncols) != (ranks.get(k + 1, 0), ranks.get(k, 0)):
            raise NotAContraction(f"contraction shape mismatch in degree {k}")
        for i in range(mat.nrows):
            for j in range(mat.ncols):
                rows[index[(k + 1, i)]][index[(k, j)]] = mat.rows[i][j]
    delta = GroupRingMatrix(oracle, tuple(tuple(r) for r in rows))
    d = complex_.aggregate_boundary()
    ident = GroupRingMatrix.identity(oracle, n)
    if (delta @ d) + (d @ delta) != ident:
        raise NotAContraction("delta d + d delta != id")
    delta2 = delta @ d @ delta
    if not (delta2 @ delta2).is_zero:
        raise NotAContraction("normalized contraction fails delta'^2 = 0")
    s = d + delta2
    if (s @ s) != ident:
        raise NotAContraction("(d + delta')^2 != id")
    odd = [i for i, (k, _x) in enumerate(basis) if k % 2]
    even = [i for i, (k, _x) in enumerate(basis) if k % 2 == 0]
    v = GroupRingMatrix.build(
        oracle, len(even), len(odd), lambda i, j: s.rows[even[i]][odd[j]]
    )
    vinv = GroupRingMatrix.build(
        oracle, len(odd), len(even), lambda i, j: s.rows[odd[i]][even[j]]
    )
    if (v @ vinv) != GroupRingMatrix.identity(oracle, len(even)):
        raise NotAContraction("V V^{-1} != id")
    if (vinv @ v) != GroupRingMatrix.identity(oracle, len(odd)):
        raise NotAContraction("V^{-1} V != id")
    return v, vinv
