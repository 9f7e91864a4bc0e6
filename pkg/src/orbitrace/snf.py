"""Exact integer matrix normal forms and linear solving.

Everything here works over arbitrary-precision Python integers; matrices
are plain lists of lists.  The Smith normal form routine returns the full
decomposition U*M*V = S and re-verifies it (including unimodularity of the
transforms) before returning, so downstream homology computations can trust
the output unconditionally.
"""


def xgcd(a, b):
    # Maintain x*a + y*b == g while running the Euclidean algorithm.
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    if not a or not b:
        rows = len(a)
        cols = len(b[0]) if b else 0
        return [[0] * cols for _ in range(rows)]
    n = len(b)
    cols = len(b[0])
    out = []
    for row in a:
        out.append([sum(row[k] * b[k][j] for k in range(n)) for j in range(cols)])
    return out


def determinant(matrix):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


class SmithVerificationError(AssertionError):
    """The computed decomposition failed its own self-check."""


def smith_normal_form(matrix):
    """Smith normal form with transforms.

    Returns (S, U, V) where U*M*V = S, U and V are unimodular, and S is
    diagonal with non-negative entries d_1 | d_2 | ... .  The decomposition
    is verified entry by entry before returning.
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    for row in matrix:
        if len(row) != n:
            raise ValueError("ragged matrix")
    a = [[int(x) for x in row] for row in matrix]
    u = identity_matrix(m)
    v = identity_matrix(n)

    def row_combine(i1, i2, j):
        # Zero a[i2][j] against the pivot a[i1][j] by unimodular row ops.
        p, q = a[i1][j], a[i2][j]
        if q == 0:
            return
        if p == 0:
            a[i1], a[i2] = a[i2], a[i1]
            u[i1], u[i2] = u[i2], u[i1]
            return
        if q % p == 0:
            f = -(q // p)
            for jj in range(n):
                a[i2][jj] += f * a[i1][jj]
            for jj in range(m):
                u[i2][jj] += f * u[i1][jj]
            return
        x, y, g = xgcd(p, q)
        pg, qg = p // g, q // g
        for jj in range(n):
            s, t = a[i1][jj], a[i2][jj]
            a[i1][jj] = x * s + y * t
            a[i2][jj] = -qg * s + pg * t
        for jj in range(m):
            s, t = u[i1][jj], u[i2][jj]
            u[i1][jj] = x * s + y * t
            u[i2][jj] = -qg * s + pg * t

    def col_combine(j1, j2, i):
        p, q = a[i][j1], a[i][j2]
        if q == 0:
            return
        if p == 0:
            for row in a:
                row[j1], row[j2] = row[j2], row[j1]
            for row in v:
                row[j1], row[j2] = row[j2], row[j1]
            return
        if q % p == 0:
            f = -(q // p)
            for row in a:
                row[j2] += f * row[j1]
            for row in v:
                row[j2] += f * row[j1]
            return
        x, y, g = xgcd(p, q)
        pg, qg = p // g, q // g
        for row in a:
            s, t = row[j1], row[j2]
            row[j1] = x * s + y * t
            row[j2] = -qg * s + pg * t
        for row in v:
            s, t = row[j1], row[j2]
            row[j1] = x * s + y * t
            row[j2] = -qg * s + pg * t

    def diagonalize():
        for t in range(min(m, n)):
            # Find a pivot in the remaining submatrix.
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if a[i][j] != 0 and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return
            pi, pj = pivot
            if pi != t:
                a[t], a[pi] = a[pi], a[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in a:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            while True:
                for i in range(t + 1, m):
                    row_combine(t, i, t)
                if all(a[t][j] == 0 for j in range(t + 1, n)):
                    break
                for j in range(t + 1, n):
                    col_combine(t, j, t)
                if all(a[i][t] == 0 for i in range(t + 1, m)):
                    break

    diagonalize()
    # Fix signs and enforce the divisibility chain; each violation is repaired
    # by a column add followed by re-diagonalization (strictly refines gcds,
    # so this terminates).
    r = min(m, n)
    for _ in range(64 * (r + 1)):
        for i in range(r):
            if a[i][i] < 0:
                for jj in range(n):
                    a[i][jj] = -a[i][jj]
                for jj in range(m):
                    u[i][jj] = -u[i][jj]
        bad = None
        for i in range(r - 1):
            if a[i][i] != 0 and a[i + 1][i + 1] % a[i][i] != 0:
                bad = i
                break
            if a[i][i] == 0 and a[i + 1][i + 1] != 0:
                bad = i
                break
        if bad is None:
            break
        for row in a:
            row[bad] += row[bad + 1]
        for row in v:
            row[bad] += row[bad + 1]
        diagonalize()
    else:
        raise SmithVerificationError("divisibility repair did not terminate")

    _verify_snf(matrix, a, u, v)
    return a, u, v


def _verify_snf(original, s, u, v):
    m = len(s)
    n = len(s[0]) if m else 0
    prod = mat_mul(mat_mul(u, [list(r) for r in original]), v)
    if prod != s:
        raise SmithVerificationError("U*M*V != S")
    for i in range(m):
        for j in range(n):
            if i != j and s[i][j] != 0:
                raise SmithVerificationError("S not diagonal")
    diag = [s[i][i] for i in range(min(m, n))]
    for i in range(len(diag) - 1):
        d, e = diag[i], diag[i + 1]
        if d < 0 or e < 0:
            raise SmithVerificationError("negative diagonal entry")
        if d == 0 and e != 0:
            raise SmithVerificationError("zero before nonzero on diagonal")
        if d != 0 and e % d != 0:
            raise SmithVerificationError("divisibility chain broken")
    if abs(determinant(u)) != 1 or abs(determinant(v)) != 1:
        raise SmithVerificationError("transform not unimodular")


def solve_integer(matrix, rhs):
    """One integer solution x of M x = rhs, or None if none exists."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if len(rhs) != m:
        raise ValueError("rhs length mismatch")
    if n == 0:
        return [] if all(b == 0 for b in rhs) else None
    s, u, v = smith_normal_form(matrix)
    c = [sum(u[i][j] * rhs[j] for j in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(m):
        d = s[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    return [sum(v[i][j] * y[j] for j in range(n)) for i in range(n)]
