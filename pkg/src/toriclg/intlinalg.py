"""Exact linear algebra over the integers and rationals.

All matrices are sequences of row sequences; nothing here is sized for
large inputs (ambient dimensions stay below 10 throughout the package),
so the implementations favor exactness and clarity: fraction-pivot
Gaussian elimination, textbook Smith normal form, and a small Bland-rule
simplex for feasibility questions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_vec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def mat_mul(A, B):
    n = len(B[0])
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(n)]
        for i in range(len(A))
    ]


def transpose(A):
    return [list(col) for col in zip(*A)]


def det(A):
    """Exact determinant via fraction Gaussian elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            M[c], M[pivot_row] = M[pivot_row], M[c]
            sign = -sign
        pivot = M[c][c]
        result *= pivot
        for i in range(c + 1, n):
            if M[i][c] != 0:
                factor = M[i][c] / pivot
                M[i] = [x - factor * y for x, y in zip(M[i], M[c])]
    return sign * result


def matrix_inverse(A):
    """Inverse with Fraction entries; ValueError if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        pivot_row = next((i for i in range(c, n) if M[i][c] != 0), None)
        if pivot_row is None:
            raise ValueError("singular matrix")
        M[c], M[pivot_row] = M[pivot_row], M[c]
        pivot = M[c][c]
        M[c] = [x / pivot for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                factor = M[i][c]
                M[i] = [x - factor * y for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def integer_inverse(A):
    """Inverse of a unimodular integer matrix, with int entries."""
    inv = matrix_inverse(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def solve(A, b):
    """One exact solution of A x = b (free variables set to 0), or None."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(b[i])] for i in range(m)]
    pivot_cols = []
    r = 0
    for c in range(n):
        if r == m:
            break
        pivot_row = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        pivot = M[r][c]
        M[r] = [x / pivot for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                factor = M[i][c]
                M[i] = [x - factor * y for x, y in zip(M[i], M[r])]
        pivot_cols.append(c)
        r += 1
    if any(M[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivot_cols):
        x[c] = M[i][n]
    return tuple(x)


def rank(A):
    m = len(A)
    if m == 0:
        return 0
    n = len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    r = 0
    for c in range(n):
        pivot_row = next((i for i in range(r, m) if M[i][c] != 0), None)
        if pivot_row is None:
            continue
        M[r], M[pivot_row] = M[pivot_row], M[r]
        pivot = M[r][c]
        for i in range(r + 1, m):
            if M[i][c] != 0:
                factor = M[i][c] / pivot
                M[i] = [x - factor * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == m:
            break
    return r


def smith_normal_form(A):
    """Returns (D, U, V) with U*A*V = D diagonal, U and V unimodular."""
    M = [[int(x) for x in row] for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    U = identity(m)
    V = identity(n)

    def row_sub(i, j, q):
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_sub(i, j, q):
        for k in range(m):
            M[k][i] -= q * M[k][j]
        for k in range(n):
            V[k][i] -= q * V[k][j]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for k in range(m):
            M[k][i], M[k][j] = M[k][j], M[k][i]
        for k in range(n):
            V[k][i], V[k][j] = V[k][j], V[k][i]

    def row_negate(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if M[i][j] != 0 and (best is None or abs(M[i][j]) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        if M[t][t] < 0:
            row_negate(t)
        while True:
            changed = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    row_sub(i, t, M[i][t] // M[t][t])
                    if M[i][t] != 0:
                        row_swap(t, i)
                        if M[t][t] < 0:
                            row_negate(t)
                        changed = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    col_sub(j, t, M[t][j] // M[t][t])
                    if M[t][j] != 0:
                        col_swap(t, j)
                        changed = True
            if not changed:
                break
        t += 1
    return M, U, V


def integer_kernel_basis(A):
    """Basis of {x in Z^n : A x = 0}; saturated (a direct summand)."""
    m = len(A)
    n = len(A[0]) if m else 0
    if n == 0:
        return []
    D, _U, V = smith_normal_form(A)
    r = sum(1 for i in range(min(m, n)) if D[i][i] != 0)
    return [tuple(V[k][j] for k in range(n)) for j in range(r, n)]


def saturation_basis(vectors):
    """Basis of the saturation of the lattice spanned by the given vectors.

    The saturation is span_Q(vectors) intersected with Z^n; its basis
    extends to a basis of Z^n, which is what makes coordinate reductions
    to full dimension unimodularly reversible.
    """
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return []
    n = len(vectors[0])
    cols = transpose(vectors)  # n x k matrix with the vectors as columns
    D, U, _V = smith_normal_form(cols)
    r = sum(1 for i in range(min(n, len(vectors))) if D[i][i] != 0)
    U_inv = integer_inverse(U)
    return [tuple(U_inv[k][j] for k in range(n)) for j in range(r)]


def primitive_vector(v):
    """v divided by the gcd of its entries (zero vector unchanged)."""
    g = 0
    for x in v:
        g = gcd(g, abs(int(x)))
    if g == 0:
        return tuple(int(x) for x in v)
    return tuple(int(x) // g for x in v)


def rational_ray_to_primitive(v):
    """First lattice point on the ray through a rational vector."""
    denominators = [Fraction(x).denominator for x in v]
    lcm = 1
    for d in denominators:
        lcm = lcm * d // gcd(lcm, d)
    return primitive_vector(tuple(int(Fraction(x) * lcm) for x in v))


def unimodular_with_last_row(g):
    """A unimodular integer matrix whose last row is the primitive vector g."""
    g = [int(x) for x in g]
    n = len(g)
    D, _U, V = smith_normal_form([g])
    if abs(D[0][0]) != 1:
        raise ValueError("vector is not primitive")
    # g*V = (+-1, 0, ..., 0); move that column last and fix the sign
    W = [list(row) for row in V]
    for k in range(n):
        W[k][0], W[k][n - 1] = W[k][n - 1], W[k][0]
    value = sum(g[k] * W[k][n - 1] for k in range(n))
    if value == -1:
        for k in range(n):
            W[k][n - 1] = -W[k][n - 1]
    return integer_inverse(W)


def unimodular_completion(columns):
    """Extend integer columns spanning a saturated rank-d lattice to a
    unimodular n x n matrix whose first d columns are the given ones."""
    n = len(columns[0])
    d = len(columns)
    S = [[int(columns[j][i]) for j in range(d)] for i in range(n)]
    D, U, V = smith_normal_form(S)
    for k in range(d):
        if abs(D[k][k]) != 1:
            raise ValueError("columns do not span a saturated lattice")
    # S = U^-1 D V^-1 with D diag(+-1); take T = U^-1 * blockdiag(diag(D) V^-1, I)
    U_inv = integer_inverse(U)
    V_inv = integer_inverse(V)
    block = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < d and j < d:
                block[i][j] = D[i][i] * V_inv[i][j]
            elif i >= d and j >= d:
                block[i][j] = int(i == j)
    T = mat_mul(U_inv, block)
    for i in range(n):
        for j in range(d):
            if T[i][j] != S[i][j]:
                raise ValueError("completion failed")
    return [[int(x) for x in row] for row in T]


def int_nth_root(m, d):
    """floor(m ** (1/d)) for m >= 0, exact integer arithmetic."""
    if m < 0 or d < 1:
        raise ValueError("int_nth_root needs m >= 0 and d >= 1")
    if d == 1 or m in (0, 1):
        return m
    x = 1 << ((m.bit_length() + d - 1) // d)
    while True:
        y = ((d - 1) * x + m // x ** (d - 1)) // d
        if y >= x:
            return x
        x = y


def nth_root_fraction(x, d):
    """Exact rational d-th root of x, or None.

    Even d requires x >= 0 and returns the positive root.
    """
    x = Fraction(x)
    if x < 0:
        if d % 2 == 0:
            return None
        r = nth_root_fraction(-x, d)
        return None if r is None else -r
    rn = int_nth_root(x.numerator, d)
    rd = int_nth_root(x.denominator, d)
    if rn**d == x.numerator and rd**d == x.denominator:
        return Fraction(rn, rd)
    return None


def lp_feasible(A, b):
    """A nonnegative solution of A x = b, or None (exact phase-I simplex).

    Bland's rule, so it terminates without perturbation; sized for the
    handful-of-variables systems this package produces.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    rows = [[Fraction(v) for v in row] for row in A]
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    width = n + m
    T = [rows[i] + [Fraction(int(j == i)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    # phase-I objective: minimize the artificial sum; reduced-cost row
    obj = [Fraction(0)] * (width + 1)
    for j in range(width + 1):
        obj[j] = (Fraction(1) if n <= j < width else Fraction(0)) - sum(T[i][j] for i in range(m))
    while True:
        entering = next((j for j in range(width) if obj[j] < 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            if T[i][entering] > 0:
                ratio = T[i][width] / T[i][entering]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return None  # unbounded phase-I cannot happen; defensive
        pivot = T[leaving][entering]
        T[leaving] = [x / pivot for x in T[leaving]]
        for i in range(m):
            if i != leaving and T[i][entering] != 0:
                factor = T[i][entering]
                T[i] = [x - factor * y for x, y in zip(T[i], T[leaving])]
        if obj[entering] != 0:
            factor = obj[entering]
            obj = [x - factor * y for x, y in zip(obj, T[leaving] + [])]
        basis[leaving] = entering
    if -obj[width] != 0:
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(basis):
        if col < n:
            x[col] = T[i][width]
    return tuple(x)
