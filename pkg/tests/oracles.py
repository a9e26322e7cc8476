"""Independent reference computations used by the tests.

These deliberately avoid the package's cosimplicial machinery and its
sparse elimination: they work with plain Fractions and textbook Gaussian
elimination.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from sympy import Matrix


def fraction_rank(M, p: int = 0) -> int:
    """Rank of a dense matrix by Gaussian elimination over Q (p = 0) or F_p."""
    if p:
        rows = [[int(x) % p for x in r] for r in M]
    else:
        rows = [[Fraction(x) for x in r] for r in M]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p) if p else 1 / rows[r][c]
        rows[r] = [(x * inv) % p if p else x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [((a - f * b) % p if p else a - f * b) for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def algebra_tables(A):
    """Structure constants of a one-object, ungraded category as nested lists."""
    hs = A.hom("p", "p")
    n = hs.dim
    table = A.comp[("p", "p", "p")]
    mult = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for (i, j), v in table.items():
        for k, c in v.items():
            mult[i][j][k] = Fraction(int(c.numerator), int(c.denominator)) if hasattr(c, "numerator") else Fraction(c)
    unit = [Fraction(0)] * n
    for i, c in A.units["p"].items():
        unit[i] = Fraction(1) if c == 1 else Fraction(str(c))
    return n, mult, unit


def unit_first_basis(n, mult, unit):
    """Rewrite structure constants in a basis whose first vector is the unit."""
    i0 = next(i for i, c in enumerate(unit) if c)
    new = [unit] + [[Fraction(int(i == j)) for i in range(n)] for j in range(n) if j != i0]
    P = Matrix(new).T  # columns: new basis in old coordinates
    Pinv = P.inv()

    def old_mul(x, y):
        out = [Fraction(0)] * n
        for i in range(n):
            for j in range(n):
                if x[i] and y[j]:
                    for k in range(n):
                        out[k] += x[i] * y[j] * mult[i][j][k]
        return out

    table = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            prod = old_mul([Fraction(str(c)) for c in P.col(a)], [Fraction(str(c)) for c in P.col(b)])
            coords = Pinv * Matrix(prod)
            table[a][b] = [Fraction(str(c)) for c in coords]
    return n, table, [Fraction(int(i == 0)) for i in range(n)]


def bar_hochschild(A, top: int) -> dict[int, int]:
    """Dimensions of HH^n(A, A), n < top, from normalized bar cochains.

    A must be a one-object ungraded category whose unit is a basis vector.
    C^n = Hom(Abar^{(x)n}, A) with
    (df)(a1..a_{n+1}) = a1 f(a2..) + sum (-1)^i f(.. a_i a_{i+1} ..) + (-1)^{n+1} f(a1..a_n) a_{n+1}.
    """
    n, mult, unit = algebra_tables(A)
    n, mult, unit = unit_first_basis(n, mult, unit)
    u = [0]
    bar = list(range(1, n))

    def mul(x, y):
        out = [Fraction(0)] * n
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        for k in range(n):
                            out[k] += a * b * mult[i][j][k]
        return out

    def e(i):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        return v

    def dmat(k):
        src = list(product(bar, repeat=k))
        tgt = list(product(bar, repeat=k + 1))
        sidx = {s: i for i, s in enumerate(src)}
        # cochain f is a vector indexed by (s, out) -> row-major
        rows = len(tgt) * n
        cols = len(src) * n
        M = [[Fraction(0)] * cols for _ in range(rows)]
        for ci, (s, o) in enumerate(product(range(len(src)), range(n))):
            f = {src[s]: e(o)}

            def fval(word):
                # f on a word of algebra vectors, multilinear; f is zero off its one tuple
                out = [Fraction(0)] * n
                for choice in product(*[[(i, c) for i, c in enumerate(w) if c and i != u[0]] for w in word]):
                    key = tuple(i for i, _ in choice)
                    if key in f:
                        coef = Fraction(1)
                        for _, c in choice:
                            coef *= c
                        out = [a + coef * b for a, b in zip(out, f[key])]
                return out

            for ti, t in enumerate(tgt):
                word = [e(i) for i in t]
                val = mul(word[0], fval(word[1:]))
                for i in range(k):
                    merged = word[:i] + [mul(word[i], word[i + 1])] + word[i + 2:]
                    sgn = (-1) ** (i + 1)
                    val = [a + sgn * b for a, b in zip(val, fval(merged))]
                last = mul(fval(word[:-1]), word[-1])
                sgn = (-1) ** (k + 1)
                val = [a + sgn * b for a, b in zip(val, last)]
                for oo in range(n):
                    M[ti * n + oo][ci] = val[oo]
        return M if rows and cols else None, len(src) * n

    ranks = {}
    dims = {}
    for k in range(top + 1):
        M, dim = dmat(k)
        dims[k] = dim
        ranks[k] = fraction_rank(M) if M is not None else 0
    return {k: dims[k] - ranks[k] - (ranks[k - 1] if k else 0) for k in range(top)}
