"""Exact integer arithmetic: moduli, canonical labels, Hermite and Smith forms.

Matrices are plain row-major ``list[list[int]]`` so that entries stay
arbitrary-precision Python integers throughout the normal-form kernels.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, isqrt, lcm
from typing import Iterable, Sequence

IntMatrix = list[list[int]]

DEFAULT_FACTOR_BOUND = 10**7


class SplineError(ValueError):
    """Base class for invalid input to any zmsplines operation."""


class InvalidModulusError(SplineError):
    pass


@dataclass(frozen=True)
class ModulusContext:
    """The modulus ``m`` together with its prime factorization."""

    m: int
    factorization: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.m < 2:
            raise InvalidModulusError(f"modulus must be >= 2, got {self.m}")
        prod = 1
        last = 1
        for p, e in self.factorization:
            if p <= last or e < 1:
                raise InvalidModulusError(f"malformed factorization {self.factorization}")
            last = p
            prod *= p**e
        if prod != self.m:
            raise InvalidModulusError(f"factorization {self.factorization} does not multiply to {self.m}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factorization)

    @property
    def is_prime_power(self) -> bool:
        return len(self.factorization) == 1

    def reduce(self, x: int) -> int:
        return x % self.m

    def canonical(self, label: int) -> int:
        return canonical_label(label, self)

    def ring_divides(self, a: int, b: int) -> bool:
        """True iff ``b`` lies in the ideal generated by ``a`` in Z/mZ."""
        return b % gcd(a, self.m) == 0


def factorize(m: int, bound: int = DEFAULT_FACTOR_BOUND) -> ModulusContext:
    """Prime factorization by trial division up to ``bound``."""
    if not isinstance(m, int) or m < 2:
        raise InvalidModulusError(f"modulus must be an integer >= 2, got {m!r}")
    rest = m
    factors = []
    p = 2
    while p * p <= rest:
        if p > bound:
            raise InvalidModulusError(
                f"cannot factor {m}: cofactor {rest} has no prime factor below the trial-division bound {bound}"
            )
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            factors.append((p, e))
        p += 1 if p == 2 else 2
    if rest > 1:
        factors.append((rest, 1))
    return ModulusContext(m, tuple(factors))


def canonical_label(label: int, ctx: ModulusContext) -> int:
    """Smallest positive generator of the ideal <label> in Z/mZ (``m`` for the zero ideal)."""
    if label < 0:
        raise SplineError(f"labels must be nonnegative, got {label}")
    return gcd(label, ctx.m)


def lcm_reduced(values: Iterable[int], ctx: ModulusContext) -> tuple[int, bool]:
    """Integer lcm of divisors of ``m`` and whether it vanishes modulo ``m``."""
    values = list(values)
    if not values:
        raise SplineError("lcm of an empty set is undefined here")
    for v in values:
        if v <= 0 or ctx.m % v:
            raise SplineError(f"{v} is not a positive divisor of {ctx.m}")
    L = reduce(lcm, values)
    return L, L % ctx.m == 0


# -- matrix helpers ----------------------------------------------------------


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: IntMatrix, ncols: int | None = None) -> IntMatrix:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: IntMatrix, B: IntMatrix) -> IntMatrix:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def determinant(A: IntMatrix) -> int:
    """Fraction-free Bareiss determinant of a square matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# -- Hermite normal form -----------------------------------------------------


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int, with_transform: bool = False):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` where ``H`` holds the nonzero rows of the echelon form
    (first nonzero entry strictly moving right, positive pivots, entries above
    each pivot reduced into ``[0, pivot)``) and ``U`` is a unimodular matrix
    with ``U @ rows`` equal to ``H`` padded with zero rows. ``U`` is ``None``
    unless ``with_transform``.
    """
    A = [list(r) for r in rows]
    nrows = len(A)
    for r in A:
        if len(r) != ncols:
            raise SplineError("ragged matrix")
    U = identity(nrows) if with_transform else None

    def swap(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def addmul(i, j, q):
        # row_i -= q * row_j
        if q == 0:
            return
        Ai, Aj = A[i], A[j]
        for c in range(ncols):
            if Aj[c]:
                Ai[c] -= q * Aj[c]
        if U is not None:
            Ui, Uj = U[i], U[j]
            for c in range(nrows):
                if Uj[c]:
                    Ui[c] -= q * Uj[c]

    def negate(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        while True:
            live = [i for i in range(r, nrows) if A[i][col] != 0]
            if not live:
                break
            piv = min(live, key=lambda i: (abs(A[i][col]), i))
            if piv != r:
                swap(piv, r)
            if len(live) == 1:
                break
            for i in range(r + 1, nrows):
                if A[i][col]:
                    addmul(i, r, A[i][col] // A[r][col])
        if A[r][col] == 0:
            continue
        if A[r][col] < 0:
            negate(r)
        p = A[r][col]
        for i in range(r):
            addmul(i, r, A[i][col] // p)
        r += 1
    return A[:r], U


def hermite_normal_form(A: IntMatrix) -> IntMatrix:
    """Triangular column basis of the integer column span of ``A``.

    Column ``k`` of the result has its first nonzero entry (the pivot) in a
    row strictly below that of column ``k-1``; pivots are positive and the
    entries of earlier columns in a pivot's row lie in ``[0, pivot)``.
    """
    if not A:
        return []
    nrows = len(A)
    H, _ = hnf_rows(transpose(A), nrows)
    if not H:
        return [[] for _ in range(nrows)]
    return transpose(H)


def integer_kernel(A: IntMatrix, ncols: int) -> IntMatrix:
    """Basis (as rows) of the integer kernel ``{x : A x = 0}``."""
    At = transpose(A, ncols) if A else [[] for _ in range(ncols)]
    H, U = hnf_rows(At, len(A), with_transform=True)
    return [U[i] for i in range(len(H), ncols)]


# -- Smith normal form -------------------------------------------------------


@dataclass
class SmithDecomposition:
    """Invariant factors ``d`` with unimodular ``U``, ``V`` such that ``U A V = diag(d)``."""

    d: tuple[int, ...]
    U: IntMatrix
    V: IntMatrix

    def diagonal(self, nrows: int, ncols: int) -> IntMatrix:
        D = [[0] * ncols for _ in range(nrows)]
        for i, x in enumerate(self.d):
            D[i][i] = x
        return D

    def check(self, A: IntMatrix) -> bool:
        nrows = len(self.U)
        ncols = len(self.V)
        if nrows == 0 or ncols == 0:
            return not self.d
        if matmul(matmul(self.U, A), self.V) != self.diagonal(nrows, ncols):
            return False
        if abs(determinant(self.U)) != 1 or abs(determinant(self.V)) != 1:
            return False
        return all(self.d[i + 1] % self.d[i] == 0 for i in range(len(self.d) - 1))


def smith_normal_form(A: IntMatrix, ncols: int | None = None) -> SmithDecomposition:
    """Smith normal form with transforms; zero invariant factors are dropped."""
    nrows = len(A)
    if ncols is None:
        ncols = len(A[0]) if A else 0
    M = [list(r) for r in A]
    U = identity(nrows)
    V = identity(ncols)

    def row_addmul(i, j, q):
        M[i] = [a - q * b for a, b in zip(M[i], M[j])]
        U[i] = [a - q * b for a, b in zip(U[i], U[j])]

    def col_addmul(i, j, q):
        for row in M:
            row[i] -= q * row[j]
        for row in V:
            row[i] -= q * row[j]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    d = []
    for t in range(min(nrows, ncols)):
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = M[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, bi, bj = best
        row_swap(t, bi)
        col_swap(t, bj)
        while True:
            done = True
            for i in range(t + 1, nrows):
                if M[i][t]:
                    row_addmul(i, t, M[i][t] // M[t][t])
                    if M[i][t]:
                        done = False
            for j in range(t + 1, ncols):
                if M[t][j]:
                    col_addmul(j, t, M[t][j] // M[t][t])
                    if M[t][j]:
                        done = False
            if not done:
                # a remainder is now smaller than the pivot; move it in
                best = None
                for i in range(t, nrows):
                    if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                        best = (abs(M[i][t]), i, t)
                for j in range(t, ncols):
                    if M[t][j] and (best is None or abs(M[t][j]) < best[0]):
                        best = (abs(M[t][j]), t, j)
                _, bi, bj = best
                row_swap(t, bi)
                col_swap(t, bj)
                continue
            p = M[t][t]
            bad = next(
                (i for i in range(t + 1, nrows) for j in range(t + 1, ncols) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            # pull the offending row up so the pivot shrinks to a divisor
            M[t] = [a + b for a, b in zip(M[t], M[bad])]
            U[t] = [a + b for a, b in zip(U[t], U[bad])]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
            U[t] = [-x for x in U[t]]
        d.append(M[t][t])
    return SmithDecomposition(tuple(d), U, V)


def invariant_factors(A: IntMatrix, ncols: int | None = None) -> tuple[int, ...]:
    return smith_normal_form(A, ncols).d


class LatticeAccumulator:
    """Incrementally maintained row-HNF basis of a sublattice of Z^n.

    Cheap insertion for folding many generators (e.g. an enumerated spline
    set) into a lattice without building one huge matrix.
    """

    def __init__(self, n: int):
        self.n = n
        self._rows: dict[int, list[int]] = {}  # pivot column -> row

    def add(self, v: Sequence[int]) -> bool:
        """Insert ``v``; returns True if the lattice grew."""
        v = list(v)
        grew = False
        for col in range(self.n):
            if v[col] == 0:
                continue
            row = self._rows.get(col)
            if row is None:
                if v[col] < 0:
                    v = [-x for x in v]
                self._rows[col] = v
                return True
            a, b = row[col], v[col]
            if b % a == 0:
                q = b // a
                v = [x - q * y for x, y in zip(v, row)]
                continue
            # extended gcd combination keeps the pair's span
            g, s, t = _xgcd(a, b)
            new_row = [s * x + t * y for x, y in zip(row, v)]
            v = [(a // g) * y - (b // g) * x for x, y in zip(row, v)]
            self._rows[col] = new_row
            grew = True
        return grew

    def basis(self) -> IntMatrix:
        rows = [self._rows[c] for c in sorted(self._rows)]
        H, _ = hnf_rows(rows, self.n)
        return H


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) > 0``."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0
