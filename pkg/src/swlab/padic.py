"""Local invariants of quadratic forms over Q_p.

Hilbert symbols (closed exponent formulas at p=2, Legendre symbols at odd p,
sign analysis at infinity), Hasse invariants, Jordan diagonalization over Z_p
at odd p, Gross-Keating invariants of ternary forms at odd p, the ternary
local spaces attached to the level-N lattices, and Diff sets.

The half-integral 2x2 matrices T = [[a, b/2], [b/2, c]] that index Fourier
coefficients are HalfIntMatrix2 instances storing (a, b, c) with b the
*doubled* off-diagonal entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

INF = "inf"


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def unit_part(x, p: int) -> Fraction:
    """x / p^val(x), a p-adic unit."""
    return Fraction(x) / Fraction(p) ** valuation(x, p)


def jacobi_symbol(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd n > 0."""
    assert n > 0 and n % 2 == 1
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_unit(u, p: int) -> int:
    """Legendre symbol of a p-adic unit (rational with val 0) at odd p."""
    u = Fraction(u)
    num = u.numerator % p
    den = u.denominator % p
    return jacobi_symbol(num * pow(den, -1, p), p)


def hilbert_symbol(a, b, p) -> int:
    """Standard Hilbert symbol (a, b)_p; p is a prime or the string 'inf'."""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol requires nonzero arguments")
    if p == INF:
        return -1 if (a < 0 and b < 0) else 1
    p = int(p)
    alpha, u = valuation(a, p), unit_part(a, p)
    beta, v = valuation(b, p), unit_part(b, p)
    if p == 2:
        def eps(w):  # (w-1)/2 mod 2 for odd w
            n = (w.numerator * pow(w.denominator, -1, 8)) % 8
            return ((n - 1) // 2) % 2

        def omega(w):  # (w^2-1)/8 mod 2
            n = (w.numerator * pow(w.denominator, -1, 8)) % 8
            return ((n * n - 1) // 8) % 2

        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    s = 1
    if (alpha % 2) and (beta % 2) and p % 4 == 3:
        s = -s
    if beta % 2:
        s *= legendre_unit(u, p)
    if alpha % 2:
        s *= legendre_unit(v, p)
    return s


def hasse_invariant(diag, p) -> int:
    """Hasse invariant prod_{i<j} (d_i, d_j)_p of a diagonal form."""
    ds = [Fraction(d) for d in diag]
    if any(d == 0 for d in ds):
        raise ValueError("Hasse invariant requires nonzero diagonal entries")
    s = 1
    for i in range(len(ds)):
        for j in range(i + 1, len(ds)):
            s *= hilbert_symbol(ds[i], ds[j], p)
    return s


@dataclass(frozen=True)
class HalfIntMatrix2:
    """T = [[t11, b/2], [b/2, t22]] with integer t11, b = t12_doubled, t22."""

    t11: int
    t12_doubled: int
    t22: int

    def det(self) -> Fraction:
        return Fraction(self.t11) * self.t22 - Fraction(self.t12_doubled, 2) ** 2

    def scale(self, n: int) -> "HalfIntMatrix2":
        return HalfIntMatrix2(n * self.t11, n * self.t12_doubled, n * self.t22)

    def entries(self) -> tuple[int, int, int]:
        return (self.t11, self.t12_doubled, self.t22)

    def as_matrix(self) -> list[list[Fraction]]:
        h = Fraction(self.t12_doubled, 2)
        return [[Fraction(self.t11), h], [h, Fraction(self.t22)]]

    def transform(self, g) -> "HalfIntMatrix2":
        """g^T T g for an integer 2x2 matrix g = [[a,b],[c,d]]."""
        a, b = g[0]
        c, d = g[1]
        t11, tb, t22 = self.t11, self.t12_doubled, self.t22
        n11 = t11 * a * a + tb * a * c + t22 * c * c
        n22 = t11 * b * b + tb * b * d + t22 * d * d
        nb = 2 * t11 * a * b + tb * (a * d + b * c) + 2 * t22 * c * d
        return HalfIntMatrix2(n11, nb, n22)

    def is_pos_def(self) -> bool:
        return self.t11 > 0 and self.det() > 0

    def rank(self) -> int:
        if self.det() != 0:
            return 2
        return 1 if (self.t11, self.t12_doubled, self.t22) != (0, 0, 0) else 0


@dataclass(frozen=True)
class LocalQuadSpace:
    """Isometry data of a quadratic space over Q_p: dimension, det class, Hasse."""

    dimension: int
    det_class: Fraction
    hasse: int
    prime: object  # prime int or INF

    @staticmethod
    def from_diagonal(diag, p) -> "LocalQuadSpace":
        ds = [Fraction(d) for d in diag]
        det = math.prod(ds, start=Fraction(1))
        return LocalQuadSpace(len(ds), det, hasse_invariant(ds, p), p)

    def chi(self, x) -> int:
        """chi_V(x) = (x, -det V)_p for a ternary space."""
        return hilbert_symbol(x, -self.det_class, self.prime)


def space_calV(N: int, p) -> LocalQuadSpace:
    """The local space of the trace-zero lattice with Q = N det, Gram diag(1,-1,-N)."""
    return LocalQuadSpace.from_diagonal([1, -1, -N], p)


def space_Vra(p: int) -> LocalQuadSpace:
    """Trace-zero part of the division quaternion algebra over Q_p."""
    if p == 2:
        return LocalQuadSpace.from_diagonal([1, 1, 1], 2)
    u = _nonresidue(p)
    return LocalQuadSpace.from_diagonal([-u, -p, u * p], p)


def _nonresidue(p: int) -> int:
    for u in range(2, p):
        if jacobi_symbol(u, p) == -1:
            return u
    raise ValueError(f"no nonresidue mod {p}")


def _swap_rows_cols(m, i, j):
    m[i], m[j] = m[j], m[i]
    for row in m:
        row[i], row[j] = row[j], row[i]


def diagonalize_qp(mat, p: int) -> list[Fraction]:
    """Diagonalize a nondegenerate symmetric rational matrix over Z_p, p odd.

    Returns the diagonal entries (each well-defined up to unit squares).
    Pivots are chosen with minimal valuation; off-diagonal minima are moved
    onto the diagonal with a x_i -> x_i + x_j substitution, which at odd p
    preserves minimal valuation.
    """
    if p == 2:
        raise ValueError("diagonalization at p=2 is unsupported")
    n = len(mat)
    m = [[Fraction(mat[i][j]) for j in range(n)] for i in range(n)]
    out: list[Fraction] = []
    for top in range(n):
        # valuation of the remaining block
        best = None
        for i in range(top, n):
            for j in range(top, n):
                if m[i][j] != 0:
                    v = valuation(m[i][j], p)
                    if best is None or v < best:
                        best = v
        if best is None:
            raise ValueError("degenerate matrix")
        # prefer a diagonal pivot of minimal valuation
        pivot = None
        for i in range(top, n):
            if m[i][i] != 0 and valuation(m[i][i], p) == best:
                pivot = i
                break
        if pivot is None:
            # minimal entry is off-diagonal at (i, j); add row/col j into i
            found = False
            for i in range(top, n):
                for j in range(top, n):
                    if i != j and m[i][j] != 0 and valuation(m[i][j], p) == best:
                        for kk in range(n):
                            m[i][kk] += m[j][kk]
                        for kk in range(n):
                            m[kk][i] += m[kk][j]
                        found = True
                        break
                if found:
                    break
            pivot = top
            for i in range(top, n):
                if m[i][i] != 0 and valuation(m[i][i], p) == best:
                    pivot = i
                    break
        if pivot != top:
            _swap_rows_cols(m, pivot, top)
        d = m[top][top]
        out.append(d)
        for i in range(top + 1, n):
            if m[i][top] != 0:
                r = m[i][top] / d
                for kk in range(n):
                    m[i][kk] -= r * m[top][kk]
                for kk in range(n):
                    m[kk][i] -= r * m[kk][top]
    return out


def diagonalize_binary(T: HalfIntMatrix2, p: int) -> tuple[int, Fraction, int, Fraction]:
    """T ~ diag(eps1 p^a, eps2 p^b) over Z_p (p odd), a <= b, eps unit parts.

    Returns (a, eps1, b, eps2).
    """
    if T.det() == 0:
        raise ValueError("degenerate T")
    d1, d2 = diagonalize_qp(T.as_matrix(), p)
    a, e1 = valuation(d1, p), unit_part(d1, p)
    b, e2 = valuation(d2, p), unit_part(d2, p)
    if a > b:
        a, b, e1, e2 = b, a, e2, e1
    return a, e1, b, e2


def diagonalize_rational(T: HalfIntMatrix2) -> tuple[Fraction, Fraction]:
    """A diagonalization of nondegenerate T over Q (for Hasse/Diff tests)."""
    det = T.det()
    if det == 0:
        raise ValueError("degenerate T")
    if T.t11 != 0:
        return Fraction(T.t11), det / T.t11
    if T.t22 != 0:
        return Fraction(T.t22), det / T.t22
    # T = [[0, b/2], [b/2, 0]]: value b at (1,1)
    v = Fraction(T.t12_doubled)
    return v, det / v


def eps_T(T: HalfIntMatrix2, p) -> int:
    """Hasse invariant of a diagonalization of T over Q_p."""
    d1, d2 = diagonalize_rational(T)
    return hilbert_symbol(d1, d2, p)


def is_represented_binary_by_ternary(T: HalfIntMatrix2, V: LocalQuadSpace) -> bool:
    """Representability criterion eps(V) = eps(T) chi_V(det T) for dim V = 3."""
    if V.dimension != 3:
        raise ValueError("criterion requires a ternary space")
    if T.det() == 0:
        raise ValueError("degenerate T")
    return V.hasse == eps_T(T, V.prime) * V.chi(T.det())


def prime_factors(n: int) -> list[int]:
    n = abs(int(n))
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def diff_set(T: HalfIntMatrix2, N: int) -> frozenset[int]:
    """Diff(T, V): finite primes where T is not represented by the local space.

    Condition: eps_l(T) = -(-1, N)_l (det T, -N)_l.  Only primes dividing
    2 N num/den(det T) t11 together with the Hasse support can contribute.
    """
    det = T.det()
    if det == 0:
        raise ValueError("degenerate T")
    candidates = set(prime_factors(2 * N))
    candidates.update(prime_factors(det.numerator))
    candidates.update(prime_factors(det.denominator))
    if T.t11 != 0:
        candidates.update(prime_factors(T.t11))
    d1, d2 = diagonalize_rational(T)
    for x in (d1, d2):
        candidates.update(prime_factors(x.numerator))
        candidates.update(prime_factors(x.denominator))
    out = set()
    for ell in sorted(candidates):
        lhs = eps_T(T, ell)
        rhs = -hilbert_symbol(-1, N, ell) * hilbert_symbol(det, -N, ell)
        if lhs == rhs:
            out.add(ell)
    return frozenset(out)


def gk_invariants_odd(S, p: int) -> tuple[int, ...]:
    """Gross-Keating invariants of a nondegenerate symmetric matrix over Z_p, p odd.

    At odd p these are the sorted valuations of a Jordan diagonalization.
    """
    if p == 2:
        raise ValueError("Gross-Keating invariants at p=2 are unsupported")
    diag = diagonalize_qp(S, p)
    vals = sorted(valuation(d, p) for d in diag)
    if any(v < 0 for v in vals):
        raise ValueError("matrix is not p-integral")
    return tuple(vals)


def gk_matrix_diag_N_T(N: int, T: HalfIntMatrix2) -> list[list[Fraction]]:
    """The 3x3 symmetric matrix diag(N, T)."""
    h = Fraction(T.t12_doubled, 2)
    return [
        [Fraction(N), Fraction(0), Fraction(0)],
        [Fraction(0), Fraction(T.t11), h],
        [Fraction(0), h, Fraction(T.t22)],
    ]
