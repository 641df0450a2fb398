"""Matrices over V/pi^M.

Companion matrices, Horner evaluation of polynomials at matrices, matrix
powers, and division-free characteristic polynomials.  The base rings
Z/p^M and F_q[t]/(t^M) have zero divisors, so the characteristic
polynomial uses the Samuelson-Berkowitz scheme: only ring additions and
multiplications, no inverses.
"""

from __future__ import annotations

from dataclasses import dataclass

from .dvr import PrecisionIncrease, ResidueRing
from .poly import RPoly, VPoly, rpoly


class NonMonic(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class MatrixR:
    ring: ResidueRing
    n: int
    entries: tuple  # row-major tuple of tuples, canonical representatives

    @property
    def M(self) -> int:
        return self.ring.M

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        r = self.ring
        return all(r.is_zero(e) for row in self.entries for e in row)

    def min_val(self) -> int:
        """Minimum entry valuation (capped at M for the zero matrix)."""
        return min(self.ring.val(e) for row in self.entries for e in row)

    def reduce(self, M2: int) -> "MatrixR":
        ring2 = self.ring.ctx.residue_ring(M2)
        ent = tuple(tuple(ring2.from_exact(self.ring.to_exact(e)) for e in row)
                    for row in self.entries)
        return MatrixR(ring2, self.n, ent)


def matrix(ring: ResidueRing, rows) -> MatrixR:
    ent = tuple(tuple(ring.canon(e) for e in row) for row in rows)
    n = len(ent)
    if any(len(row) != n for row in ent):
        raise DimensionMismatch("matrix must be square")
    return MatrixR(ring, n, ent)


def identity(ring: ResidueRing, n: int) -> MatrixR:
    return MatrixR(ring, n, tuple(
        tuple(ring.one if i == j else ring.zero for j in range(n))
        for i in range(n)))


def zero_matrix(ring: ResidueRing, n: int) -> MatrixR:
    return MatrixR(ring, n, tuple((ring.zero,) * n for _ in range(n)))


def mat_add(A: MatrixR, B: MatrixR) -> MatrixR:
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n} vs {B.n}")
    r = A.ring
    return MatrixR(r, A.n, tuple(
        tuple(r.add(a, b) for a, b in zip(ra, rb))
        for ra, rb in zip(A.entries, B.entries)))


def mat_mul(A: MatrixR, B: MatrixR) -> MatrixR:
    if A.n != B.n:
        raise DimensionMismatch(f"{A.n} vs {B.n}")
    r, n = A.ring, A.n
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = r.zero
            for t in range(n):
                s = r.add(s, r.mul(A.entries[i][t], B.entries[t][j]))
            row.append(s)
        out.append(tuple(row))
    return MatrixR(r, n, tuple(out))


def scalar_matrix(ring: ResidueRing, n: int, c) -> MatrixR:
    c = ring.canon(c)
    return MatrixR(ring, n, tuple(
        tuple(c if i == j else ring.zero for j in range(n))
        for i in range(n)))


def companion(m: RPoly) -> MatrixR:
    """Companion matrix: subdiagonal ones, last column the negated
    non-leading coefficients of m."""
    if not m.is_monic():
        raise NonMonic("companion matrix needs a monic polynomial")
    r = m.ring
    n = m.degree
    if n < 1:
        raise NonMonic("degree must be >= 1")
    out = [[r.zero] * n for _ in range(n)]
    for i in range(1, n):
        out[i][i - 1] = r.one
    for i in range(n):
        out[i][n - 1] = r.neg(m.coeff(i))
    return MatrixR(r, n, tuple(tuple(row) for row in out))


def mat_eval(g, A: MatrixR) -> MatrixR:
    """Horner evaluation g(A).  VPoly inputs are reduced to A's precision."""
    if isinstance(g, VPoly):
        g = g.reduce(A.M)
    elif g.M != A.M:
        if g.M < A.M:
            raise PrecisionIncrease(
                f"polynomial at precision {g.M} cannot be evaluated at {A.M}")
        g = g.reduce(A.M)
    r, n = A.ring, A.n
    B = zero_matrix(r, n)
    for c in reversed(g.coeffs):
        B = mat_mul(B, A)
        ent = [list(row) for row in B.entries]
        for i in range(n):
            ent[i][i] = r.add(ent[i][i], c)
        B = MatrixR(r, n, tuple(tuple(row) for row in ent))
    return B


def mat_pow(A: MatrixR, j: int) -> MatrixR:
    if j < 0:
        raise ValueError("negative matrix power")
    out = identity(A.ring, A.n)
    base = A
    while j:
        if j & 1:
            out = mat_mul(out, base)
        j >>= 1
        if j:
            base = mat_mul(base, base)
    return out


def charpoly(A: MatrixR) -> RPoly:
    """Characteristic polynomial det(yI - A), monic of degree n, by the
    Samuelson-Berkowitz iteration (division-free)."""
    r, n = A.ring, A.n
    V = [r.one]  # coefficients of det(yI - A_r), descending, for r = 0
    for k in range(1, n + 1):
        a = A.entries[k - 1][k - 1]
        R = A.entries[k - 1][: k - 1]
        C = [A.entries[i][k - 1] for i in range(k - 1)]
        # Toeplitz column: t_0 = 1, t_1 = -a, t_j = -(R . M^{j-2} . C)
        t = [r.one, r.neg(a)]
        w = list(C)
        for _ in range(2, k + 1):
            s = r.zero
            for x, y in zip(R, w):
                s = r.add(s, r.mul(x, y))
            t.append(r.neg(s))
            w = [_dot(r, A.entries[i][: k - 1], w) for i in range(k - 1)]
        newV = []
        for i in range(k + 1):
            s = r.zero
            for j in range(max(0, i - k), min(i, k - 1) + 1):
                s = r.add(s, r.mul(t[i - j], V[j]))
            newV.append(s)
        V = newV
    return rpoly(r, list(reversed(V)))


def _dot(r, xs, ys):
    s = r.zero
    for x, y in zip(xs, ys):
        s = r.add(s, r.mul(x, y))
    return s


def mat_to_json(A: MatrixR) -> dict:
    from .poly import _coeff_to_json
    return {"n": A.n, "M": A.M,
            "entries": [[_coeff_to_json(A.ring.ctx, A.ring.to_exact(e))
                         for e in row] for row in A.entries]}
