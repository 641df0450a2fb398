"""Quaternion orders mod p^k for odd p and the explicit isomorphism with
the 2 x 2 matrix ring.

A is the quaternion Z-algebra with i^2 = j^2 = -1, ij = k = -ji.  For odd
p the quotient A/p^k A is isomorphic to M_2(Z/p^k): send i to [[0,-1],[1,0]]
and j to [[a,b],[b,-a]] where a^2 + b^2 = -1 mod p^k.  Such (a, b) always
exists mod p and Hensel-lifts.  Through the inverse map, integer-valued
questions on the order transfer verbatim to the matrix ring; in particular
a matrix where f fails to be integer-valued pulls back to a quaternion
witness.

The Hurwitz order (which adjoins (1+i+j+k)/2) coincides with the Lipschitz
order mod p^k because 2 is invertible; the order name is carried as a tag
on quaternion values only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dvr import DvrContext, ZP, _is_prime, make_context
from .howell import ZpHowellSystem, ascend_min_monic
from .matrix import MatrixR, companion, identity, mat_mul, matrix
from .nullideal import SearchExhausted
from .construct import phi_degree
from .poly import KPoly, RPoly, VPoly, count_monic, enumerate_monic
from .reports import _poly_payload


class NoSolution(RuntimeError):
    pass


class UnexpectedVanishing(RuntimeError):
    pass


LIPSCHITZ = "Lipschitz"
HURWITZ = "Hurwitz"
ORDERS = (LIPSCHITZ, HURWITZ)


@dataclass(frozen=True)
class QuatR:
    """A quaternion over Z/p^M in coordinates (a0, a1, a2, a3) on the
    basis 1, i, j, k."""

    ring: object
    coords: tuple
    order: str = LIPSCHITZ

    def __add__(self, other: "QuatR") -> "QuatR":
        r = self.ring
        return QuatR(r, tuple(r.add(x, y) for x, y in
                              zip(self.coords, other.coords)), self.order)

    def __mul__(self, other: "QuatR") -> "QuatR":
        a0, a1, a2, a3 = self.coords
        b0, b1, b2, b3 = other.coords
        m = self.ring.m
        return QuatR(self.ring, (
            (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3) % m,
            (a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2) % m,
            (a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1) % m,
            (a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0) % m), self.order)

    def __neg__(self) -> "QuatR":
        r = self.ring
        return QuatR(r, tuple(r.neg(x) for x in self.coords), self.order)

    def conj(self) -> "QuatR":
        r = self.ring
        a0, a1, a2, a3 = self.coords
        return QuatR(r, (a0, r.neg(a1), r.neg(a2), r.neg(a3)), self.order)

    def norm(self):
        # reduced norm a0^2 + a1^2 + a2^2 + a3^2
        return sum(c * c for c in self.coords) % self.ring.m

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.coords)

    def to_json(self) -> dict:
        return {"coords": [int(c) for c in self.coords],
                "precision": self.ring.M, "order": self.order}


def quat_scalar(ring, c: int, order: str = LIPSCHITZ) -> QuatR:
    return QuatR(ring, (ring.canon(c), 0, 0, 0), order)


def quat_eval(g, x: QuatR) -> QuatR:
    """g(x) by Horner; g is a VPoly or RPoly with zp coefficients."""
    ring = x.ring
    if isinstance(g, VPoly):
        g = g.reduce(ring.M)
    acc = quat_scalar(ring, 0, x.order)
    for c in reversed(g.coeffs):
        acc = acc * x + quat_scalar(ring, c, x.order)
    return acc


# ---------------------------------------------------------------------------
# the isomorphism A/p^M A = M_2(Z/p^M)


def _minor3(T, r, c):
    s = [[T[x][y] for y in range(4) if y != c] for x in range(4) if x != r]
    return (s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1])
            - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
            + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0]))


def _inv4_mod(T, m: int):
    det = sum((-1) ** c * T[0][c] * _minor3(T, 0, c) for c in range(4))
    try:
        dinv = pow(det % m, -1, m)
    except ValueError:
        return None
    return [[(dinv * (-1) ** (i + j) * _minor3(T, j, i)) % m
             for j in range(4)] for i in range(4)]


@dataclass(frozen=True)
class QuatIso:
    """The algebra map A/p^M A -> M_2(Z/p^M) and its inverse."""

    ctx: DvrContext
    ring: object
    a: int
    b: int
    Ei: MatrixR
    Ej: MatrixR
    Ek: MatrixR
    Tinv: tuple

    def to_matrix(self, x: QuatR) -> MatrixR:
        m = self.ring.m
        a0, a1, a2, a3 = x.coords
        basis = (identity(self.ring, 2), self.Ei, self.Ej, self.Ek)
        ent = [[0, 0], [0, 0]]
        for c, B in zip((a0, a1, a2, a3), basis):
            for i in range(2):
                for j in range(2):
                    ent[i][j] = (ent[i][j] + c * B.entries[i][j]) % m
        return matrix(self.ring, ent)

    def from_matrix(self, A: MatrixR, order: str = LIPSCHITZ) -> QuatR:
        m = self.ring.m
        vec = (A.entries[0][0], A.entries[0][1],
               A.entries[1][0], A.entries[1][1])
        coords = tuple(sum(self.Tinv[i][j] * vec[j] for j in range(4)) % m
                       for i in range(4))
        return QuatR(self.ring, coords, order)

    def to_json(self) -> dict:
        return {"p": self.ctx.p, "precision": self.ring.M,
                "a": self.a, "b": self.b}


def _two_square_root_of_minus_one(p: int):
    # smallest (a, b) lexicographically with a^2 + b^2 = -1 mod p
    for a in range(p):
        for b in range(p):
            if (a * a + b * b + 1) % p == 0:
                return a, b
    return None


def find_iso(p: int, M: int, ctx: DvrContext | None = None) -> QuatIso:
    """Solve a^2 + b^2 = -1 mod p^M and assemble the isomorphism.

    The base solution mod p is found by direct search and lifted one
    digit at a time (the derivative 2b is a unit whenever b is; when the
    base b is divisible by p the roles of a and b swap).  Both a and b
    are normalized to min(x, p^M - x), which squares identically.
    """
    if p == 2 or not _is_prime(p):
        raise ValueError("p must be an odd prime")
    if M < 1:
        raise ValueError("precision M must be >= 1")
    if ctx is None:
        ctx = make_context(ZP, p)
    ab = _two_square_root_of_minus_one(p)
    if ab is None:
        raise NoSolution(f"a^2 + b^2 = -1 has no solution mod {p}")
    a, b = ab
    m = p**M
    if b % p != 0:
        for j in range(1, M):
            mod = p ** (j + 1)
            r = (a * a + b * b + 1) % mod
            b = (b - r * pow(2 * b, -1, mod)) % mod
    else:  # then a is the unit coordinate; lift it instead
        for j in range(1, M):
            mod = p ** (j + 1)
            r = (a * a + b * b + 1) % mod
            a = (a - r * pow(2 * a, -1, mod)) % mod
    a, b = a % m, b % m
    a = min(a, m - a) if a else 0
    b = min(b, m - b) if b else 0
    if (a * a + b * b + 1) % m:
        raise NoSolution("lift failed")  # unreachable for odd p

    ring = ctx.residue_ring(M)
    Ei = matrix(ring, [[0, -1], [1, 0]])
    Ej = matrix(ring, [[a, b], [b, -a]])
    Ek = mat_mul(Ei, Ej)
    neg_id = matrix(ring, [[-1, 0], [0, -1]])
    if mat_mul(Ei, Ei) != neg_id or mat_mul(Ej, Ej) != neg_id:
        raise NoSolution("relation check failed")
    if mat_mul(Ej, Ei).entries != tuple(tuple(ring.neg(e) for e in row)
                                        for row in Ek.entries):
        raise NoSolution("anticommutation check failed")
    T = [[1, 0, a, (-b) % m],
         [0, (-1) % m, b, a],
         [0, 1, b, a],
         [1, 0, (-a) % m, b]]
    Tinv = _inv4_mod(T, m)
    if Tinv is None:
        raise NoSolution("images of 1, i, j, k do not span")
    return QuatIso(ctx, ring, a, b, Ei, Ej, Ek,
                   tuple(tuple(row) for row in Tinv))


# ---------------------------------------------------------------------------
# failure witnesses on the order


@dataclass(frozen=True)
class QuatWitness:
    """A quaternion alpha with g(alpha) nonzero mod p^k, certifying that
    g/p^k is not integer-valued on the order."""

    alpha: QuatR
    value: QuatR
    pullback_of: RPoly
    iso: QuatIso

    def to_json(self) -> dict:
        return {"alpha": self.alpha.to_json(),
                "value": self.value.to_json(),
                "value_val": min((self.alpha.ring.val(c)
                                  for c in self.value.coords
                                  if c), default=None),
                "pullback_of": _poly_payload(self.pullback_of),
                "iso": self.iso.to_json()}


def quat_membership_failure(f: KPoly, p: int | None = None,
                            order: str = LIPSCHITZ) -> QuatWitness:
    """A witness that f = g/p^k is not integer-valued on the quaternion
    order mod p^k.

    First tries the pullback of companion(x^2); if g happens to vanish
    there, scans every companion pullback in enumeration order.  If g
    vanishes on all of them then f IS integer-valued on the order (the
    isomorphism reduces the question to the matrix ring, where companion
    matrices suffice), and UnexpectedVanishing is raised -- there is no
    witness to return.
    """
    ctx = f.ctx
    if ctx.backend != ZP:
        raise ValueError("quaternion orders are modeled over zp only")
    if p is None:
        p = ctx.p
    if p != ctx.p:
        raise ValueError(f"p = {p} does not match the coefficient ring")
    if order not in ORDERS:
        raise ValueError(f"unknown order {order!r}")
    k = f.den_exp
    if k == 0:
        raise UnexpectedVanishing(
            "denominator exponent 0: g/1 is integer-valued everywhere, "
            "no failure witness exists")
    iso = find_iso(p, k, ctx=ctx)
    ring = ctx.residue_ring(k)
    gr = f.num.reduce(k)
    x2 = RPoly(ring, (ring.zero, ring.zero, ring.one))
    alpha = iso.from_matrix(companion(x2), order)
    v = quat_eval(gr, alpha)
    if not v.is_zero():
        return QuatWitness(alpha, v, x2, iso)
    for mm in enumerate_monic(ctx, 2, k):
        alpha = iso.from_matrix(companion(mm), order)
        v = quat_eval(gr, alpha)
        if not v.is_zero():
            return QuatWitness(alpha, v, mm, iso)
    raise UnexpectedVanishing(
        "g vanishes mod p^k on every companion pullback: f is "
        "integer-valued on the order")


# ---------------------------------------------------------------------------
# the null-ideal degree bound, computed on the quaternion side


def _quat_batch_mul(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    a0, a1, a2, a3 = A[:, 0], A[:, 1], A[:, 2], A[:, 3]
    b0, b1, b2, b3 = B[:, 0], B[:, 1], B[:, 2], B[:, 3]
    out = np.empty_like(A)
    out[:, 0] = (a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3) % m
    out[:, 1] = (a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2) % m
    out[:, 2] = (a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1) % m
    out[:, 3] = (a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0) % m
    return out


class _QuatPowerStream:
    def __init__(self, coords: np.ndarray, m: int):
        self.base = coords
        self.m = m
        N = coords.shape[0]
        self.P = np.zeros((N, 4), dtype=np.int64)
        self.P[:, 0] = 1

    def vector(self) -> np.ndarray:
        return self.P.reshape(-1)

    def advance(self) -> None:
        self.P = _quat_batch_mul(self.P, self.base, self.m)


def order_min_monic_degree(p: int, k: int, D_max: int | None = None) -> int:
    """Minimal degree of a monic g with g = 0 identically on A/p^k A.

    Runs entirely in quaternion arithmetic on the pullbacks of all
    companion matrices (which suffice on the matrix side); the result
    must agree with the minimal monic degree of the 2 x 2 null ideal.
    """
    ctx = make_context(ZP, p)
    iso = find_iso(p, k, ctx=ctx)
    m = p**k
    total = count_monic(ctx, 2, k)
    coords = np.empty((total, 4), dtype=np.int64)
    for idx, mm in enumerate(enumerate_monic(ctx, 2, k)):
        coords[idx] = iso.from_matrix(companion(mm)).coords
    if D_max is None:
        D_max = k * phi_degree(ctx, 2)
    system = ZpHowellSystem(p, k, D_max + 1)
    stream = _QuatPowerStream(coords, m)
    found = ascend_min_monic(stream, system, D_max)
    if found is None:
        raise SearchExhausted(D_max)
    return found[0]
