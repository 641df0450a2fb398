"""Bulk scans over companion matrices of monic polynomials.

The enumeration spaces here get large (p^12 companions for the p = 3
closure check), so the zp backend runs on batched numpy int64 arrays:
companion stacks of shape (N, n, n), Horner evaluation, and a batched
Samuelson-Berkowitz characteristic polynomial.  Everything stays exact
because all arithmetic is mod p^M with (n+1) * m^2 kept inside int64.

The fqt backend (and any zp modulus too large for int64) uses the plain
MatrixR path; those scans only appear at desk scale.

Scans are chunked; chunks can be fanned out to a thread pool.  Results
are reduced in chunk order, so the reported first failure is independent
of the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from .dvr import DvrContext, ZP
from .matrix import companion, mat_mul, identity
from .poly import RPoly, count_monic, monic_from_index

_INT64_BUDGET = 1 << 62


def np_scan_ok(ctx: DvrContext, M: int, n: int) -> bool:
    if ctx.backend != ZP:
        return False
    m = ctx.p**M
    return (n + 1) * m * m < _INT64_BUDGET


# ---------------------------------------------------------------------------
# numpy batch primitives (zp backend)


def zp_coeff_arrays(d: int, B: int, start: int, stop: int) -> list[np.ndarray]:
    """Coefficient digits c_0..c_{d-1} for enumeration indices
    [start, stop); c_0 is the most significant digit."""
    idx = np.arange(start, stop, dtype=np.int64)
    return [(idx // B ** (d - 1 - j)) % B for j in range(d)]


def zp_companions(coeff_arrays: list[np.ndarray], m: int) -> np.ndarray:
    """Companion stack (N, n, n) for monic x^n + sum c_j x^j mod m."""
    n = len(coeff_arrays)
    N = len(coeff_arrays[0])
    C = np.zeros((N, n, n), dtype=np.int64)
    for i in range(1, n):
        C[:, i, i - 1] = 1
    for j in range(n):
        C[:, j, n - 1] = (-coeff_arrays[j]) % m
    return C


def _batch_matmul(A: np.ndarray, B: np.ndarray, m: int) -> np.ndarray:
    n = A.shape[1]
    if n == 2:  # hot path: the whole acceptance surface is n = 2
        a, b = A[:, 0, 0], A[:, 0, 1]
        c, d = A[:, 1, 0], A[:, 1, 1]
        e, f = B[:, 0, 0], B[:, 0, 1]
        g, h = B[:, 1, 0], B[:, 1, 1]
        out = np.empty_like(A)
        out[:, 0, 0] = (a * e + b * g) % m
        out[:, 0, 1] = (a * f + b * h) % m
        out[:, 1, 0] = (c * e + d * g) % m
        out[:, 1, 1] = (c * f + d * h) % m
        return out
    return np.einsum("aij,ajk->aik", A, B) % m


def zp_horner(coeffs_mod: list[int], C: np.ndarray, m: int) -> np.ndarray:
    """g(C) for the whole companion stack, Horner over the batch."""
    N, n = C.shape[0], C.shape[1]
    B = np.zeros_like(C)
    eye = np.eye(n, dtype=np.int64)
    for c in reversed(coeffs_mod):
        B = _batch_matmul(B, C, m)
        if c:
            B = (B + c * eye) % m
    return B


def zp_charpoly_batch(B: np.ndarray, m: int) -> np.ndarray:
    """Characteristic polynomials of a matrix stack, division-free.

    Returns (N, n+1) coefficients in descending order (leading 1 first).
    """
    N, n = B.shape[0], B.shape[1]
    V = np.ones((N, 1), dtype=np.int64)
    for k in range(1, n + 1):
        a = B[:, k - 1, k - 1]
        R = B[:, k - 1, : k - 1]
        Cc = B[:, : k - 1, k - 1]
        t = [np.ones(N, dtype=np.int64), (-a) % m]
        w = Cc
        for _ in range(2, k + 1):
            s = (R * w).sum(axis=1) % m
            t.append((-s) % m)
            w = np.einsum("aij,aj->ai", B[:, : k - 1, : k - 1], w) % m
        newV = np.zeros((N, k + 1), dtype=np.int64)
        for i in range(k + 1):
            acc = np.zeros(N, dtype=np.int64)
            for j in range(max(0, i - k), min(i, k - 1) + 1):
                acc = (acc + t[i - j] * V[:, j]) % m
            newV[:, i] = acc
        V = newV
    return V


# ---------------------------------------------------------------------------
# chunked first-failure driver


def first_failure(total: int, run_chunk, threads: int = 1,
                  chunk_size: int = 1 << 15):
    """Global first failure across [0, total) split into ordered chunks.

    run_chunk(start, stop) returns the chunk-local first failure or None.
    Chunks are reduced in index order, so the answer does not depend on
    the thread count.
    """
    spans = [(s, min(s + chunk_size, total))
             for s in range(0, total, chunk_size)]
    if threads <= 1:
        for s, e in spans:
            r = run_chunk(s, e)
            if r is not None:
                return r
        return None
    with ThreadPoolExecutor(max_workers=threads) as ex:
        futs = [ex.submit(run_chunk, s, e) for s, e in spans]
        hit = None
        for i, f in enumerate(futs):
            r = f.result()
            if r is not None:
                hit = r
                for g in futs[i + 1:]:
                    g.cancel()
                break
        return hit


# ---------------------------------------------------------------------------
# power-vector streams for the minimal-degree search


class ZpPowerStream:
    """Entries of C^D across a companion stack, as one flat int64 vector."""

    def __init__(self, C: np.ndarray, m: int):
        self.C = C
        self.m = m
        N, n = C.shape[0], C.shape[1]
        self.P = np.broadcast_to(np.eye(n, dtype=np.int64), (N, n, n)).copy()

    def vector(self) -> np.ndarray:
        return self.P.reshape(-1)

    def advance(self) -> None:
        self.P = _batch_matmul(self.P, self.C, self.m)


class GenericPowerStream:
    """Same contract with MatrixR arithmetic (fqt or oversized moduli)."""

    def __init__(self, companions: list):
        self.companions = companions
        ring = companions[0].ring
        n = companions[0].n
        self.powers = [identity(ring, n) for _ in companions]

    def vector(self) -> list:
        return [e for P in self.powers for row in P.entries for e in row]

    def advance(self) -> None:
        self.powers = [mat_mul(P, C)
                       for P, C in zip(self.powers, self.companions)]


def companion_stack(ctx: DvrContext, n: int, k: int,
                    polys: list[RPoly] | None = None):
    """All degree-n companions at precision k as a stream-ready stack.

    polys restricts the scan to an explicit monic family (the primary-lcm
    search); default is the full enumeration.  Returns (stream, count).
    """
    if polys is None:
        total = count_monic(ctx, n, k)
        if np_scan_ok(ctx, k, n):
            m = ctx.p**k
            C = zp_companions(zp_coeff_arrays(n, m, 0, total), m)
            return ZpPowerStream(C, m), total
        comps = [companion(monic_from_index(ctx, n, k, i))
                 for i in range(total)]
        return GenericPowerStream(comps), total
    total = len(polys)
    n_eff = polys[0].degree
    if np_scan_ok(ctx, k, n_eff):
        m = ctx.p**k
        arrays = [np.array([int(mp.coeff(j)) for mp in polys], dtype=np.int64)
                  for j in range(n_eff)]
        C = zp_companions(arrays, m)
        return ZpPowerStream(C, m), total
    return GenericPowerStream([companion(mp) for mp in polys]), total
