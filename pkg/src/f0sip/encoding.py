"""Data-dependent algebra for the distinct-count proof.

Covers the binary expansion of stream symbols, the multilinear symbol
indicator extended to the big field, the seeded pseudorandom code rows that
back the OR-approximating polynomial, and the verifier's streaming B-matrix
accumulator.

The code rows replace an explicit error-correcting code: row entries come
from a fixed 64-bit mixing function of (seed, q, row, column), so any entry
can be regenerated on demand in O(1) space and the whole "matrix" costs one
seed to store.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .field import ExtFieldCtx, ExtFieldElement

_MASK = (1 << 64) - 1
_C1 = 0x9E3779B97F4A7C15
_C2 = 0xBF58476D1CE4E5B9
_C3 = 0x94D049BB133111EB


def mix64(z: int) -> int:
    """Three rounds of the splitmix64 finalizer on an unsigned 64-bit state."""
    z &= _MASK
    for _ in range(3):
        z = (z + _C1) & _MASK
        z = ((z ^ (z >> 30)) * _C2) & _MASK
        z = ((z ^ (z >> 27)) * _C3) & _MASK
        z = z ^ (z >> 31)
    return z


def prf(seed: int, q: int, i: int, k: int) -> int:
    """Deterministic 64-bit value for the (seed, q, i, k) tuple."""
    state = (seed ^ ((q * _C1) & _MASK) ^ ((i * _C2) & _MASK) ^ ((k * _C3) & _MASK)) & _MASK
    return mix64(state)


def _prf_array(seed: int, q: int, i_arr: np.ndarray, k_arr: np.ndarray) -> np.ndarray:
    """Vectorized prf over broadcastable index arrays; returns uint64."""
    c1 = np.uint64(_C1)
    c2 = np.uint64(_C2)
    c3 = np.uint64(_C3)
    base = np.uint64((seed ^ ((q * _C1) & _MASK)) & _MASK)
    with np.errstate(over="ignore"):  # uint64 wraparound is the point
        z = base ^ (i_arr.astype(np.uint64) * c2) ^ (k_arr.astype(np.uint64) * c3)
    z = np.broadcast_to(z, np.broadcast_shapes(np.shape(i_arr), np.shape(k_arr))).copy()
    for _ in range(3):
        z = z + c1
        z = (z ^ (z >> np.uint64(30))) * c2
        z = (z ^ (z >> np.uint64(27))) * c3
        z = z ^ (z >> np.uint64(31))
    return z


def derive_subseed(master: int, tag: int) -> int:
    return mix64(master ^ tag)


# ---------------------------------------------------------------------------
# Symbol encoding
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymbolEncoding:
    """Big-endian d-bit expansion of a-1 for symbols a in [1..m]."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("universe size must be >= 2")

    @property
    def d(self) -> int:
        return max(1, math.ceil(math.log2(self.m)))

    def bits(self, a: int) -> tuple[int, ...]:
        if not 1 <= a <= self.m:
            raise ValueError(f"symbol {a} outside [1..{self.m}]")
        d = self.d
        v = a - 1
        return tuple((v >> (d - j)) & 1 for j in range(1, d + 1))

    def bits_matrix(self, symbols: np.ndarray) -> np.ndarray:
        """(n, d) bit matrix, row per symbol, column j is bit x_j."""
        d = self.d
        v = np.asarray(symbols, dtype=np.int64) - 1
        shifts = np.arange(d - 1, -1, -1, dtype=np.int64)
        return (v[:, None] >> shifts[None, :]) & 1


def chi_tilde_eval(a: int, r: list[ExtFieldElement], enc: SymbolEncoding) -> ExtFieldElement:
    """Low-degree extension of the symbol indicator, evaluated at r.

    Product over coordinates of (2*bit - 1) * r_j + (1 - bit); on the Boolean
    cube this is the indicator [bits(a) == r].
    """
    bits = enc.bits(a)
    if len(r) != enc.d:
        raise ValueError("evaluation point has wrong arity")
    ctx = r[0].ctx
    acc = ctx.one()
    one = ctx.one()
    for bit, rj in zip(bits, r):
        acc = acc * (rj if bit else one - rj)
    return acc


# ---------------------------------------------------------------------------
# Seeded code oracle and OR-approximating polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CodeOracle:
    """L pseudorandom code rows over F_q, any entry regenerable from the seed."""

    seed: int
    q: int
    L: int

    def entry(self, i: int, k: int) -> int:
        if not 1 <= i <= self.L:
            raise ValueError(f"row {i} outside [1..{self.L}]")
        if k < 1:
            raise ValueError("column index starts at 1")
        return prf(self.seed, self.q, i, k) % self.q

    def column(self, k: int) -> np.ndarray:
        """Entries (1..L, k) as an int64 vector."""
        i_arr = np.arange(1, self.L + 1, dtype=np.uint64)
        return (_prf_array(self.seed, self.q, i_arr, np.uint64(k)) % np.uint64(self.q)).astype(np.int64)

    def block(self, n: int) -> np.ndarray:
        """Entries for rows 1..L and columns 1..n, shape (L, n)."""
        i_arr = np.arange(1, self.L + 1, dtype=np.uint64)[:, None]
        k_arr = np.arange(1, n + 1, dtype=np.uint64)[None, :]
        return (_prf_array(self.seed, self.q, i_arr, k_arr) % np.uint64(self.q)).astype(np.int64)


def compute_L(m: int) -> int:
    """Least L with (2/3)^L <= 1 / (6 * m' * log2 m'), m' = m rounded up to 2^d."""
    d = max(1, math.ceil(math.log2(m)))
    bound = 6 * (1 << d) * d
    L = 1
    while 3 ** L < bound * 2 ** L:
        L += 1
    return L


@dataclass(frozen=True)
class ApproxOrSpec:
    """OR approximation over F_q: 1 - prod_i (1 - ((Gx)_i)^(q-1))."""

    code: CodeOracle
    L: int
    q: int

    def __post_init__(self):
        if self.code.q != self.q or self.code.L != self.L:
            raise ValueError("code oracle disagrees with (q, L)")


def p_eval(spec: ApproxOrSpec, x) -> int:
    x = np.asarray(x, dtype=np.int64) % spec.q
    if x.size == 0:
        return 0
    rows = spec.code.block(x.size)
    s = (rows @ x) % spec.q
    acc = 1
    for si in s:
        acc = (acc * (1 - pow(int(si), spec.q - 1, spec.q))) % spec.q
    return (1 - acc) % spec.q


def or_failure_probe(spec: ApproxOrSpec, x, trials: int) -> float:
    """Fraction of fresh seeds on which the approximation disagrees with OR(x).

    The seed of spec's oracle is the base of the per-trial seed range; only
    tests use this.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    q, L, base_seed = spec.q, spec.L, spec.code.seed
    x = np.asarray(x, dtype=np.int64)
    or_val = int(np.any(x % q != 0))
    if or_val == 0:
        return 0.0  # every row dots to 0, p is identically 0
    nz = np.nonzero(x % q != 0)[0]
    seeds = base_seed + np.arange(trials, dtype=np.uint64)
    failures = 0
    chunk = max(1, 10 ** 7 // max(1, L * nz.size))
    for start in range(0, trials, chunk):
        batch = seeds[start:start + chunk]
        # s[trial, row] accumulated over nonzero positions of x
        s = np.zeros((batch.size, L), dtype=np.int64)
        for i in range(1, L + 1):
            z = _prf_array_seeds(batch, q, i, (nz + 1))
            s[:, i - 1] = ((z % np.uint64(q)).astype(np.int64) * (x[nz] % q)[None, :]).sum(axis=1) % q
        p = np.any(s % q != 0, axis=1).astype(np.int64)
        failures += int(np.sum(p != or_val))
    return failures / trials


def _prf_array_seeds(seeds: np.ndarray, q: int, i: int, k_arr: np.ndarray) -> np.ndarray:
    """prf vectorized over a seeds axis (rows) and a column axis."""
    c1 = np.uint64(_C1)
    c2 = np.uint64(_C2)
    c3 = np.uint64(_C3)
    base = np.uint64((((q * _C1) ^ (i * _C2)) & _MASK))
    with np.errstate(over="ignore"):  # uint64 wraparound is the point
        z = (seeds.astype(np.uint64)[:, None] ^ base
             ^ (k_arr.astype(np.uint64)[None, :] * c3))
    for _ in range(3):
        z = z + c1
        z = (z ^ (z >> np.uint64(30))) * c2
        z = (z ^ (z >> np.uint64(27))) * c3
        z = z ^ (z >> np.uint64(31))
    return z


# ---------------------------------------------------------------------------
# Streaming B-matrix accumulator
# ---------------------------------------------------------------------------

class BMatrix:
    """L x lambda accumulator B_ij = sum_k y_k^(j) * g_{i,k} over the stream."""

    def __init__(self, L: int, ctx: ExtFieldCtx):
        self.L = L
        self.ctx = ctx
        self.entries = np.zeros((L, ctx.lam), dtype=np.int64)

    def copy(self) -> "BMatrix":
        out = BMatrix(self.L, self.ctx)
        out.entries = self.entries.copy()
        return out


def b_update(B: BMatrix, oracle: CodeOracle, k: int, y_k: ExtFieldElement) -> BMatrix:
    """Fold stream position k with chi-value y_k into the accumulator."""
    col = oracle.column(k)
    B.entries = (B.entries + np.outer(col, y_k.as_array())) % B.ctx.q
    return B


def b_update_batch(B: BMatrix, oracle: CodeOracle, start_k: int, y_coords: np.ndarray) -> BMatrix:
    """Fold positions start_k..start_k+n-1 with coordinate rows y_coords (n, lam)."""
    n = y_coords.shape[0]
    if n == 0:
        return B
    i_arr = np.arange(1, B.L + 1, dtype=np.uint64)[:, None]
    k_arr = np.arange(start_k, start_k + n, dtype=np.uint64)[None, :]
    rows = (_prf_array(oracle.seed, oracle.q, i_arr, k_arr) % np.uint64(oracle.q)).astype(np.int64)
    B.entries = (B.entries + rows @ (y_coords % B.ctx.q)) % B.ctx.q
    return B


def finalize_p_of_chi(B: BMatrix, spec: ApproxOrSpec, ctx: ExtFieldCtx) -> ExtFieldElement:
    """1 - prod_i (1 - s_i^(q-1)) in F_{q^lambda}, where s_i = (G chi)_i is the
    extension element whose coordinate vector is row i of B.

    The power and products are extension-field operations: that keeps the
    result equal to the round polynomial's evaluation at the challenge point
    (a degree-L(q-1) univariate identity), while on Boolean inputs every s_i
    is a base-field scalar and the formula degenerates to the plain
    OR-approximation p.
    """
    one = ctx.one()
    prod = one
    for row in B.entries:
        s = ctx.element(row)
        prod = prod * (one - s ** (ctx.q - 1))
    return one - prod
