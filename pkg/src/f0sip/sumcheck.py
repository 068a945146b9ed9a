"""The d-round interaction: honest prover round polynomials, verifier checks.

The honest prover evaluates the round polynomial at the L(q-1)+1 canonical
embedded points 0,1,2,... and interpolates.  Three structural facts keep that
affordable: the symbol indicator factors split into (prefix product) x
(current variable factor) x (Boolean suffix indicator), so each distinct
symbol contributes to exactly one suffix assignment; within one suffix group
every code-row accumulator is an affine function A + B*x of the free round
variable, so the per-point work is one extension multiply-add; and moderate
extension fields admit full discrete-log tables, turning the multiply and the
(q-1)-power inside the OR polynomial into integer adds plus lookups (done in
a small numba kernel).

The interpolation operator (Lagrange weights times quotient polynomials) only
depends on (q, lambda, L), so it is computed once and cached across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np
from numba import njit

from .encoding import CodeOracle, SymbolEncoding
from .field import ExtFieldCtx, ExtFieldElement, UniPoly, get_ctx


@dataclass(frozen=True)
class InstancePublic:
    """Everything the prover legitimately knows about one prime instance."""

    q: int
    lam: int
    L: int
    m: int
    code_seed: int

    @property
    def max_degree(self) -> int:
        return self.L * (self.q - 1)

    @property
    def n_coeffs(self) -> int:
        return self.max_degree + 1


@dataclass
class RoundMessage:
    round: int
    coeffs: np.ndarray  # (n_coeffs, lam), coordinate rows ascending degree

    def to_unipoly(self, ctx: ExtFieldCtx) -> UniPoly:
        return UniPoly(ctx, [ctx.element(row) for row in self.coeffs])


@dataclass
class RoundContext:
    """Verifier-side per-instance interaction state."""

    expected_round: int = 1
    claim: np.ndarray | None = None       # g_{j-1}(r_{j-1}) coordinates
    residue: np.ndarray | None = None     # g_1(0) + g_1(1) coordinates
    rejected: bool = False
    reason: str | None = None

    def reject(self, reason: str) -> "RoundContext":
        self.rejected = True
        self.reason = reason
        return self


# ---------------------------------------------------------------------------
# Cached Lagrange interpolation operator at the canonical points
# ---------------------------------------------------------------------------

_LAGRANGE_CACHE: dict[tuple[int, int, int], tuple[np.ndarray, np.ndarray]] = {}


def _lagrange_operator(ctx: ExtFieldCtx, n_points: int) -> tuple[np.ndarray, np.ndarray]:
    """(points, op) with coeffs_c = sum_t ext_mul(op[t, c], values[t])."""
    key = (ctx.q, ctx.lam, n_points)
    if key in _LAGRANGE_CACHE:
        return _LAGRANGE_CACHE[key]
    if n_points > ctx.order:
        raise ValueError("field too small for the required evaluation points")
    q, lam = ctx.q, ctx.lam
    pts = ctx.embed_ints(np.arange(n_points))  # (P, lam)

    # master product Phi(X) = prod_t (X - x_t), coefficients ascending
    phi = np.zeros((n_points + 1, lam), dtype=np.int64)
    phi[0, 0] = 1
    for t in range(n_points):
        # phi <- phi * (X - x_t); degree before the step is t
        head = ctx.vec_mul(pts[t][None, :], phi[:t + 1])
        nxt = np.zeros_like(phi)
        nxt[1:t + 2] = phi[:t + 1]
        nxt[:t + 1] = (nxt[:t + 1] - head) % q
        phi = nxt

    # synthetic division Q_t = Phi / (X - x_t) for all t at once
    qc = np.zeros((n_points, n_points, lam), dtype=np.int64)
    qc[:, n_points - 1] = phi[n_points]
    for k in range(n_points - 2, -1, -1):
        qc[:, k] = (phi[k + 1][None, :] + ctx.vec_mul(pts, qc[:, k + 1])) % q

    # denominators Q_t(x_t) via Horner, then batch inversion
    val = qc[:, n_points - 1].copy()
    for k in range(n_points - 2, -1, -1):
        val = (ctx.vec_mul(val, pts) + qc[:, k]) % q
    weights = _batch_inverse(ctx, val)

    op = ctx.vec_mul(weights[:, None, :], qc)
    _LAGRANGE_CACHE[key] = (pts, op)
    return pts, op


def _batch_inverse(ctx: ExtFieldCtx, elems: np.ndarray) -> np.ndarray:
    """Invert each row of (n, lam) with one field inversion (Montgomery trick)."""
    n = elems.shape[0]
    pref = np.empty_like(elems)
    pref[0] = elems[0]
    for i in range(1, n):
        pref[i] = ctx.vec_mul(pref[i - 1], elems[i])
    inv_run = ctx.vec_inv(pref[n - 1])
    out = np.empty_like(elems)
    for i in range(n - 1, 0, -1):
        out[i] = ctx.vec_mul(inv_run, pref[i - 1])
        inv_run = ctx.vec_mul(inv_run, elems[i])
    out[0] = inv_run
    return out


def probe_coords(ctx: ExtFieldCtx, coeff_rows: np.ndarray, x_coords: np.ndarray) -> np.ndarray:
    """Evaluate a coefficient-row stream at x (running-power accumulation)."""
    coeff_rows = np.asarray(coeff_rows, dtype=np.int64) % ctx.q
    n_rows = coeff_rows.shape[0]
    if n_rows == 0:
        return np.zeros(ctx.lam, dtype=np.int64)
    xp = int(ctx.pack_coords(np.asarray(x_coords, dtype=np.int64) % ctx.q))
    if xp != 0 and ctx.order <= ctx._TABLE_CAP:
        exptab, logtab = ctx.dlog_tables()
        n = ctx.order - 1
        exps = (int(logtab[xp]) * np.arange(n_rows, dtype=np.int64)) % n
        powers = ctx.embed_ints(exptab[exps])
        return ctx.vec_mul(coeff_rows, powers).sum(axis=0) % ctx.q
    acc = np.zeros(ctx.lam, dtype=np.int64)
    power = np.zeros(ctx.lam, dtype=np.int64)
    power[0] = 1
    for row in coeff_rows:
        acc = (acc + ctx.vec_mul(row, power)) % ctx.q
        power = ctx.vec_mul(power, x_coords)
    return acc


# ---------------------------------------------------------------------------
# Honest prover
# ---------------------------------------------------------------------------

@njit(cache=True)
def _or_sum_kernel(lA, lB, lx, zech, or_step, exptab, n, q, lam, gv):  # pragma: no cover
    """Accumulate sum_g [1 - prod_i (1 - (A_gi + B_gi * x_t)^(q-1))] into gv.

    Everything travels as discrete logs (sentinel -1 for the zero element):
    the multiply B*x is an index add, the add of A uses the Zech table, and
    or_step[log s] = log(1 - s^(q-1)) folds the power and subtraction into one
    lookup.  Point x_0 = 0 is the t == 0 row; lx holds logs of points 1..P-1.
    """
    G, L = lA.shape
    n_pts = lx.shape[0] + 1
    var_idx = np.empty(L, dtype=np.int64)
    for g in range(G):
        # factors with B == 0 are constant across points; fold them once
        const_acc = 0
        const_dead = False
        nv = 0
        for i in range(L):
            if lB[g, i] < 0:
                la = lA[g, i]
                step = 0 if la < 0 else or_step[la]
                if step < 0:
                    const_dead = True
                    break
                const_acc += step
            else:
                var_idx[nv] = i
                nv += 1
        if const_dead:
            # the product vanishes identically: the group adds 1 everywhere
            for t in range(n_pts):
                gv[t, 0] += 1
            continue
        for t in range(n_pts):
            acc = const_acc
            dead = False
            for v in range(nv):
                i = var_idx[v]
                la = lA[g, i]
                if t == 0:
                    ls = la  # x_0 = 0, so S = A
                else:
                    lbx = lB[g, i] + lx[t - 1]
                    if lbx >= n:
                        lbx -= n
                    if la < 0:
                        ls = lbx
                    else:
                        delta = lbx - la
                        if delta < 0:
                            delta += n
                        z = zech[delta]
                        if z < 0:
                            continue  # S = 0, the factor is 1 - 0^(q-1) = 1
                        ls = la + z
                        if ls >= n:
                            ls -= n
                if ls < 0:
                    continue  # S = 0 again
                step = or_step[ls]
                if step < 0:
                    dead = True
                    break
                acc += step
            prod = 0 if dead else exptab[acc % n]
            gv[t, 0] += (1 - prod % q) % q
            prod //= q
            for c in range(1, lam):
                gv[t, c] += (q - prod % q) % q
                prod //= q


class InstanceEngine:
    """Per-prime-instance honest prover state over a stored stream."""

    def __init__(self, pub: InstancePublic, stream):
        self.pub = pub
        self.ctx = get_ctx(pub.q, pub.lam)
        self.enc = SymbolEncoding(pub.m)
        self.d = self.enc.d
        self.oracle = CodeOracle(pub.code_seed, pub.q, pub.L)
        self.n_coeffs = pub.n_coeffs
        self.points, self.lagrange_op = _lagrange_operator(self.ctx, self.n_coeffs)
        if self.ctx.order <= self.ctx._TABLE_CAP:
            _, logtab = self.ctx.dlog_tables()
            self._lag_logs = logtab[self.ctx.pack_coords(self.lagrange_op)]
        else:
            self._lag_logs = None
        self.revealed: list[np.ndarray] = []
        self._folded = 0

        symbols = np.asarray(list(stream), dtype=np.int64)
        if symbols.size:
            vals, inv = np.unique(symbols, return_inverse=True)
            rows = self.oracle.block(symbols.size)  # (L, n)
            h = np.zeros((vals.size, pub.L), dtype=np.int64)
            np.add.at(h, inv, rows.T)
            self.h = (h.T % pub.q)                   # (L, D)
            self.vals = vals
            self.bits = self.enc.bits_matrix(vals)   # (D, d)
            self.u = np.zeros((vals.size, self.ctx.lam), dtype=np.int64)
            self.u[:, 0] = 1
        else:
            self.vals = symbols
            self.h = np.zeros((pub.L, 0), dtype=np.int64)
            self.bits = np.zeros((0, self.d), dtype=np.int64)
            self.u = np.zeros((0, self.ctx.lam), dtype=np.int64)

    def receive_challenge(self, r_coords: np.ndarray):
        self.revealed.append(np.asarray(r_coords, dtype=np.int64))

    def _fold_to(self, j: int):
        # fold prefix factors for variables 1..j-1 into the per-symbol products
        while self._folded < j - 1:
            t = self._folded
            if t >= len(self.revealed):
                raise RuntimeError("challenge for a finished round was never revealed")
            r = self.revealed[t]
            ur = self.ctx.vec_mul(self.u, r[None, :])
            bit = self.bits[:, t]
            self.u = np.where(bit[:, None] == 1, ur, (self.u - ur) % self.ctx.q)
            self._folded += 1

    def round_values(self, j: int) -> np.ndarray:
        """g_j at the canonical points, coordinate rows (n_coeffs, lam)."""
        if not 1 <= j <= self.d:
            raise ValueError("round out of range")
        self._fold_to(j)
        ctx = self.ctx
        q = ctx.q
        P = self.n_coeffs
        if self.vals.size == 0:
            return np.zeros((P, ctx.lam), dtype=np.int64)
        # Code-row accumulators restricted to one suffix group are affine in
        # the round variable: S_gi(x) = A_gi + B_gi * x with A the bit-0 part
        # and A + B the bit-1 part of the weighted column sums.
        hu = (self.h.T[:, :, None] * self.u[:, None, :]) % q  # (D, L, lam)
        bitj = self.bits[:, j - 1]
        sid = (self.vals - 1) & ((1 << (self.d - j)) - 1)
        uniq, inv = np.unique(sid, return_inverse=True)
        shape = (uniq.size, self.pub.L, ctx.lam)
        t0 = np.zeros(shape, dtype=np.int64)
        t1 = np.zeros(shape, dtype=np.int64)
        mask0 = bitj == 0
        np.add.at(t0, inv[mask0], hu[mask0])
        np.add.at(t1, inv[~mask0], hu[~mask0])
        a_coef = t0 % q
        b_coef = (t1 - t0) % q
        if ctx.order > ctx._TABLE_CAP:  # dense arithmetic, no log tables
            one = np.zeros(ctx.lam, dtype=np.int64)
            one[0] = 1
            g_vals = np.empty((P, ctx.lam), dtype=np.int64)
            for t in range(P):
                s = a_coef if t == 0 else (
                    a_coef + ctx.vec_mul(b_coef, self.points[t])) % q
                fac = (one - ctx.vec_pow(s, q - 1)) % q  # (G, L, lam)
                prod = fac[:, 0]
                for i in range(1, self.pub.L):
                    prod = ctx.vec_mul(prod, fac[:, i])
                g_vals[t] = (one[None, :] - prod).sum(axis=0) % q
            return g_vals
        exptab, logtab = ctx.dlog_tables()
        zech, or_step = ctx.zech_tables()
        g_vals = np.zeros((P, ctx.lam), dtype=np.int64)
        _or_sum_kernel(logtab[ctx.pack_coords(a_coef)],
                       logtab[ctx.pack_coords(b_coef)],
                       logtab[np.arange(1, P, dtype=np.int64)],
                       zech, or_step, exptab,
                       ctx.order - 1, q, ctx.lam, g_vals)
        return g_vals % q

    def round_message(self, j: int) -> np.ndarray:
        g_vals = self.round_values(j)
        ctx = self.ctx
        if self._lag_logs is not None:
            exptab, logtab = ctx.dlog_tables()
            n = ctx.order - 1
            lv = logtab[ctx.pack_coords(g_vals % ctx.q)]
            mask = (self._lag_logs < 0) | (lv[:, None] < 0)
            s = np.where(mask, 0, (self._lag_logs + lv[:, None]) % n)
            prod = ctx.embed_ints(np.where(mask, 0, exptab[s]))
        else:
            prod = ctx.vec_mul(self.lagrange_op, g_vals[:, None, :])
        return prod.sum(axis=0) % ctx.q


class HonestProver:
    """Stores the stream and answers every round with the defining polynomial."""

    def begin(self, stream, publics: list[InstancePublic]):
        self.engines = [InstanceEngine(pub, stream) for pub in publics]

    def receive_challenge(self, inst_idx: int, round_j: int, r_coords: np.ndarray):
        self.engines[inst_idx].receive_challenge(r_coords)

    def round_message(self, inst_idx: int, j: int) -> np.ndarray:
        return self.engines[inst_idx].round_message(j)


def honest_round_poly(stream, inst, r_prefix: list[ExtFieldElement], j: int) -> UniPoly:
    """Round-j polynomial of the honest prover as a UniPoly."""
    engine = InstanceEngine(inst.public(), stream)
    for r in r_prefix:
        engine.receive_challenge(r.as_array())
    coeffs = engine.round_message(j)
    return UniPoly(engine.ctx, [engine.ctx.element(row) for row in coeffs])


def claimed_residue(g1: UniPoly) -> ExtFieldElement:
    """g_1(0) + g_1(1); equals the stream's distinct count mod q for honest runs."""
    ctx = g1.ctx
    return g1.eval(ctx.zero()) + g1.eval(ctx.one())


# ---------------------------------------------------------------------------
# Verifier-side checks
# ---------------------------------------------------------------------------

def _effective_degree(coeffs: np.ndarray) -> int:
    nz = np.nonzero(np.any(coeffs != 0, axis=1))[0]
    return int(nz[-1]) if nz.size else -1


def verifier_round_check(rc: RoundContext, msg: RoundMessage, inst) -> RoundContext:
    """Degree and running-sum checks; on success stores g_j(r_j) as the claim."""
    if rc.rejected:
        return rc
    if msg.round != rc.expected_round:
        raise ValueError("message for the wrong round")
    ctx = inst.ctx
    q = ctx.q
    coeffs = np.asarray(msg.coeffs, dtype=np.int64) % q
    if _effective_degree(coeffs) > inst.max_degree:
        return rc.reject("degree-violation")
    g0 = coeffs[0].copy() if len(coeffs) else np.zeros(ctx.lam, dtype=np.int64)
    g1 = coeffs.sum(axis=0) % q if len(coeffs) else np.zeros(ctx.lam, dtype=np.int64)
    j = rc.expected_round
    total = (g0 + g1) % q
    if j == 1:
        rc.residue = total
    else:
        if not np.array_equal(total, rc.claim):
            return rc.reject("sum-mismatch")
    rc.claim = probe_coords(ctx, coeffs, inst.challenges[j - 1])
    rc.expected_round = j + 1
    return rc


def verifier_final_check(rc: RoundContext, streamed_value: np.ndarray) -> RoundContext:
    """Accept iff g_d(r_d) equals the value accumulated during the stream."""
    if rc.rejected:
        return rc
    if not np.array_equal(rc.claim, np.asarray(streamed_value)):
        return rc.reject("final-mismatch")
    return rc
