"""Cheating-prover strategies for exercising the verifier's rejection paths.

Every strategy speaks the same interface as the honest prover and only sees
challenges as they are revealed.  Corrections that adjust the {0,1}-sum of a
round polynomial are a constant delta/2 in odd characteristic and delta*X in
characteristic 2 (a constant cannot shift the sum there, since 2c = 0).
"""

from __future__ import annotations

import numpy as np

from .sumcheck import HonestProver, InstancePublic


class _Correction:
    """corr(X) = c0 + c1*X as coordinate vectors."""

    def __init__(self, ctx, c0=None, c1=None):
        self.ctx = ctx
        z = np.zeros(ctx.lam, dtype=np.int64)
        self.c0 = z.copy() if c0 is None else np.asarray(c0, dtype=np.int64) % ctx.q
        self.c1 = z.copy() if c1 is None else np.asarray(c1, dtype=np.int64) % ctx.q

    @classmethod
    def with_binary_sum(cls, ctx, delta_coords) -> "_Correction":
        """Correction whose value at 0 plus value at 1 equals delta."""
        delta_coords = np.asarray(delta_coords, dtype=np.int64) % ctx.q
        if ctx.q == 2:
            return cls(ctx, c1=delta_coords)
        inv2 = pow(2, ctx.q - 2, ctx.q)
        return cls(ctx, c0=(delta_coords * inv2) % ctx.q)

    def binary_sum(self) -> np.ndarray:
        return (2 * self.c0 + self.c1) % self.ctx.q

    def eval(self, r_coords: np.ndarray) -> np.ndarray:
        return (self.c0 + self.ctx.vec_mul(self.c1, r_coords)) % self.ctx.q

    def apply(self, coeffs: np.ndarray) -> np.ndarray:
        out = coeffs.copy()
        out[0] = (out[0] + self.c0) % self.ctx.q
        if len(out) > 1:
            out[1] = (out[1] + self.c1) % self.ctx.q
        return out


class ResidueLieProver(HonestProver):
    """Shifts g_1(0)+g_1(1) by delta, then plays honestly; dies at round 2."""

    def __init__(self, delta: int = 1):
        self.delta = delta

    def begin(self, stream, publics: list[InstancePublic]):
        super().begin(stream, publics)
        self.publics = publics

    def round_message(self, inst_idx: int, j: int) -> np.ndarray:
        coeffs = super().round_message(inst_idx, j)
        eng = self.engines[inst_idx]
        dq = self.delta % eng.ctx.q
        if j == 1 and dq != 0:
            delta_coords = np.zeros(eng.ctx.lam, dtype=np.int64)
            delta_coords[0] = dq
            coeffs = _Correction.with_binary_sum(eng.ctx, delta_coords).apply(coeffs)
        return coeffs


class AdaptiveShiftProver(HonestProver):
    """Lies at round 1 and repairs every later sum check; only the final
    streamed-value comparison (or a Schwartz-Zippel collision) can stop it."""

    def __init__(self, delta: int = 1):
        self.delta = delta

    def begin(self, stream, publics: list[InstancePublic]):
        super().begin(stream, publics)
        self.corrections: list[_Correction | None] = [None] * len(publics)
        self.pending: list[np.ndarray | None] = [None] * len(publics)

    def receive_challenge(self, inst_idx: int, round_j: int, r_coords: np.ndarray):
        super().receive_challenge(inst_idx, round_j, r_coords)
        corr = self.corrections[inst_idx]
        if corr is not None:
            # the verifier's running claim now includes corr(r_j)
            self.pending[inst_idx] = corr.eval(np.asarray(r_coords, dtype=np.int64))

    def round_message(self, inst_idx: int, j: int) -> np.ndarray:
        coeffs = super().round_message(inst_idx, j)
        eng = self.engines[inst_idx]
        ctx = eng.ctx
        dq = self.delta % ctx.q
        if j == 1:
            if dq == 0:
                return coeffs
            delta_coords = np.zeros(ctx.lam, dtype=np.int64)
            delta_coords[0] = dq
            corr = _Correction.with_binary_sum(ctx, delta_coords)
        else:
            if self.pending[inst_idx] is None:
                return coeffs
            corr = _Correction.with_binary_sum(ctx, self.pending[inst_idx])
        self.corrections[inst_idx] = corr
        return corr.apply(coeffs)


class RandomPolyProver(HonestProver):
    """Sends uniformly random polynomials of legal degree every round."""

    def __init__(self, seed: int = 0):
        self.seed = seed

    def begin(self, stream, publics: list[InstancePublic]):
        super().begin(stream, publics)
        self.rngs = [np.random.default_rng([self.seed, i]) for i in range(len(publics))]

    def round_message(self, inst_idx: int, j: int) -> np.ndarray:
        eng = self.engines[inst_idx]
        return self.rngs[inst_idx].integers(
            0, eng.ctx.q, size=(eng.n_coeffs, eng.ctx.lam), dtype=np.int64)


class DegreeViolatingProver(HonestProver):
    """Honest g_1 plus one monomial of degree L(q-1)+1."""

    def round_message(self, inst_idx: int, j: int) -> np.ndarray:
        coeffs = super().round_message(inst_idx, j)
        if j == 1:
            extra = np.zeros((1, coeffs.shape[1]), dtype=np.int64)
            extra[0, 0] = 1
            coeffs = np.vstack([coeffs, extra])
        return coeffs


ADVERSARY_TAGS = ("residue-lie", "adaptive-shift", "random-poly", "degree-violate")


def make_prover(tag: str | None, delta: int = 1, seed: int = 0):
    if tag in (None, "none", "honest"):
        return HonestProver()
    if tag == "residue-lie":
        return ResidueLieProver(delta)
    if tag == "adaptive-shift":
        return AdaptiveShiftProver(delta)
    if tag == "random-poly":
        return RandomPolyProver(seed)
    if tag == "degree-violate":
        return DegreeViolatingProver()
    raise ValueError(f"unknown adversary tag: {tag}")
