"""Independent brute-force oracles for tests and acceptance checks.

Deliberately simple and kept apart from the protocol code paths: these hold
the whole stream, iterate the Boolean cube explicitly, and scan integer
ranges, so that agreement with the streaming/interactive paths is meaningful.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from .encoding import SymbolEncoding, p_eval
from .field import ExtFieldElement


def brute_force_f0(stream) -> int:
    return len(set(stream))


def brute_force_or_sum(stream, inst) -> tuple[int, ExtFieldElement]:
    """(exact-OR cube sum, approximate-polynomial cube sum) for one instance.

    The first component is the distinct count itself (an identity); the second
    equals the honest round-1 residue whenever the approximation holds.
    """
    enc = SymbolEncoding(inst.m)
    d = enc.d
    stream = list(stream)
    ctx = inst.ctx
    bit_rows = [enc.bits(a) for a in stream]
    or_sum = 0
    p_sum = ctx.zero()
    for x in itertools.product((0, 1), repeat=d):
        chi = [1 if row == x else 0 for row in bit_rows]
        or_sum += 1 if any(chi) else 0
        # chi-tilde of position k at Boolean x embeds as (chi_k, 0, ..., 0),
        # so apply the approximation coordinatewise over those vectors
        coords = []
        for j in range(ctx.lam):
            vec = chi if j == 0 else [0] * len(chi)
            coords.append(p_eval(inst.spec, vec))
        p_sum = p_sum + ctx.element(coords)
    return or_sum, p_sum


def direct_p_of_chi(stream, inst) -> ExtFieldElement:
    """p(chi(r)) recomputed from scratch with scalar element arithmetic.

    Holds the whole stream, evaluates every chi-tilde at the challenge point,
    forms each code-row accumulator as an extension element, and applies the
    OR polynomial in the extension field -- no streaming, no numpy batching.
    """
    from .encoding import chi_tilde_eval

    enc = SymbolEncoding(inst.m)
    ctx = inst.ctx
    r = inst.challenge_elements()
    ys = [chi_tilde_eval(a, r, enc) for a in stream]
    one = ctx.one()
    prod = one
    for i in range(1, inst.L + 1):
        s = ctx.zero()
        for k, y in enumerate(ys, start=1):
            s = s + ctx.element((inst.code.entry(i, k) * y.as_array()) % ctx.q)
        prod = prod * (one - s ** (ctx.q - 1))
    return one - prod


def crt_scan_oracle(residues: list[int], moduli: list[int]) -> int:
    """Linear scan of [0, prod moduli) for the unique residue match."""
    M = math.prod(moduli)
    if M > 10 ** 7:
        raise ValueError("scan bound exceeded")
    for v in range(M):
        if all(v % q == r for r, q in zip(residues, moduli)):
            return v
    raise ValueError("no integer matches the residues")
