"""Streaming interactive proof for exact distinct-element counting.

A polylog-space verifier streams the input once, then engages an untrusted
prover in ceil(log2 m) rounds per small prime; the per-prime residues are
recombined with the Chinese remainder theorem into the exact distinct count.
"""

from .field import (ExtFieldCtx, ExtFieldElement, UniPoly, find_irreducible,
                    get_ctx, poly_eval, poly_interpolate, streaming_poly_probe)
from .encoding import (ApproxOrSpec, BMatrix, CodeOracle, SymbolEncoding,
                       b_update, chi_tilde_eval, compute_L, finalize_p_of_chi,
                       or_failure_probe, p_eval, prf)
from .sumcheck import (HonestProver, RoundContext, RoundMessage, claimed_residue,
                       honest_round_poly, verifier_final_check, verifier_round_check)
from .protocol import (InstanceParams, ProtocolParams, Transcript,
                       VerifierStreamState, accounting_report, crt_recombine,
                       derive_params, run_interaction)
from .adversary import make_prover
from .reference import (brute_force_f0, brute_force_or_sum, crt_scan_oracle,
                        direct_p_of_chi)

__all__ = [name for name in dir() if not name.startswith("_")]
