"""The brute-force oracles themselves: trivially checkable facts."""

import numpy as np
import pytest

from f0sip.reference import (brute_force_f0, brute_force_or_sum,
                             crt_scan_oracle, direct_p_of_chi)
from f0sip.sumcheck import claimed_residue, honest_round_poly

from conftest import cached_params


def test_brute_force_f0():
    assert brute_force_f0([]) == 0
    assert brute_force_f0([2, 2, 2]) == 1
    assert brute_force_f0([3, 1, 3, 2]) == 3
    assert brute_force_f0(range(1, 9)) == 8


@pytest.mark.parametrize("m,n,seed", [(4, 6, 0), (8, 12, 1), (16, 10, 2)])
def test_exact_or_cube_sum_is_f0(m, n, seed):
    params, instances = cached_params(m, seed)
    rng = np.random.default_rng(seed)
    stream = rng.integers(1, m + 1, size=n).tolist()
    for inst in instances:
        or_sum, _ = brute_force_or_sum(stream, inst)
        assert or_sum == brute_force_f0(stream)


def test_p_sum_equals_honest_residue():
    params, instances = cached_params(8, 17)
    stream = [7, 7, 1, 4, 2, 2]
    for inst in instances:
        _, p_sum = brute_force_or_sum(stream, inst)
        assert claimed_residue(honest_round_poly(stream, inst, [], 1)) == p_sum


def test_direct_p_of_chi_is_boolean_at_boolean_challenges():
    # when the approximation succeeds its value is the embedded 0 or 1
    params, instances = cached_params(4, 23)
    val = direct_p_of_chi([1, 1], instances[0])
    coords = val.as_array()
    assert coords.shape == (instances[0].lam,)


def test_crt_scan_examples():
    assert crt_scan_oracle([1, 2, 2], [2, 3, 5]) == 17
    assert crt_scan_oracle([0], [2]) == 0


def test_crt_scan_bound():
    with pytest.raises(ValueError):
        crt_scan_oracle([0, 0], [10 ** 4, 10 ** 4])


def test_crt_scan_no_match():
    with pytest.raises(ValueError):
        crt_scan_oracle([1, 0], [2, 4])  # odd and divisible by 4: impossible
