import numpy as np
import pytest

from henoncrypt import SubbandPair, forward_lwt, inverse_lwt


def forward_reference(signal):
    """Loop-level reference: the stencils written out one index at a time."""
    s = [float(v) for v in signal]
    if len(s) % 2:
        s = s + [s[-1]]
    even = s[0::2]
    odd = s[1::2]
    n = len(even)
    cd = []
    for i in range(n):
        nxt = even[i + 1] if i + 1 < n else even[n - 1]
        cd.append(odd[i] - 0.5 * (even[i] + nxt))
    ca = []
    for i in range(n):
        prev = cd[i - 1] if i >= 1 else cd[0]
        ca.append(even[i] + 0.25 * (prev + cd[i]))
    return ca, cd


def inverse_reference(ca, cd, original_len):
    n = len(ca)
    even = []
    for i in range(n):
        prev = cd[i - 1] if i >= 1 else cd[0]
        even.append(ca[i] - 0.25 * (prev + cd[i]))
    odd = []
    for i in range(n):
        nxt = even[i + 1] if i + 1 < n else even[n - 1]
        odd.append(cd[i] + 0.5 * (even[i] + nxt))
    merged = []
    for e, o in zip(even, odd):
        merged.extend((e, o))
    return merged[:original_len]


def pcm_grid_signal(rng, n):
    return rng.integers(-32768, 32768, n) / 32768.0


def test_constant_signal():
    sub = forward_lwt([5.0, 5.0, 5.0, 5.0])
    assert np.array_equal(sub.ca, [5.0, 5.0])
    assert np.array_equal(sub.cd, [0.0, 0.0])
    assert np.array_equal(inverse_lwt(sub), [5.0, 5.0, 5.0, 5.0])


def test_ramp_example():
    sub = forward_lwt([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])
    assert np.array_equal(sub.cd, [0.0, 0.0, 1.0])
    assert np.array_equal(sub.ca, [1.0, 3.0, 5.25])
    back = inverse_lwt(
        SubbandPair(ca=[1.0, 3.0, 5.25], cd=[0.0, 0.0, 1.0], original_len=6, padded=False)
    )
    assert np.array_equal(back, [1.0, 2.0, 3.0, 4.0, 5.0, 6.0])


def test_odd_length_pads_and_restores():
    sub = forward_lwt([1.0, 2.0, 3.0])
    assert sub.padded
    assert sub.original_len == 3
    ref_ca, ref_cd = forward_reference([1.0, 2.0, 3.0])
    assert sub.ca.tolist() == ref_ca
    assert sub.cd.tolist() == ref_cd
    assert np.array_equal(inverse_lwt(sub), [1.0, 2.0, 3.0])


def test_matches_loop_reference_on_random_input():
    rng = np.random.default_rng(11)
    for n in (2, 3, 17, 256, 1001):
        x = rng.uniform(-1.0, 1.0, n)
        sub = forward_lwt(x)
        ref_ca, ref_cd = forward_reference(x)
        assert sub.ca.tolist() == ref_ca
        assert sub.cd.tolist() == ref_cd
        assert inverse_lwt(sub).tolist() == inverse_reference(
            ref_ca, ref_cd, n
        )


def test_round_trip_bit_exact_on_pcm_grid():
    # PCM16-decoded samples use <= 16 significand bits and the lifting weights
    # are powers of two, so every operation is exact and the inverse restores
    # the input bit for bit.
    rng = np.random.default_rng(42)
    for _ in range(25):
        n = int(rng.integers(2, 100_001))
        x = pcm_grid_signal(rng, n)
        y = inverse_lwt(forward_lwt(x))
        assert x.tobytes() == y.tobytes()


def test_round_trip_full_precision_within_one_ulp():
    # Full 53-bit significands round inside the stencils; the round trip is
    # then tight to one ulp per sample rather than exact.
    rng = np.random.default_rng(43)
    x = rng.uniform(-1.0, 1.0, 50_001)
    y = inverse_lwt(forward_lwt(x))
    assert np.max(np.abs(x - y)) <= 4 * np.finfo(np.float64).eps


def test_linear_ramp_interior_details_vanish():
    # Ramp samples built from dyadic slope and offset are exactly
    # representable, so the predict step cancels them exactly.
    rng = np.random.default_rng(44)
    for _ in range(20):
        slope = int(rng.integers(-(2**20), 2**20)) / 2**20
        offset = int(rng.integers(-(2**20), 2**20)) / 2**10
        n = int(rng.integers(4, 5000))
        sub = forward_lwt(slope * np.arange(n) + offset)
        assert np.all(sub.cd[:-1] == 0.0)


def test_length_bookkeeping():
    rng = np.random.default_rng(45)
    for n in (2, 3, 10, 11, 4096, 4097):
        x = pcm_grid_signal(rng, n)
        sub = forward_lwt(x)
        assert sub.ca.size == sub.cd.size == (n + 1) // 2
        assert inverse_lwt(sub).size == n


def test_rejects_short_input():
    with pytest.raises(ValueError):
        forward_lwt([])
    with pytest.raises(ValueError):
        forward_lwt([1.0])


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        forward_lwt([1.0, np.nan, 2.0])
    with pytest.raises(ValueError):
        forward_lwt([1.0, np.inf])


def test_rejects_mismatched_lanes():
    with pytest.raises(ValueError):
        SubbandPair(ca=[1.0, 2.0], cd=[1.0], original_len=4, padded=False)


def test_rejects_inconsistent_original_len():
    with pytest.raises(ValueError):
        SubbandPair(ca=[1.0, 2.0], cd=[0.0, 0.0], original_len=7, padded=True)
