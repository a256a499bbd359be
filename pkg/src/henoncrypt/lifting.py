"""Single-level lifting wavelet transform with exact inversion.

The forward transform splits the signal into even and odd lanes, predicts
each odd sample from its two neighbouring even samples, then updates the even
lane from the resulting details:

    predict:  cd[i] = odd[i] - (even[i] + even[i+1]) / 2
    update:   ca[i] = even[i] + (cd[i-1] + cd[i]) / 4

Boundaries replicate (even[N] = even[N-1], cd[-1] = cd[0]), which keeps the
linear-ramp cancellation property at both edges and is self-inverse. Odd-length
input is padded by repeating the final sample; the inverse truncates back.

The inverse subtracts and adds the very same quantities the forward pass
computed, so reconstruction is exact whenever the forward arithmetic is exact.
That holds for the audio domain this package processes: PCM16-decoded samples
occupy at most 16 significand bits and the lifting coefficients are powers of
two, so no operation rounds. Full 53-bit-significand input can differ by one
ulp per sample after a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SubbandPair:
    """Approximation (ca) and detail (cd) lanes of one transform level."""

    ca: np.ndarray
    cd: np.ndarray
    original_len: int
    padded: bool

    def __post_init__(self):
        ca = np.asarray(self.ca, dtype=np.float64)
        cd = np.asarray(self.cd, dtype=np.float64)
        object.__setattr__(self, "ca", ca)
        object.__setattr__(self, "cd", cd)
        if ca.ndim != 1 or cd.ndim != 1:
            raise ValueError("subband lanes must be 1-D")
        if ca.size != cd.size:
            raise ValueError(
                f"mismatched lane lengths: ca has {ca.size}, cd has {cd.size}"
            )
        if self.original_len < 0:
            raise ValueError("original_len must be non-negative")
        if ca.size != (self.original_len + 1) // 2:
            raise ValueError(
                f"lane length {ca.size} inconsistent with original_len "
                f"{self.original_len}"
            )


def forward_lwt(signal) -> SubbandPair:
    """Transform a signal into its approximation and detail lanes."""
    x = np.asarray(signal, dtype=np.float64)
    if x.ndim != 1:
        raise ValueError("signal must be 1-D")
    n = x.size
    if n < 2:
        raise ValueError("signal must hold at least 2 samples")
    if not np.isfinite(x).all():
        raise ValueError("signal contains non-finite values")

    padded = bool(n % 2)
    if padded:
        x = np.append(x, x[-1])
    even = x[0::2]
    odd = x[1::2]

    even_next = np.append(even[1:], even[-1])
    cd = odd - 0.5 * (even + even_next)
    cd_prev = np.append(cd[0], cd[:-1])
    ca = even + 0.25 * (cd_prev + cd)
    return SubbandPair(ca=ca, cd=cd, original_len=n, padded=padded)


def inverse_lwt(subbands: SubbandPair) -> np.ndarray:
    """Invert :func:`forward_lwt`, truncating any padding that was applied."""
    ca, cd = subbands.ca, subbands.cd
    if ca.size < 1:
        raise ValueError("subband lanes are empty")
    if not (np.isfinite(ca).all() and np.isfinite(cd).all()):
        raise ValueError("subbands contain non-finite values")

    cd_prev = np.append(cd[0], cd[:-1])
    even = ca - 0.25 * (cd_prev + cd)
    even_next = np.append(even[1:], even[-1])
    odd = cd + 0.5 * (even + even_next)

    merged = np.empty(even.size + odd.size, dtype=np.float64)
    merged[0::2] = even
    merged[1::2] = odd
    return merged[: subbands.original_len]
