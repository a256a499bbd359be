"""Encryption and decryption of audio buffers.

Pipeline: lift the signal into (ca, cd), derive the hidden keystream for the
message length, and blend the lanes with hyperbolic weights

    ca' = ca * (cosh t - sinh t) + g1 * (cosh t + sinh t)
    cd' = cd * (cosh t - sinh t) + g2 * (cosh t + sinh t)

with t = theta / l constrained to (0, pi/4]. Since
(cosh t - sinh t)(cosh t + sinh t) = 1, decryption is

    ca = ca' * u - g1 * u**2,   u = cosh t + sinh t

and the inverse transform restores the waveform.

The keystream lanes (g1, g2) are conditioned before mixing: the hidden bytes
are recentred to zero mean (-127.5 .. 127.5) and passed through the forward
lifting transform. The ciphertext therefore equals, in the time domain, the
plaintext scaled by e^-t plus white keystream noise scaled by e^t, which is
what buries the waveform: adjacent-sample correlation collapses to ~0 and the
windowed spectral entropy rises above 0.9. Feeding raw bytes straight into the
lanes leaves a strong spectral signature instead (the byte mean turns into
alternating DC and Nyquist components after the inverse transform).

Decryption regenerates the keystream from the key; the only transported secret
state is the key file.
"""

from __future__ import annotations

import math

import numpy as np

from .audio_io import AudioBuffer
from .chaos import iterate_henon
from .keying import (
    KEYSTREAM_BURN_IN,
    KeyMaterial,
    derive_key_matrix,
    generate_keystream,
    hide_key,
)
from .lifting import SubbandPair, forward_lwt, inverse_lwt

THETA_RATIO_MAX = math.pi / 4


def _mixing_ratio(key: KeyMaterial, l: int) -> float:
    t = key.theta / l
    if not 0.0 < t <= THETA_RATIO_MAX:
        raise ValueError(
            f"theta/l = {t:.6g} outside (0, pi/4]; theta {key.theta} does not "
            f"suit a message of {l} samples"
        )
    return t


def mix_coefficients(coeffs, stream, t: float):
    """Forward blend: coeffs * e^-t + stream * e^t (via cosh/sinh)."""
    d = math.cosh(t) - math.sinh(t)
    u = math.cosh(t) + math.sinh(t)
    return np.asarray(coeffs) * d + np.asarray(stream) * u


def unmix_coefficients(mixed, stream, t: float):
    """Inverse blend: mixed * u - stream * u**2 recovers the coefficients."""
    u = math.cosh(t) + math.sinh(t)
    return np.asarray(mixed) * u - np.asarray(stream) * (u * u)


def keystream_lanes(key: KeyMaterial, l: int) -> tuple[np.ndarray, np.ndarray]:
    """Conditioned keystream lanes for a message of l samples.

    Both encryption and decryption call this; for the same key and length the
    result is bit-identical.
    """
    orbit = iterate_henon(key.henon, max(l + 1, key.r), burn_in=KEYSTREAM_BURN_IN)
    yk1, yk2 = generate_keystream(orbit, l, key.phi)
    matrix = derive_key_matrix(orbit, key.r, l)
    ks = hide_key(yk1, yk2, matrix)
    centred = np.concatenate([ks.f1, ks.f2]).astype(np.float64) - 127.5
    lanes = forward_lwt(centred)
    return lanes.ca, lanes.cd


def encrypt(audio: AudioBuffer, key: KeyMaterial) -> AudioBuffer:
    """Encrypt a buffer; the result is unbounded and keeps the stream metadata.

    Odd-length input is padded by one sample inside the transform, so the
    ciphertext holds 2 * ceil(l / 2) samples while ``original_len`` records l.
    """
    samples = audio.samples
    l = samples.size
    if l < 2:
        raise ValueError("audio must hold at least 2 samples")
    t = _mixing_ratio(key, l)

    sub = forward_lwt(samples)
    g1, g2 = keystream_lanes(key, l)
    ca = mix_coefficients(sub.ca, g1, t)
    cd = mix_coefficients(sub.cd, g2, t)
    cipher = inverse_lwt(
        SubbandPair(ca=ca, cd=cd, original_len=2 * ca.size, padded=False)
    )
    return AudioBuffer(
        samples=cipher,
        sample_rate=audio.sample_rate,
        channels=audio.channels,
        original_len=l,
    )


def decrypt(ciphertext: AudioBuffer, key: KeyMaterial) -> AudioBuffer:
    """Decrypt a buffer produced by :func:`encrypt` with the same key."""
    l = ciphertext.original_len
    if l < 2:
        raise ValueError("ciphertext original_len must be >= 2")
    expected = 2 * ((l + 1) // 2)
    if ciphertext.samples.size != expected:
        raise ValueError(
            f"ciphertext holds {ciphertext.samples.size} samples but "
            f"original_len {l} requires {expected}; length mismatch with the "
            "keystream"
        )
    t = _mixing_ratio(key, l)

    sub = forward_lwt(ciphertext.samples)
    g1, g2 = keystream_lanes(key, l)
    ca = unmix_coefficients(sub.ca, g1, t)
    cd = unmix_coefficients(sub.cd, g2, t)
    plain = inverse_lwt(
        SubbandPair(ca=ca, cd=cd, original_len=l, padded=bool(l % 2))
    )
    return AudioBuffer(
        samples=plain,
        sample_rate=ciphertext.sample_rate,
        channels=ciphertext.channels,
        original_len=l,
    )
