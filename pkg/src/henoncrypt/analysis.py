"""Statistical battery: correlation, spectral entropy, power spectrum,
key-space size, and key-sensitivity probing.

Natural audio has lag-1 correlation near 1 and a structured spectrum; well
encrypted output should show near-zero correlation and near-flat per-window
spectra. These measurements quantify both sides.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .audio_io import AudioBuffer
from .cipher import decrypt, encrypt
from .keying import KeyMaterial

DEFAULT_WINDOW_LEN = 1024
DEFAULT_HOP = 512


class CorrelationUndefinedError(ValueError):
    """Raised when a correlation is requested for a zero-variance series."""


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    # population-moment convention; the normalisation cancels in the ratio
    xd = x - x.mean()
    yd = y - y.mean()
    sx = math.sqrt(float(np.dot(xd, xd)))
    sy = math.sqrt(float(np.dot(yd, yd)))
    if sx == 0.0 or sy == 0.0:
        raise CorrelationUndefinedError(
            "correlation undefined: a series has zero standard deviation"
        )
    return float(np.dot(xd, yd) / (sx * sy))


def adjacent_correlation(samples) -> float:
    """Lag-1 Pearson correlation between each sample and its successor."""
    s = np.asarray(samples, dtype=np.float64)
    if s.size < 3:
        raise ValueError(f"need at least 3 samples, got {s.size}")
    return _pearson(s[:-1], s[1:])


def cross_correlation(a, b) -> float:
    """Zero-lag Pearson correlation between two equally indexed series."""
    x = np.asarray(a, dtype=np.float64)
    y = np.asarray(b, dtype=np.float64)
    n = min(x.size, y.size)
    if n < 2:
        raise ValueError("need at least 2 overlapping samples")
    return _pearson(x[:n], y[:n])


def spectral_entropy(
    samples, window_len: int = DEFAULT_WINDOW_LEN, hop: int = DEFAULT_HOP
) -> tuple[np.ndarray, float]:
    """Normalised spectral entropy per window and its mean.

    Each window's power spectrum is normalised to sum to 1 and fed through
    the Shannon formula with 0*log(0) = 0, then divided by log(bin count) so
    every value lies in [0, 1]: 1 for a flat spectrum, 0 for a single bin.
    All-zero windows carry no spectrum and are skipped with a warning.
    """
    s = np.asarray(samples, dtype=np.float64)
    if window_len < 8:
        raise ValueError(f"window_len must be >= 8, got {window_len}")
    if hop < 1:
        raise ValueError(f"hop must be >= 1, got {hop}")
    if s.size < window_len:
        raise ValueError(
            f"signal of {s.size} samples is shorter than the window ({window_len})"
        )

    values = []
    skipped = 0
    for start in range(0, s.size - window_len + 1, hop):
        window = s[start:start + window_len]
        power = np.abs(np.fft.rfft(window)) ** 2
        total = power.sum()
        if total == 0.0:
            skipped += 1
            continue
        p = power / total
        nonzero = p[p > 0]
        entropy = float(-(nonzero * np.log(nonzero)).sum() / math.log(p.size))
        values.append(entropy)

    if skipped:
        warnings.warn(f"skipped {skipped} all-zero window(s)", stacklevel=2)
    if not values:
        raise ValueError("every window was all-zero; spectral entropy undefined")
    series = np.array(values)
    return series, float(series.mean())


def power_spectrum(samples, sample_rate: float) -> tuple[np.ndarray, np.ndarray]:
    """One-sided power spectral density over the whole signal.

    Power is scaled by 1/(sample_rate * n) with interior bins doubled, so
    sum(power) * bin_width equals the signal's mean square (Parseval).
    """
    s = np.asarray(samples, dtype=np.float64)
    if s.size < 2:
        raise ValueError(f"need at least 2 samples, got {s.size}")
    if sample_rate <= 0:
        raise ValueError("sample_rate must be positive")
    n = s.size
    spectrum = np.abs(np.fft.rfft(s)) ** 2 / (sample_rate * n)
    if n % 2 == 0:
        spectrum[1:-1] *= 2.0
    else:
        spectrum[1:] *= 2.0
    freqs = np.fft.rfftfreq(n, d=1.0 / sample_rate)
    return freqs, spectrum


def key_space_size(n0: int) -> float:
    """log10 of the key-space count n0**2 * 10**64 * 2**32."""
    if n0 < 1:
        raise ValueError(f"n0 must be >= 1, got {n0}")
    return 2.0 * math.log10(n0) + 64.0 + 32.0 * math.log10(2.0)


@dataclass(frozen=True)
class SensitivityEntry:
    """One decryption attempt: which key field moved, by how much, and the
    correlation between the decrypted output and the original plaintext."""

    field: str
    delta: float
    correlation: float


def _perturb_key(key: KeyMaterial, name: str, delta: float) -> KeyMaterial:
    henon_fields = ("alpha", "beta", "x0", "y0")
    if name in henon_fields:
        henon = replace(key.henon, **{name: getattr(key.henon, name) + delta})
        return replace(key, henon=henon)
    if name in ("theta", "phi"):
        return replace(key, **{name: getattr(key, name) + delta})
    if name == "r":
        return replace(key, r=key.r + int(delta))
    raise ValueError(f"unknown key field {name!r}")


def key_sensitivity_report(
    audio: AudioBuffer,
    key: KeyMaterial,
    perturbations: list[tuple[str, float]],
) -> list[SensitivityEntry]:
    """Encrypt once, then decrypt under each perturbed key.

    The first entry is the exact-key baseline (correlation ~ 1); each
    following entry reports the plaintext correlation after nudging one key
    field by the given delta.
    """
    ciphertext = encrypt(audio, key)
    entries = [
        SensitivityEntry(
            field="exact",
            delta=0.0,
            correlation=cross_correlation(
                decrypt(ciphertext, key).samples, audio.samples
            ),
        )
    ]
    for name, delta in perturbations:
        perturbed = _perturb_key(key, name, delta)
        decrypted = decrypt(ciphertext, perturbed)
        entries.append(
            SensitivityEntry(
                field=name,
                delta=delta,
                correlation=cross_correlation(decrypted.samples, audio.samples),
            )
        )
    return entries


@dataclass(frozen=True)
class AnalysisReport:
    """Bundle of the statistical measurements for one signal."""

    rho: float | None
    entropy_series: np.ndarray
    entropy_mean: float | None
    psd_freqs: np.ndarray
    psd_power: np.ndarray
    key_space_log10: float
    window_len: int
    hop: int
    windows_skipped: int = 0
    notes: list[str] = field(default_factory=list)


def analyze_samples(
    samples,
    sample_rate: float,
    window_len: int = DEFAULT_WINDOW_LEN,
    hop: int = DEFAULT_HOP,
) -> AnalysisReport:
    """Run the full battery on one sample vector.

    Degenerate inputs do not abort the report: an undefined correlation or
    an all-silent entropy series is recorded as None with a note.
    """
    s = np.asarray(samples, dtype=np.float64)
    notes: list[str] = []

    try:
        rho = adjacent_correlation(s)
    except CorrelationUndefinedError:
        rho = None
        notes.append("correlation undefined: constant signal")

    series = np.array([])
    mean = None
    skipped = 0
    possible = max(0, (s.size - window_len) // hop + 1)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            series, mean = spectral_entropy(s, window_len=window_len, hop=hop)
        skipped = possible - series.size
    except ValueError as exc:
        skipped = possible
        notes.append(f"spectral entropy undefined: {exc}")

    freqs, power = power_spectrum(s, sample_rate)
    return AnalysisReport(
        rho=rho,
        entropy_series=series,
        entropy_mean=mean,
        psd_freqs=freqs,
        psd_power=power,
        key_space_log10=key_space_size(s.size),
        window_len=window_len,
        hop=hop,
        windows_skipped=skipped,
        notes=notes,
    )


def report_to_dict(report: AnalysisReport) -> dict:
    """JSON-ready view of a report."""
    return {
        "rho": report.rho,
        "rho_undefined": report.rho is None,
        "entropy_mean": report.entropy_mean,
        "entropy_series": [float(v) for v in report.entropy_series],
        "entropy_window_len": report.window_len,
        "entropy_hop": report.hop,
        "entropy_windows_skipped": report.windows_skipped,
        "psd": [
            [float(f), float(p)]
            for f, p in zip(report.psd_freqs, report.psd_power)
        ],
        "key_space_log10": report.key_space_log10,
        "notes": list(report.notes),
    }
