"""Chaotic audio encryption toolbox.

Research cipher built from a Henon-map keystream, a lifting wavelet
transform, and hyperbolic-function mixing, together with the statistical
battery used to study it. Not a vetted cryptographic primitive; do not use it
to protect real data.
"""

__version__ = "0.1.0"

from .analysis import (
    AnalysisReport,
    CorrelationUndefinedError,
    SensitivityEntry,
    adjacent_correlation,
    analyze_samples,
    cross_correlation,
    key_sensitivity_report,
    key_space_size,
    power_spectrum,
    spectral_entropy,
)
from .audio_io import (
    AudioBuffer,
    WavFormatError,
    deinterleave,
    interleave,
    read_wav,
    write_wav,
)
from .chaos import (
    DIVERGENCE_LIMIT,
    HenonParams,
    Orbit,
    OrbitDivergenceError,
    iterate_henon,
    lyapunov_exponents,
    lyapunov_history,
)
from .cipher import decrypt, encrypt, keystream_lanes, mix_coefficients, unmix_coefficients
from .keying import (
    KEYSTREAM_BURN_IN,
    KeyMaterial,
    KeyMatrix,
    Keystream,
    derive_key_matrix,
    generate_keystream,
    hide_key,
    load_key_file,
    save_key_file,
)
from .lifting import SubbandPair, forward_lwt, inverse_lwt

__all__ = [
    "AnalysisReport",
    "AudioBuffer",
    "CorrelationUndefinedError",
    "DIVERGENCE_LIMIT",
    "HenonParams",
    "KEYSTREAM_BURN_IN",
    "KeyMaterial",
    "KeyMatrix",
    "Keystream",
    "Orbit",
    "OrbitDivergenceError",
    "SensitivityEntry",
    "SubbandPair",
    "WavFormatError",
    "adjacent_correlation",
    "analyze_samples",
    "cross_correlation",
    "decrypt",
    "deinterleave",
    "derive_key_matrix",
    "encrypt",
    "forward_lwt",
    "generate_keystream",
    "hide_key",
    "interleave",
    "inverse_lwt",
    "iterate_henon",
    "key_sensitivity_report",
    "key_space_size",
    "keystream_lanes",
    "load_key_file",
    "lyapunov_exponents",
    "lyapunov_history",
    "mix_coefficients",
    "power_spectrum",
    "read_wav",
    "save_key_file",
    "spectral_entropy",
    "unmix_coefficients",
    "write_wav",
]
