"""WAV reading and writing for plaintext audio and the ciphertext carrier.

Plaintext comes in as RIFF/WAVE with format code 1 (PCM, 16-bit); samples are
mapped to reals by v / 32768 so that every 16-bit code survives a round trip
exactly. Ciphertext is real-valued and unbounded, so it is persisted as a
64-bit IEEE-float WAV (format code 3) carrying a private ``caw1`` chunk with
the pre-padding sample count. Frame alignment (length divisible by the channel
count) is validated when decoding PCM audio; the float carrier stores a bare
sample vector plus ``original_len`` and is not required to frame-align.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

PCM16_SCALE = 32768.0

# caw1 payload: version byte, original_len (u64 LE), pad_count (u32 LE)
_CAW1_STRUCT = struct.Struct("<BQI")
_CAW1_VERSION = 1

_FMT_PCM = 1
_FMT_IEEE_FLOAT = 3


class WavFormatError(ValueError):
    """Raised for malformed RIFF structure or an unsupported WAV format."""


@dataclass(frozen=True)
class AudioBuffer:
    """An interleaved sample vector plus the stream metadata.

    ``original_len`` is the pre-padding sample count; it equals
    ``samples.size`` for freshly decoded audio and may be smaller for the
    ciphertext carrier (the cipher pads odd-length input by one sample).
    """

    samples: np.ndarray
    sample_rate: int
    channels: int
    original_len: int

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        object.__setattr__(self, "samples", samples)
        if samples.ndim != 1:
            raise ValueError("samples must be a 1-D interleaved vector")
        if self.sample_rate <= 0:
            raise ValueError(f"sample_rate must be positive, got {self.sample_rate}")
        if self.channels < 1:
            raise ValueError(f"channels must be >= 1, got {self.channels}")
        if not 0 <= self.original_len <= samples.size:
            raise ValueError(
                f"original_len {self.original_len} out of range for "
                f"{samples.size} samples"
            )


def interleave(channels: list[np.ndarray]) -> np.ndarray:
    """Merge per-channel vectors of equal length into one interleaved vector."""
    if not channels:
        raise ValueError("no channels given")
    stacked = np.column_stack([np.asarray(c, dtype=np.float64) for c in channels])
    return stacked.reshape(-1)


def deinterleave(samples: np.ndarray, channels: int) -> list[np.ndarray]:
    """Split an interleaved vector back into its per-channel vectors."""
    samples = np.asarray(samples)
    if channels < 1:
        raise ValueError("channels must be >= 1")
    if samples.size % channels != 0:
        raise ValueError("sample count is not divisible by the channel count")
    frames = samples.reshape(-1, channels)
    return [frames[:, c].copy() for c in range(channels)]


def _parse_chunks(data: bytes) -> dict[bytes, bytes]:
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise WavFormatError("not a RIFF/WAVE file")
    chunks: dict[bytes, bytes] = {}
    offset = 12
    while offset < len(data):
        if offset + 8 > len(data):
            raise WavFormatError("truncated chunk header")
        cid = data[offset:offset + 4]
        (size,) = struct.unpack_from("<I", data, offset + 4)
        payload_end = offset + 8 + size
        if payload_end > len(data):
            raise WavFormatError(f"truncated chunk {cid!r}")
        chunks.setdefault(cid, data[offset + 8:payload_end])
        offset = payload_end + (size & 1)
    return chunks


def read_wav(path) -> AudioBuffer:
    """Read a PCM-16 or IEEE-float-64 WAV file into an AudioBuffer.

    PCM samples are scaled by 1/32768; float64 samples pass through
    bit-exactly. ``original_len`` comes from the ``caw1`` chunk when present.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    chunks = _parse_chunks(data)
    if b"fmt " not in chunks:
        raise WavFormatError("missing fmt chunk")
    if b"data" not in chunks:
        raise WavFormatError("missing data chunk")
    fmt = chunks[b"fmt "]
    if len(fmt) < 16:
        raise WavFormatError("fmt chunk too short")
    fmt_code, channels, sample_rate, _, _, bits = struct.unpack_from("<HHIIHH", fmt, 0)
    payload = chunks[b"data"]
    if len(payload) == 0:
        raise WavFormatError("zero-length data chunk")
    if channels < 1:
        raise WavFormatError("channel count must be >= 1")

    if fmt_code == _FMT_PCM and bits == 16:
        if len(payload) % 2 != 0:
            raise WavFormatError("PCM16 data chunk has an odd byte count")
        codes = np.frombuffer(payload, dtype="<i2")
        if codes.size % channels != 0:
            raise WavFormatError("PCM16 data is not frame-aligned")
        samples = codes.astype(np.float64) / PCM16_SCALE
    elif fmt_code == _FMT_IEEE_FLOAT and bits == 64:
        if len(payload) % 8 != 0:
            raise WavFormatError("float64 data chunk size is not a multiple of 8")
        samples = np.frombuffer(payload, dtype="<f8").copy()
    else:
        raise WavFormatError(
            f"unsupported WAV format: code {fmt_code}, {bits}-bit "
            "(supported: PCM 16-bit, IEEE float 64-bit)"
        )

    original_len = samples.size
    if b"caw1" in chunks:
        meta = chunks[b"caw1"]
        if len(meta) < _CAW1_STRUCT.size:
            raise WavFormatError("caw1 chunk too short")
        version, original_len, _pad = _CAW1_STRUCT.unpack_from(meta, 0)
        if version != _CAW1_VERSION:
            raise WavFormatError(f"unsupported caw1 version {version}")
        if original_len > samples.size:
            raise WavFormatError("caw1 original_len exceeds the sample count")

    return AudioBuffer(
        samples=samples,
        sample_rate=sample_rate,
        channels=channels,
        original_len=original_len,
    )


def _chunk_bytes(cid: bytes, payload: bytes) -> bytes:
    pad = b"\x00" if len(payload) & 1 else b""
    return cid + struct.pack("<I", len(payload)) + payload + pad


def write_wav(buffer: AudioBuffer, path, mode: str = "pcm16") -> None:
    """Write an AudioBuffer as a WAV file.

    ``pcm16`` encodes round(v * 32768) clamped to the int16 range and requires
    samples within [-1, 1] up to 1/32768 of rounding headroom. ``float64``
    writes IEEE doubles bit-exactly and appends the ``caw1`` metadata chunk.
    """
    samples = buffer.samples
    if not np.isfinite(samples).all():
        raise ValueError("buffer contains non-finite samples")

    if mode == "pcm16":
        limit = 1.0 + 1.0 / PCM16_SCALE
        peak = np.abs(samples).max() if samples.size else 0.0
        if peak > limit:
            raise ValueError(
                f"sample magnitude {peak:.6g} exceeds the PCM16 range"
            )
        codes = np.clip(np.rint(samples * PCM16_SCALE), -32768, 32767)
        payload = codes.astype("<i2").tobytes()
        fmt_code, bits = _FMT_PCM, 16
        extra_chunks = []
    elif mode == "float64":
        payload = samples.astype("<f8", copy=False).tobytes()
        fmt_code, bits = _FMT_IEEE_FLOAT, 64
        pad_count = samples.size - buffer.original_len
        meta = _CAW1_STRUCT.pack(_CAW1_VERSION, buffer.original_len, pad_count)
        extra_chunks = [_chunk_bytes(b"caw1", meta)]
    else:
        raise ValueError(f"unknown write mode {mode!r} (use 'pcm16' or 'float64')")

    block_align = buffer.channels * bits // 8
    fmt_payload = struct.pack(
        "<HHIIHH",
        fmt_code,
        buffer.channels,
        buffer.sample_rate,
        buffer.sample_rate * block_align,
        block_align,
        bits,
    )
    body = _chunk_bytes(b"fmt ", fmt_payload)
    for chunk in extra_chunks:
        body += chunk
    body += _chunk_bytes(b"data", payload)

    with open(path, "wb") as fh:
        fh.write(b"RIFF" + struct.pack("<I", 4 + len(body)) + b"WAVE" + body)
