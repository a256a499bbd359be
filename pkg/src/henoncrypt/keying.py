"""Keystream derivation, circulant key matrix, and key hiding.

The secret is a :class:`KeyMaterial`: Henon parameters and initial condition,
the mixing angle theta, the rotation parameter phi, and the key-matrix order
r. From one chaotic orbit the module derives

* two byte vectors ``yk1``/``yk2``: each chaotic value is paired with its
  successor through a sin/cos rotation whose angle advances linearly with the
  output index (``phi * i``), then reduced to a byte with
  ``floor(|v| * 1e9) mod 256``. The index-scaled angle makes every byte of the
  stream responsive to phi down to one part in 1e12.
* the order-r key matrix: ``s_i = (x_i + l) / (2**16 + l)`` over the first r
  orbit values, ``m_i = floor(s_i * 1e16) mod 256``, arranged so each row is
  the previous row rotated left by one.

Hiding XORs the key matrix blockwise over the concatenated byte stream, so the
secret bytes are diffused through the whole keystream. XOR makes the hiding
step its own inverse.

Byte derivation reads low-order digits of the orbit values, so key material is
contracted to IEEE double round-to-nearest arithmetic; the same platform
always reproduces the same stream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chaos import HenonParams, Orbit

#: Orbit iterations discarded before any keystream material is drawn.
KEYSTREAM_BURN_IN = 1000

_KEY_FILE_VERSION = 1
_KEY_FIELDS = ("version", "variant", "alpha", "beta", "x0", "y0", "theta", "phi", "r")


@dataclass(frozen=True)
class KeyMaterial:
    """The full secret: map parameters plus theta, phi and the matrix order."""

    henon: HenonParams
    theta: float
    phi: float
    r: int = 4

    def __post_init__(self):
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise ValueError(f"theta must be a positive real, got {self.theta!r}")
        if not 0.0 <= self.phi <= math.pi / 2:
            raise ValueError(f"phi must lie in [0, pi/2], got {self.phi!r}")
        if self.r < 2:
            raise ValueError(f"key-matrix order r must be >= 2, got {self.r}")


@dataclass(frozen=True)
class KeyMatrix:
    """r x r byte matrix; every row is the left rotation of the row above."""

    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.uint8)
        object.__setattr__(self, "m", m)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("key matrix must be square")
        if m.shape[0] < 2:
            raise ValueError("key matrix order must be >= 2")
        for j in range(1, m.shape[0]):
            if not np.array_equal(m[j], np.roll(m[j - 1], -1)):
                raise ValueError("row structure violated: rows must rotate left")

    @property
    def order(self) -> int:
        return self.m.shape[0]


@dataclass(frozen=True)
class Keystream:
    """Hidden keystream halves consumed by the cipher."""

    f1: np.ndarray
    f2: np.ndarray
    pad_count: int


def _to_bytes(values: np.ndarray) -> np.ndarray:
    # |v| <= DIVERGENCE_LIMIT, so v * 1e9 fits an int64 comfortably.
    return (np.floor(np.abs(values) * 1e9).astype(np.int64) % 256).astype(np.uint8)


def generate_keystream(orbit: Orbit, l: int, phi: float) -> tuple[np.ndarray, np.ndarray]:
    """Derive the byte vectors (yk1, yk2) for a message of l samples.

    The orbit must supply at least l + 1 values. yk1 holds ceil(l/2) bytes,
    yk2 the remaining floor(l/2).
    """
    if l < 2:
        raise ValueError(f"message length must be >= 2, got {l}")
    if not 0.0 <= phi <= math.pi / 2:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi!r}")
    xs = orbit.xs
    if xs.size < l + 1:
        raise ValueError(
            f"orbit supplies {xs.size} values but the keystream needs {l + 1}"
        )

    half = (l + 1) // 2
    k = np.arange(1, half + 1, dtype=np.float64)
    v1 = np.cos(phi * k) * xs[:half] + np.sin(phi * k) * xs[1:half + 1]

    i = np.arange(half + 1, l + 1, dtype=np.float64)
    v2 = np.sin(phi * i) * xs[half:l] - np.cos(phi * i) * xs[half + 1:l + 1]
    return _to_bytes(v1), _to_bytes(v2)


def derive_key_matrix(orbit: Orbit, r: int, l: int) -> KeyMatrix:
    """Build the order-r circulant key matrix from the first r orbit values."""
    if r < 2:
        raise ValueError(f"key-matrix order r must be >= 2, got {r}")
    if l < 1:
        raise ValueError(f"message length must be >= 1, got {l}")
    xs = orbit.xs
    if xs.size < r:
        raise ValueError(f"orbit supplies {xs.size} values but the matrix needs {r}")

    s = (xs[:r] + l) / (2.0**16 + l)
    m = (np.floor(s * 1e16).astype(np.int64) % 256).astype(np.uint8)
    rows = np.stack([np.roll(m, -j) for j in range(r)])
    return KeyMatrix(m=rows)


def hide_key(yk1: np.ndarray, yk2: np.ndarray, matrix: KeyMatrix) -> Keystream:
    """XOR the key matrix blockwise over [yk1, yk2].

    The concatenated stream is zero-padded to a multiple of r*r, tiled into
    r x r blocks row-major, XORed with the matrix, and split back. Pad bytes
    are discarded, so no key byte leaks through the padding.
    """
    y1 = np.asarray(yk1, dtype=np.uint8)
    y2 = np.asarray(yk2, dtype=np.uint8)
    r = matrix.order
    cat = np.concatenate([y1, y2])
    pad_count = (-cat.size) % (r * r)
    buf = np.concatenate([cat, np.zeros(pad_count, dtype=np.uint8)])
    mixed = (buf.reshape(-1, r, r) ^ matrix.m[None, :, :]).reshape(-1)
    return Keystream(
        f1=mixed[: y1.size].copy(),
        f2=mixed[y1.size : cat.size].copy(),
        pad_count=int(pad_count),
    )


def _format_real(v: float) -> str:
    return format(v, ".17g")


def save_key_file(key: KeyMaterial, path) -> None:
    """Write the key as flat key=value lines; reals carry 17 significant digits."""
    lines = [
        f"version={_KEY_FILE_VERSION}",
        f"variant={key.henon.variant}",
        f"alpha={_format_real(key.henon.alpha)}",
        f"beta={_format_real(key.henon.beta)}",
        f"x0={_format_real(key.henon.x0)}",
        f"y0={_format_real(key.henon.y0)}",
        f"theta={_format_real(key.theta)}",
        f"phi={_format_real(key.phi)}",
        f"r={key.r}",
    ]
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def load_key_file(path) -> KeyMaterial:
    """Parse a key file written by :func:`save_key_file`, bit-exactly."""
    fields: dict[str, str] = {}
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"key file line {lineno} is not key=value: {line!r}")
            name, _, value = line.partition("=")
            fields[name.strip()] = value.strip()

    missing = [f for f in _KEY_FIELDS if f not in fields]
    if missing:
        raise ValueError(f"key file is missing fields: {', '.join(missing)}")
    if fields["version"] != str(_KEY_FILE_VERSION):
        raise ValueError(f"unsupported key file version {fields['version']!r}")

    def real(name: str) -> float:
        try:
            return float(fields[name])
        except ValueError:
            raise ValueError(f"key field {name} is not a real: {fields[name]!r}")

    henon = HenonParams(
        alpha=real("alpha"),
        beta=real("beta"),
        x0=real("x0"),
        y0=real("y0"),
        variant=fields["variant"],
    )
    try:
        r = int(fields["r"])
    except ValueError:
        raise ValueError(f"key field r is not an integer: {fields['r']!r}")
    return KeyMaterial(henon=henon, theta=real("theta"), phi=real("phi"), r=r)
