import math

import numpy as np
import pytest

from henoncrypt import (
    KEYSTREAM_BURN_IN,
    HenonParams,
    KeyMaterial,
    KeyMatrix,
    Keystream,
    Orbit,
    derive_key_matrix,
    generate_keystream,
    hide_key,
    iterate_henon,
    load_key_file,
    save_key_file,
)

CANONICAL = HenonParams(alpha=1.4, beta=0.3, x0=0.01, y0=0.003)

# Straight-line evaluation of the byte rules for the canonical parameters
# (burn-in 1000, phi = pi/4, l = 8), frozen from a scalar-loop script.
GOLDEN_YK1 = [84, 236, 116, 155]
GOLDEN_YK2 = [66, 229, 30, 108]


def byte_oracle(xs, l, phi):
    """Scalar-loop keystream oracle, independent of the vectorised path."""
    def u8(v):
        return int(math.floor(abs(v) * 1e9)) % 256

    half = (l + 1) // 2
    yk1 = [
        u8(math.cos(phi * k) * xs[k - 1] + math.sin(phi * k) * xs[k])
        for k in range(1, half + 1)
    ]
    yk2 = [
        u8(math.sin(phi * i) * xs[i - 1] - math.cos(phi * i) * xs[i])
        for i in range(half + 1, l + 1)
    ]
    return yk1, yk2


def canonical_orbit(length):
    return iterate_henon(CANONICAL, n=length, burn_in=KEYSTREAM_BURN_IN)


def test_golden_keystream_bytes():
    orbit = canonical_orbit(9)
    yk1, yk2 = generate_keystream(orbit, l=8, phi=math.pi / 4)
    assert yk1.tolist() == GOLDEN_YK1
    assert yk2.tolist() == GOLDEN_YK2
    ora1, ora2 = byte_oracle(orbit.xs, 8, math.pi / 4)
    assert ora1 == GOLDEN_YK1
    assert ora2 == GOLDEN_YK2


def test_phi_zero_collapses_rotation():
    orbit = canonical_orbit(11)
    yk1, yk2 = generate_keystream(orbit, l=10, phi=0.0)
    xs = orbit.xs
    u8 = lambda v: int(math.floor(abs(v) * 1e9)) % 256
    assert yk1.tolist() == [u8(xs[k]) for k in range(5)]
    assert yk2.tolist() == [u8(xs[i]) for i in range(6, 11)]


def test_keystream_lengths():
    orbit = canonical_orbit(20)
    for l in (6, 7, 12, 19):
        yk1, yk2 = generate_keystream(orbit, l=l, phi=0.5)
        assert yk1.size == (l + 1) // 2
        assert yk2.size == l // 2


def test_keystream_requires_enough_orbit():
    orbit = canonical_orbit(8)
    with pytest.raises(ValueError, match="orbit supplies"):
        generate_keystream(orbit, l=8, phi=0.5)


def test_keystream_phi_range():
    orbit = canonical_orbit(10)
    with pytest.raises(ValueError, match="phi"):
        generate_keystream(orbit, l=8, phi=-0.1)
    with pytest.raises(ValueError, match="phi"):
        generate_keystream(orbit, l=8, phi=math.pi)


def test_keystream_determinism():
    a1, a2 = generate_keystream(canonical_orbit(5001), 5000, 0.7)
    b1, b2 = generate_keystream(canonical_orbit(5001), 5000, 0.7)
    assert a1.tobytes() == b1.tobytes()
    assert a2.tobytes() == b2.tobytes()


def test_keystream_diverges_under_tiny_x0_shift():
    shifted = HenonParams(alpha=1.4, beta=0.3, x0=0.01 + 1e-15, y0=0.003)
    l = 10_000
    a = np.concatenate(generate_keystream(canonical_orbit(l + 1), l, math.pi / 4))
    b = np.concatenate(
        generate_keystream(
            iterate_henon(shifted, n=l + 1, burn_in=KEYSTREAM_BURN_IN), l, math.pi / 4
        )
    )
    assert np.mean(a[100:] != b[100:]) >= 0.30


def test_key_matrix_golden_values():
    orbit = Orbit(xs=np.array([0.5, -0.5]), ys=np.zeros(2), burn_in=0)
    matrix = derive_key_matrix(orbit, r=2, l=1000)
    assert matrix.m.tolist() == [[110, 146], [146, 110]]


def test_key_matrix_rows_rotate_left():
    matrix = derive_key_matrix(canonical_orbit(8), r=6, l=44100)
    for j in range(1, 6):
        assert np.array_equal(matrix.m[j], np.roll(matrix.m[j - 1], -1))


def test_key_matrix_constant_orbit_gives_constant_rows():
    orbit = Orbit(xs=np.full(4, 0.25), ys=np.zeros(4), burn_in=0)
    matrix = derive_key_matrix(orbit, r=4, l=100)
    assert len(set(matrix.m.reshape(-1).tolist())) == 1


def test_key_matrix_validation():
    orbit = canonical_orbit(8)
    with pytest.raises(ValueError):
        derive_key_matrix(orbit, r=1, l=100)
    with pytest.raises(ValueError):
        derive_key_matrix(orbit, r=16, l=100)
    with pytest.raises(ValueError):
        KeyMatrix(m=np.array([[1, 2], [1, 2]], dtype=np.uint8))


def test_hide_key_worked_example():
    matrix = KeyMatrix(m=np.array([[10, 20], [20, 10]], dtype=np.uint8))
    ks = hide_key(np.array([1, 2], dtype=np.uint8), np.array([3, 4], dtype=np.uint8), matrix)
    assert ks.f1.tolist() == [11, 22]
    assert ks.f2.tolist() == [23, 14]
    assert ks.pad_count == 0


def test_hide_key_is_an_involution():
    rng = np.random.default_rng(9)
    matrix = derive_key_matrix(canonical_orbit(8), r=4, l=777)
    for _ in range(200):
        n1 = int(rng.integers(1, 300))
        n2 = int(rng.integers(0, 300))
        y1 = rng.integers(0, 256, n1).astype(np.uint8)
        y2 = rng.integers(0, 256, n2).astype(np.uint8)
        once = hide_key(y1, y2, matrix)
        twice = hide_key(once.f1, once.f2, matrix)
        assert np.array_equal(twice.f1, y1)
        assert np.array_equal(twice.f2, y2)
        assert once.f1.size + once.f2.size == n1 + n2


def test_hide_key_pad_count():
    matrix = derive_key_matrix(canonical_orbit(8), r=4, l=777)
    ks = hide_key(np.zeros(5, dtype=np.uint8), np.zeros(6, dtype=np.uint8), matrix)
    assert ks.pad_count == 5  # 11 bytes padded up to 16


def test_zero_matrix_is_identity():
    matrix = KeyMatrix(m=np.zeros((3, 3), dtype=np.uint8))
    y1 = np.array([9, 8, 7], dtype=np.uint8)
    y2 = np.array([1, 2], dtype=np.uint8)
    ks = hide_key(y1, y2, matrix)
    assert np.array_equal(ks.f1, y1)
    assert np.array_equal(ks.f2, y2)


def test_key_file_round_trip_bit_exact(tmp_path):
    henon = HenonParams(
        alpha=1.4, beta=0.1 + 0.2, x0=-1e-300, y0=0.1 + 0.2 + 0.3, variant="decoupled"
    )
    key = KeyMaterial(henon=henon, theta=12345.678901234567, phi=1.2345678901234567, r=7)
    path = tmp_path / "k.key"
    save_key_file(key, path)
    back = load_key_file(path)
    assert back == key


def test_key_file_errors(tmp_path):
    path = tmp_path / "k.key"
    path.write_text("version=2\n")
    with pytest.raises(ValueError, match="missing"):
        load_key_file(path)
    good = KeyMaterial(henon=CANONICAL, theta=100.0, phi=0.5, r=4)
    save_key_file(good, path)
    text = path.read_text().replace("version=1", "version=9")
    path.write_text(text)
    with pytest.raises(ValueError, match="version"):
        load_key_file(path)
    path.write_text("garbage line\n")
    with pytest.raises(ValueError, match="key=value"):
        load_key_file(path)


def test_key_material_validation():
    with pytest.raises(ValueError, match="phi"):
        KeyMaterial(henon=CANONICAL, theta=1.0, phi=2.0, r=4)
    with pytest.raises(ValueError, match="theta"):
        KeyMaterial(henon=CANONICAL, theta=0.0, phi=0.5, r=4)
    with pytest.raises(ValueError, match="r must"):
        KeyMaterial(henon=CANONICAL, theta=1.0, phi=0.5, r=1)


def test_keystream_dataclass_is_plain_data():
    ks = Keystream(f1=np.zeros(2, dtype=np.uint8), f2=np.zeros(2, dtype=np.uint8), pad_count=0)
    assert ks.pad_count == 0
