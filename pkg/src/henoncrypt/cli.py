"""Command-line front end: keygen, encrypt, decrypt, analyze, lyapunov.

Encryption reads PCM16 WAV and writes the float64 ciphertext container;
decryption reverses that, re-quantising to PCM16. The analyze command emits a
JSON report plus CSVs (entropy series, power spectrum, lag-1 scatter pairs)
and renders the matching figures as PNG files next to the report. Key file
contents are never echoed to any output.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import analyze_samples, cross_correlation, report_to_dict
from .audio_io import AudioBuffer, WavFormatError, read_wav, write_wav
from .chaos import HenonParams, OrbitDivergenceError, lyapunov_history
from .cipher import decrypt, encrypt
from .keying import KeyMaterial, load_key_file, save_key_file
from . import plotting

CHAOS_GATE_STEPS = 100_000


def _add_key_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.4, help="bifurcation parameter")
    p.add_argument("--beta", type=float, default=0.3, help="contraction parameter")
    p.add_argument("--x0", type=float, default=0.01, help="initial x")
    p.add_argument("--y0", type=float, default=0.003, help="initial y")
    p.add_argument(
        "--variant",
        choices=("standard", "decoupled"),
        default="standard",
        help="map variant for the second component",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="henoncrypt",
        description="Chaotic audio encryption and analysis toolbox",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    kg = sub.add_parser("keygen", help="generate and verify a key file")
    kg.add_argument("--out", required=True, help="key file destination")
    _add_key_params(kg)
    kg.add_argument("--theta", type=float, default=1000.0, help="mixing angle theta")
    kg.add_argument(
        "--phi", type=float, default=math.pi / 4, help="rotation parameter in [0, pi/2]"
    )
    kg.add_argument("--r", type=int, default=4, help="key-matrix order (>= 2)")
    kg.add_argument(
        "--force",
        action="store_true",
        help="write the key even if the parameters fail the chaos check",
    )

    enc = sub.add_parser("encrypt", help="encrypt a WAV file")
    enc.add_argument("--in", dest="in_path", required=True, help="plaintext WAV")
    enc.add_argument("--key", required=True, help="key file")
    enc.add_argument("--out", required=True, help="ciphertext container destination")

    dec = sub.add_parser("decrypt", help="decrypt a ciphertext container")
    dec.add_argument("--in", dest="in_path", required=True, help="ciphertext container")
    dec.add_argument("--key", required=True, help="key file")
    dec.add_argument("--out", required=True, help="decrypted PCM16 WAV destination")

    an = sub.add_parser("analyze", help="statistical report for a WAV file")
    an.add_argument("--in", dest="in_path", required=True, help="input WAV")
    an.add_argument("--out", required=True, help="JSON report destination")
    an.add_argument("--window", type=int, default=1024, help="entropy window length")
    an.add_argument("--hop", type=int, default=512, help="entropy window hop")
    an.add_argument(
        "--ref",
        default=None,
        help="reference WAV; adds cross-correlation against it to the report",
    )

    ly = sub.add_parser("lyapunov", help="estimate Lyapunov exponents")
    _add_key_params(ly)
    ly.add_argument("--steps", type=int, default=1_000_000, help="iteration count")
    ly.add_argument(
        "--out", default=None, help="optional JSON destination (+ convergence figure)"
    )

    return parser


def _cmd_keygen(args) -> int:
    if args.r < 2:
        raise SystemExit("usage error: --r must be >= 2")
    henon = HenonParams(
        alpha=args.alpha, beta=args.beta, x0=args.x0, y0=args.y0, variant=args.variant
    )
    key = KeyMaterial(henon=henon, theta=args.theta, phi=args.phi, r=args.r)

    if not args.force:
        from .chaos import lyapunov_exponents

        try:
            lam1, _ = lyapunov_exponents(henon, CHAOS_GATE_STEPS)
        except OrbitDivergenceError as exc:
            print(f"error: chaos check failed: {exc}", file=sys.stderr)
            print("error: pass --force to write the key anyway", file=sys.stderr)
            return 1
        if lam1 <= 0.0:
            print(
                "error: parameters are not chaotic (largest Lyapunov exponent "
                "is not positive); pass --force to write the key anyway",
                file=sys.stderr,
            )
            return 1

    save_key_file(key, args.out)
    print(f"key written to {args.out}")
    return 0


def _cmd_encrypt(args) -> int:
    buffer = read_wav(args.in_path)
    key = load_key_file(args.key)
    ciphertext = encrypt(buffer, key)
    write_wav(ciphertext, args.out, mode="float64")
    print(
        f"encrypted {buffer.samples.size} samples "
        f"({buffer.sample_rate} Hz, {buffer.channels} ch) -> {args.out}"
    )
    return 0


def _cmd_decrypt(args) -> int:
    buffer = read_wav(args.in_path)
    key = load_key_file(args.key)
    plain = decrypt(buffer, key)
    # A wrong key produces unbounded noise; clamp so the PCM16 output still exists.
    clipped = np.clip(plain.samples, -1.0, 32767.0 / 32768.0)
    out = AudioBuffer(
        samples=clipped,
        sample_rate=plain.sample_rate,
        channels=plain.channels,
        original_len=plain.samples.size,
    )
    write_wav(out, args.out, mode="pcm16")
    print(f"decrypted {plain.samples.size} samples -> {args.out}")
    return 0


def _write_csv(path, header: tuple[str, str], rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def _cmd_analyze(args) -> int:
    buffer = read_wav(args.in_path)
    report = analyze_samples(
        buffer.samples,
        buffer.sample_rate,
        window_len=args.window,
        hop=args.hop,
    )

    doc = report_to_dict(report)
    doc.update(
        {
            "tool": "henoncrypt",
            "version": __version__,
            "input": str(args.in_path),
            "sample_rate": buffer.sample_rate,
            "channels": buffer.channels,
            "samples": int(buffer.samples.size),
        }
    )
    if args.ref is not None:
        ref = read_wav(args.ref)
        doc["ref"] = str(args.ref)
        doc["ref_correlation"] = cross_correlation(buffer.samples, ref.samples)

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w") as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

    stem = out.parent / out.stem
    entropy_csv = Path(f"{stem}_entropy.csv")
    psd_csv = Path(f"{stem}_psd.csv")
    scatter_csv = Path(f"{stem}_scatter.csv")
    _write_csv(
        entropy_csv,
        ("window_index", "entropy"),
        enumerate(float(v) for v in report.entropy_series),
    )
    _write_csv(
        psd_csv,
        ("frequency_hz", "power"),
        zip(report.psd_freqs, report.psd_power),
    )
    s = buffer.samples
    _write_csv(scatter_csv, ("sample_n", "sample_n_plus_1"), zip(s[:-1], s[1:]))

    plotting.save_waveform(
        s, buffer.sample_rate, f"{stem}_waveform.png", title=out.stem
    )
    plotting.save_power_spectrum(report.psd_freqs, report.psd_power, f"{stem}_psd.png")
    plotting.save_lag_scatter(s, f"{stem}_scatter.png")
    if report.entropy_series.size:
        plotting.save_entropy_series(report.entropy_series, f"{stem}_entropy.png")

    rho_text = "undefined" if report.rho is None else f"{report.rho:.4f}"
    entropy_text = (
        "undefined" if report.entropy_mean is None else f"{report.entropy_mean:.4f}"
    )
    print(f"rho={rho_text} entropy_mean={entropy_text}")
    print(f"report: {out}")
    print(f"csv: {entropy_csv} {psd_csv} {scatter_csv}")
    return 0


def _cmd_lyapunov(args) -> int:
    params = HenonParams(
        alpha=args.alpha, beta=args.beta, x0=args.x0, y0=args.y0, variant=args.variant
    )
    steps, lam1, lam2 = lyapunov_history(params, args.steps)
    l1, l2 = float(lam1[-1]), float(lam2[-1])
    if l1 < l2:
        l1, l2 = l2, l1
    print(f"lambda1={l1:.6f} lambda2={l2:.6f} (n={args.steps})")
    print("chaotic" if l1 > 0 else "not chaotic")

    if args.out is not None:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with open(out, "w") as fh:
            json.dump(
                {
                    "tool": "henoncrypt",
                    "version": __version__,
                    "alpha": args.alpha,
                    "beta": args.beta,
                    "x0": args.x0,
                    "y0": args.y0,
                    "variant": args.variant,
                    "steps": args.steps,
                    "lambda1": l1,
                    "lambda2": l2,
                },
                fh,
                indent=2,
            )
            fh.write("\n")
        fig_path = out.parent / f"{out.stem}_convergence.png"
        plotting.save_lyapunov_history(steps, lam1, lam2, fig_path)
        print(f"report: {out}")
    return 0


_COMMANDS = {
    "keygen": _cmd_keygen,
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "analyze": _cmd_analyze,
    "lyapunov": _cmd_lyapunov,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (WavFormatError, OrbitDivergenceError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())
