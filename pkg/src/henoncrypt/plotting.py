"""Figure rendering for the report paths. Uses the Agg backend only."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_waveform(samples, sample_rate: float, path, title: str = "waveform"):
    samples = np.asarray(samples)
    t = np.arange(samples.size) / sample_rate
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(t, samples, lw=0.5)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("amplitude")
    ax.set_title(title)
    _save(fig, path)


def save_power_spectrum(freqs, power, path, title: str = "power spectrum"):
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.semilogy(freqs, np.maximum(np.asarray(power), 1e-300), lw=0.6)
    ax.set_xlabel("frequency [Hz]")
    ax.set_ylabel("power / Hz")
    ax.set_title(title)
    _save(fig, path)


def save_lag_scatter(samples, path, title: str = "adjacent-sample scatter"):
    samples = np.asarray(samples)
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    ax.plot(samples[:-1], samples[1:], ",", alpha=0.5)
    ax.set_xlabel("sample n")
    ax.set_ylabel("sample n+1")
    ax.set_title(title)
    _save(fig, path)


def save_entropy_series(series, path, title: str = "spectral entropy per window"):
    series = np.asarray(series)
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(series, lw=1.0, marker=".")
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("window index")
    ax.set_ylabel("normalised entropy")
    ax.set_title(title)
    _save(fig, path)


def save_lyapunov_history(steps, lam1, lam2, path):
    fig, ax = plt.subplots(figsize=(8, 3))
    ax.plot(steps, lam1, label="lambda1")
    ax.plot(steps, lam2, label="lambda2")
    ax.axhline(0.0, color="gray", lw=0.5)
    ax.set_xlabel("iterations")
    ax.set_ylabel("running estimate")
    ax.set_title("Lyapunov exponent convergence")
    ax.legend()
    _save(fig, path)
