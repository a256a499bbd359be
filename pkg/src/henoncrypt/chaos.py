"""Henon map iteration and Lyapunov-spectrum estimation.

The map is

    x[n+1] = 1 - alpha * x[n]**2 + y[n]
    y[n+1] = beta * x[n]            (standard)
    y[n+1] = beta * y[n]            (decoupled)

The standard variant is the default entropy source: at alpha=1.4, beta=0.3 it
has one positive and one negative Lyapunov exponent. In the decoupled variant
the second component shrinks geometrically for beta < 1 and the x-dynamics
collapse to a one-dimensional quadratic map, which is periodic rather than
chaotic at alpha=1.4; it is kept for comparison experiments only.

Lyapunov exponents are computed by evolving two tangent vectors alongside the
orbit with Gram-Schmidt re-orthonormalisation every step. The Jacobian is
rows (-2*alpha*x, 1), (beta, 0) for the standard variant and
(-2*alpha*x, 1), (0, beta) for the decoupled one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

VARIANTS = ("standard", "decoupled")

#: Orbit values beyond this magnitude are treated as escaping to infinity.
DIVERGENCE_LIMIT = 1e6

#: Orbit steps discarded before Lyapunov accumulation starts.
LYAPUNOV_BURN_IN = 1000


class OrbitDivergenceError(RuntimeError):
    """The orbit escaped the divergence guard; carries the failing step."""

    def __init__(self, step: int, value: float):
        super().__init__(
            f"orbit diverged at step {step} (|state| = {abs(value):.3g}); "
            "the parameters do not produce a bounded orbit"
        )
        self.step = step


@dataclass(frozen=True)
class HenonParams:
    alpha: float
    beta: float
    x0: float
    y0: float
    variant: str = "standard"

    def __post_init__(self):
        for name in ("alpha", "beta", "x0", "y0"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        # beta = 0 is allowed: it degenerates to the 1-D quadratic map.
        if self.beta < 0:
            raise ValueError(f"beta must be non-negative, got {self.beta}")
        if self.variant not in VARIANTS:
            raise ValueError(
                f"unknown variant {self.variant!r} (choose from {VARIANTS})"
            )


@dataclass(frozen=True)
class Orbit:
    """Post-burn-in trajectory of the map, in iteration order."""

    xs: np.ndarray
    ys: np.ndarray
    burn_in: int


def _step(params: HenonParams):
    alpha, beta = params.alpha, params.beta
    if params.variant == "standard":
        def advance(x, y):
            return 1.0 - alpha * x * x + y, beta * x
    else:
        def advance(x, y):
            return 1.0 - alpha * x * x + y, beta * y
    return advance


def iterate_henon(params: HenonParams, n: int, burn_in: int = 0) -> Orbit:
    """Iterate the map burn_in + n times and return the last n states.

    The returned states start at the first post-burn-in iterate (the initial
    condition itself is never included). Deterministic under IEEE double
    round-to-nearest arithmetic: identical inputs give bit-identical orbits.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if burn_in < 0:
        raise ValueError(f"burn_in must be >= 0, got {burn_in}")

    advance = _step(params)
    xs = np.empty(n, dtype=np.float64)
    ys = np.empty(n, dtype=np.float64)
    x, y = params.x0, params.y0
    limit = DIVERGENCE_LIMIT
    for k in range(burn_in + n):
        x, y = advance(x, y)
        if abs(x) > limit or abs(y) > limit:
            raise OrbitDivergenceError(step=k + 1, value=x if abs(x) > limit else y)
        j = k - burn_in
        if j >= 0:
            xs[j] = x
            ys[j] = y
    return Orbit(xs=xs, ys=ys, burn_in=burn_in)


def _jacobian_entries(params: HenonParams):
    # j11 depends on x and is filled per step; the rest is constant.
    if params.variant == "standard":
        return params.beta, 0.0
    return 0.0, params.beta


def _tangent_evolution(params: HenonParams, n: int, stride: int = 0):
    """Shared Benettin loop; yields (step, sum1, sum2) every ``stride`` steps."""
    advance = _step(params)
    alpha = params.alpha
    j21, j22 = _jacobian_entries(params)

    x, y = params.x0, params.y0
    limit = DIVERGENCE_LIMIT
    for k in range(LYAPUNOV_BURN_IN):
        x, y = advance(x, y)
        if abs(x) > limit or abs(y) > limit:
            raise OrbitDivergenceError(step=k + 1, value=x if abs(x) > limit else y)

    v11, v12 = 1.0, 0.0
    v21, v22 = 0.0, 1.0
    s1 = 0.0
    s2 = 0.0
    log = math.log
    hypot = math.hypot
    for k in range(1, n + 1):
        j11 = -2.0 * alpha * x
        x, y = advance(x, y)
        if abs(x) > limit or abs(y) > limit:
            raise OrbitDivergenceError(step=k, value=x if abs(x) > limit else y)
        # tangent vectors through the Jacobian, then Gram-Schmidt
        w11 = j11 * v11 + v12
        w12 = j21 * v11 + j22 * v12
        w21 = j11 * v21 + v22
        w22 = j21 * v21 + j22 * v22
        n1 = hypot(w11, w12)
        v11, v12 = w11 / n1, w12 / n1
        proj = w21 * v11 + w22 * v12
        u1, u2 = w21 - proj * v11, w22 - proj * v12
        n2 = hypot(u1, u2)
        v21, v22 = u1 / n2, u2 / n2
        s1 += log(n1)
        s2 += log(n2)
        if stride and (k % stride == 0 or k == n):
            yield k, s1, s2
    if not stride:
        yield n, s1, s2


def lyapunov_exponents(params: HenonParams, n: int) -> tuple[float, float]:
    """Estimate both Lyapunov exponents over ``n`` steps, sorted descending.

    n >= 10**4 is recommended for a stable estimate; n below 100 is rejected.
    """
    if n < 100:
        raise ValueError(f"n too small for a Lyapunov estimate: {n} < 100")
    (_, s1, s2), = _tangent_evolution(params, n)
    l1, l2 = s1 / n, s2 / n
    return (l1, l2) if l1 >= l2 else (l2, l1)


def lyapunov_history(
    params: HenonParams, n: int, stride: int = 1000
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Running exponent estimates every ``stride`` steps, for convergence plots."""
    if n < 100:
        raise ValueError(f"n too small for a Lyapunov estimate: {n} < 100")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    steps, lam1, lam2 = [], [], []
    for k, s1, s2 in _tangent_evolution(params, n, stride=stride):
        steps.append(k)
        lam1.append(s1 / k)
        lam2.append(s2 / k)
    return np.array(steps), np.array(lam1), np.array(lam2)
