"""Scalar function catalog used on the two sides of inequality statements.

The catalog covers the identity, powers ``t**p``, scaled powers
``c * t**p``, ``exp(t) - 1``, and user-supplied callables.  Alongside the
catalog live the numeric hypothesis probes: operator monotonicity (sampled
on random ordered 2x2 pairs, a heuristic rather than a proof), midpoint
concavity, and monotone increase on an interval.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .symmat import SymMatrix, apply_scalar, loewner_leq, random_spd, SpectralBand

__all__ = [
    "ScalarFunction",
    "IDENTITY",
    "EXP_MINUS_ONE",
    "power_function",
    "scaled_power_function",
    "custom_scalar",
    "is_operator_monotone",
    "midpoint_concave",
    "increasing_on",
]


@dataclass(frozen=True)
class ScalarFunction:
    """A nonnegative scalar function on ``[0, inf)``, vectorized over arrays."""

    kind: str
    power: float = 1.0
    coeff: float = 1.0
    handle: Callable | None = None
    label: str = ""

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "identity":
            return t
        if self.kind == "power":
            return t**self.power
        if self.kind == "scaled-power":
            return self.coeff * t**self.power
        if self.kind == "exp-minus-one":
            return np.expm1(t)
        return np.asarray(self.handle(t), dtype=float)

    @property
    def name(self) -> str:
        if self.label:
            return self.label
        if self.kind == "identity":
            return "identity"
        if self.kind == "power":
            return f"power:{self.power:g}"
        if self.kind == "scaled-power":
            return f"spower:{self.coeff:g},{self.power:g}"
        if self.kind == "exp-minus-one":
            return "expm1"
        return "custom"


IDENTITY = ScalarFunction(kind="identity")
EXP_MINUS_ONE = ScalarFunction(kind="exp-minus-one")


def power_function(p: float) -> ScalarFunction:
    """The power ``t -> t**p`` for real ``p >= 0``."""
    p = float(p)
    if p < 0:
        raise ValueError("power must be nonnegative to map [0, inf) into itself")
    return ScalarFunction(kind="power", power=p)


def scaled_power_function(c: float, p: float) -> ScalarFunction:
    """The scaled power ``t -> c * t**p`` with ``c > 0`` and ``p >= 0``."""
    c, p = float(c), float(p)
    if c <= 0:
        raise ValueError("coefficient must be positive")
    if p < 0:
        raise ValueError("power must be nonnegative")
    return ScalarFunction(kind="scaled-power", power=p, coeff=c)


def custom_scalar(name: str, handle: Callable, check_interval=(1e-6, 1e3)) -> ScalarFunction:
    """Wrap a user callable after a sampled sanity check.

    The handle must be nonnegative and monotone nondecreasing on the check
    interval; a sampled grid violation raises ``ValueError``.
    """
    lo, hi = check_interval
    grid = np.geomspace(lo, hi, 257)
    vals = np.asarray(handle(grid), dtype=float)
    if vals.shape != grid.shape:
        raise ValueError("custom scalar function must be vectorized elementwise")
    if not np.isfinite(vals).all():
        raise ValueError("custom scalar function produced non-finite values on the sample grid")
    if (vals < -1e-12).any():
        raise ValueError("custom scalar function must be nonnegative on [0, inf)")
    if (np.diff(vals) < -1e-10 * (1.0 + np.abs(vals[:-1]))).any():
        raise ValueError("custom scalar function must be monotone nondecreasing")
    return ScalarFunction(kind="custom", handle=handle, label=name)


def is_operator_monotone(fn: ScalarFunction, trials: int = 120, seed: int = 7) -> bool:
    """Whether ``fn`` preserves the Loewner order.

    Catalog kinds are classified exactly (powers are operator monotone iff
    ``0 <= p <= 1``).  Custom handles are probed on random ordered 2x2
    pairs; the probe can only refute, so a True answer for a custom handle
    is heuristic.
    """
    if fn.kind == "identity":
        return True
    if fn.kind in ("power", "scaled-power"):
        return 0.0 <= fn.power <= 1.0
    if fn.kind == "exp-minus-one":
        return False
    rng = np.random.default_rng(seed)
    band = SpectralBand(0.05, 20.0)
    for _ in range(trials):
        a = random_spd(2, band, rng=rng)
        bump = rng.standard_normal((2, 2))
        b = SymMatrix(a.data + bump @ bump.T * rng.uniform(0.01, 2.0))
        fa = apply_scalar(a, fn)
        fb = apply_scalar(b, fn)
        if not loewner_leq(fa, fb).holds:
            return False
    return True


def midpoint_concave(
    fn: Callable,
    a: float,
    b: float,
    samples: int = 1000,
    seed: int = 11,
    tol: float = 1e-10,
) -> bool:
    """Sampled midpoint concavity of ``fn`` on ``[a, b]``.

    Draws ``samples`` pairs ``(x, y)`` and checks
    ``fn((x + y) / 2) >= (fn(x) + fn(y)) / 2 - tol``.  Numeric and
    refutation-only, like the other probes.
    """
    rng = np.random.default_rng(seed)
    x = rng.uniform(a, b, size=samples)
    y = rng.uniform(a, b, size=samples)
    mid = np.asarray(fn((x + y) / 2.0), dtype=float)
    avg = (np.asarray(fn(x), dtype=float) + np.asarray(fn(y), dtype=float)) / 2.0
    scale = 1.0 + np.maximum(np.abs(mid), np.abs(avg))
    return bool((mid >= avg - tol * scale).all())


def increasing_on(fn: Callable, a: float, b: float, samples: int = 1000, tol: float = 1e-10) -> bool:
    """Sampled monotone increase of ``fn`` on ``[a, b]`` (nondecreasing)."""
    grid = np.linspace(a, b, samples)
    vals = np.asarray(fn(grid), dtype=float)
    return bool((np.diff(vals) >= -tol * (1.0 + np.abs(vals[:-1]))).all())
