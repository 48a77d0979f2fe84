"""Dense real symmetric matrix core.

Everything downstream (operator means, positive linear maps, inequality
checks) reduces to the functional calculus of real symmetric matrices:
eigendecompose, transform the spectrum, reassemble.  This module owns the
value types, the Loewner order check, spectral bands, and seeded random
generation of positive definite matrices with a prescribed spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "PD_FLOOR",
    "SymMatrix",
    "EigenDecomposition",
    "SpectralBand",
    "OrderVerdict",
    "BandCheck",
    "BandReport",
    "DimensionMismatchError",
    "SpectrumDomainError",
    "NotPositiveDefiniteError",
    "EigenConvergenceError",
    "eig_sym",
    "apply_scalar",
    "congruence",
    "loewner_leq",
    "spectral_band_of",
    "validate_band",
    "random_spd",
    "op_norm",
]

#: Eigenvalues at or below this floor are treated as zero by operations that
#: need a strictly positive spectrum (inverse powers, geometric conjugation).
PD_FLOOR = 1e-13


class DimensionMismatchError(ValueError):
    """Operands have incompatible shapes."""


class SpectrumDomainError(ValueError):
    """A scalar function was evaluated outside its domain on some eigenvalue."""


class NotPositiveDefiniteError(ValueError):
    """A strictly positive definite input was required."""


class EigenConvergenceError(RuntimeError):
    """The symmetric eigensolver failed to converge."""


class SymMatrix:
    """A dense real symmetric matrix.

    The stored array is exactly ``(E + E.T) / 2`` for the entries ``E``
    passed in, so ``data[i, j] == data[j, i]`` holds bitwise.  The backing
    array is marked read-only; treat instances as immutable values.
    """

    __slots__ = ("data",)

    def __init__(self, entries) -> None:
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatchError(f"expected a square matrix, got shape {a.shape}")
        if a.shape[0] < 1:
            raise DimensionMismatchError("dimension must be at least 1")
        if not np.isfinite(a).all():
            raise ValueError("matrix entries must be finite")
        data = (a + a.T) / 2.0
        data.setflags(write=False)
        self.data = data

    @classmethod
    def identity(cls, dim: int) -> "SymMatrix":
        return cls(np.eye(dim))

    @classmethod
    def diagonal(cls, values) -> "SymMatrix":
        return cls(np.diag(np.asarray(values, dtype=float)))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def __array__(self, dtype=None, copy=None):
        arr = np.asarray(self.data, dtype=dtype)
        if copy:
            return arr.copy()
        return arr

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"SymMatrix({self.data.tolist()!r})"


@dataclass(frozen=True, eq=False)
class EigenDecomposition:
    """Spectral decomposition ``A = Q diag(w) Q^T`` with ``w`` ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


@dataclass(frozen=True)
class SpectralBand:
    """A closed positive interval ``[m, M]`` with ``0 < m <= M``."""

    m: float
    M: float

    def __post_init__(self):
        m, M = float(self.m), float(self.M)
        if not (np.isfinite(m) and np.isfinite(M)):
            raise ValueError("band endpoints must be finite")
        if not 0.0 < m <= M:
            raise ValueError(f"band requires 0 < m <= M, got m={m!r}, M={M!r}")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "M", M)

    @property
    def ratio(self) -> float:
        """Condition ratio ``M / m``."""
        return self.M / self.m


@dataclass(frozen=True)
class OrderVerdict:
    """Result of a Loewner order comparison ``A <= B``.

    ``gap_min_eig`` is the smallest eigenvalue of ``B - A`` and ``gap_det``
    its determinant; ``holds`` means ``gap_min_eig >= -tol_used``.
    """

    holds: bool
    gap_min_eig: float
    gap_det: float
    tol_used: float


@dataclass(frozen=True, eq=False)
class BandCheck:
    """Band membership result for one matrix."""

    index: int
    ok: bool
    eigenvalues: np.ndarray
    offending: np.ndarray


@dataclass(frozen=True)
class BandReport:
    band: SpectralBand
    tol: float
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def offending_summary(self) -> str:
        parts = []
        for c in self.checks:
            if not c.ok:
                vals = ", ".join(f"{v:.6g}" for v in c.offending)
                parts.append(f"matrix {c.index}: eigenvalues [{vals}] outside band")
        return "; ".join(parts) if parts else "all matrices inside band"


def eig_sym(a: SymMatrix) -> EigenDecomposition:
    """Eigendecomposition of a symmetric matrix, eigenvalues ascending.

    Backed by the LAPACK symmetric solver.  A convergence failure (rare,
    pathological inputs only) raises :class:`EigenConvergenceError` carrying
    the off-diagonal residual of the input.
    """
    try:
        w, q = np.linalg.eigh(a.data)
    except np.linalg.LinAlgError as exc:
        off = a.data - np.diag(np.diagonal(a.data))
        raise EigenConvergenceError(
            "symmetric eigensolver did not converge "
            f"(off-diagonal Frobenius norm {np.linalg.norm(off):.3e})"
        ) from exc
    return EigenDecomposition(eigenvalues=w, eigenvectors=q)


def apply_scalar(
    a: SymMatrix,
    f: Callable[[np.ndarray], np.ndarray],
    domain_min: float | None = None,
) -> SymMatrix:
    """Apply a scalar function to ``a`` through its spectral decomposition.

    Returns ``Q f(w) Q^T`` where ``A = Q diag(w) Q^T``.  ``f`` must accept a
    1-d array of eigenvalues and map it elementwise.

    ``domain_min`` guards functions that are undefined at or below a
    spectrum floor (inverse powers, logarithms): any eigenvalue at or below
    it raises :class:`SpectrumDomainError` naming the offending eigenvalue.
    Non-finite outputs of ``f`` raise the same error.
    """
    dec = eig_sym(a)
    w = dec.eigenvalues
    if domain_min is not None and w[0] <= domain_min:
        raise SpectrumDomainError(
            f"eigenvalue {w[0]:.6e} is at or below the domain floor {domain_min:.3e}"
        )
    with np.errstate(all="ignore"):
        fw = np.asarray(f(w), dtype=float)
    if fw.shape != w.shape:
        raise SpectrumDomainError("scalar function must map eigenvalues elementwise")
    if not np.isfinite(fw).all():
        bad = w[~np.isfinite(fw)][0]
        raise SpectrumDomainError(f"scalar function is undefined at eigenvalue {bad!r}")
    q = dec.eigenvectors
    return SymMatrix((q * fw) @ q.T)


def congruence(a: SymMatrix, t) -> SymMatrix:
    """Congruence transform ``T^T A T`` for a real matrix ``T``.

    ``T`` may be rectangular with ``a.dim`` rows; the result is square with
    side ``T.shape[1]``.
    """
    t = np.asarray(t, dtype=float)
    if t.ndim != 2 or t.shape[0] != a.dim:
        raise DimensionMismatchError(
            f"congruence frame must have {a.dim} rows, got shape {t.shape}"
        )
    return SymMatrix(t.T @ a.data @ t)


def op_norm(a: SymMatrix) -> float:
    """Operator (spectral) norm: the largest absolute eigenvalue."""
    w = np.linalg.eigvalsh(a.data)
    return float(max(abs(w[0]), abs(w[-1])))


def loewner_leq(a: SymMatrix, b: SymMatrix, tol: float | None = None) -> OrderVerdict:
    """Check ``a <= b`` in the Loewner (positive semidefinite) order.

    The comparison is ``lambda_min(b - a) >= -tol``.  When ``tol`` is not
    given it defaults to ``1e-9 * (1 + max(op_norm(a), op_norm(b)))``, an
    absolute-plus-relative guard against eigensolver roundoff.
    """
    if a.dim != b.dim:
        raise DimensionMismatchError(f"dimension mismatch: {a.dim} vs {b.dim}")
    gap = b.data - a.data
    w = np.linalg.eigvalsh(gap)
    if tol is None:
        tol = 1e-9 * (1.0 + max(op_norm(a), op_norm(b)))
    return OrderVerdict(
        holds=bool(w[0] >= -tol),
        gap_min_eig=float(w[0]),
        gap_det=float(np.prod(w)),
        tol_used=float(tol),
    )


def spectral_band_of(mats: Sequence[SymMatrix]) -> SpectralBand:
    """Tightest common band ``[min lambda_min, max lambda_max]`` of ``mats``.

    All matrices must be strictly positive definite.
    """
    mats = list(mats)
    if not mats:
        raise ValueError("need at least one matrix")
    lo = np.inf
    hi = -np.inf
    for i, a in enumerate(mats):
        w = np.linalg.eigvalsh(a.data)
        if w[0] <= 0.0:
            raise NotPositiveDefiniteError(
                f"matrix {i} has eigenvalue {w[0]:.6e} <= 0"
            )
        lo = min(lo, w[0])
        hi = max(hi, w[-1])
    return SpectralBand(lo, hi)


def validate_band(
    mats: Sequence[SymMatrix],
    band: SpectralBand,
    tol: float | None = None,
) -> BandReport:
    """Check that every eigenvalue of every matrix lies in ``[m, M]``.

    Membership is tested against ``[m - tol, M + tol]``; the default ``tol``
    is ``1e-9 * (1 + M)``.  The report lists offending eigenvalues per
    matrix rather than failing fast.
    """
    if tol is None:
        tol = 1e-9 * (1.0 + band.M)
    checks = []
    for i, a in enumerate(mats):
        w = np.linalg.eigvalsh(a.data)
        bad = w[(w < band.m - tol) | (w > band.M + tol)]
        checks.append(BandCheck(index=i, ok=bad.size == 0, eigenvalues=w, offending=bad))
    return BandReport(band=band, tol=float(tol), checks=tuple(checks))


def _as_generator(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def random_spd(
    dim: int,
    band: SpectralBand,
    pinned: bool = False,
    rng=None,
) -> SymMatrix:
    """Random positive definite matrix with spectrum inside ``band``.

    Draws eigenvalues uniformly on ``[m, M]`` and conjugates by a Haar
    orthogonal matrix (QR of a Gaussian matrix with the sign convention
    fixed, so the draw is deterministic given the generator state).  With
    ``pinned=True`` the extreme eigenvalues are set to ``m`` and ``M``
    exactly, which makes the band tight for this matrix.

    ``rng`` may be a ``numpy.random.Generator``, an integer seed, or None.
    """
    if dim < 1:
        raise DimensionMismatchError("dimension must be at least 1")
    gen = _as_generator(rng)
    w = gen.uniform(band.m, band.M, size=dim)
    if pinned:
        w.sort()
        w[0] = band.m
        w[-1] = band.M
    g = gen.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    signs = np.where(np.diagonal(r) >= 0.0, 1.0, -1.0)
    q = q * signs
    return SymMatrix((q * w) @ q.T)
