"""Inequality statement catalog.

Each statement builds a left and right side from a configuration (matrices,
band, means, maps, scalar functions, exponents) and compares them in the
Loewner order.  The catalog mixes statements that are theorems under their
hypotheses (expected to never fail a trial) with statements that are known
to fail for some parameters; the trial driver reports both honestly.

Trials are deterministic: trial ``i`` of a run seeded with ``s`` draws from
``numpy.random.default_rng([s, i])``, so any reported violation can be
reproduced from ``(statement_id, config, s, i)`` alone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from . import constants as _const
from .functions import (
    IDENTITY,
    ScalarFunction,
    increasing_on,
    is_operator_monotone,
    midpoint_concave,
)
from .kubo_ando import (
    ARITHMETIC,
    GEOMETRIC,
    MeanDescriptor,
    alm_mean,
    is_between_harmonic_arithmetic,
    mean,
)
from .linmaps import MapDescriptor, apply_map, identity_map, is_unital
from .symmat import (
    PD_FLOOR,
    SpectralBand,
    SymMatrix,
    apply_scalar,
    loewner_leq,
    random_spd,
    validate_band,
)

__all__ = [
    "StatementConfig",
    "StatementInfo",
    "Verdict",
    "TrialViolation",
    "TrialReport",
    "UnknownStatementError",
    "BandViolationError",
    "UnitalityError",
    "catalog",
    "statement_ids",
    "get_statement",
    "hypothesis_violations",
    "unitality_violations",
    "check",
    "run_trials",
]


class UnknownStatementError(KeyError):
    """No statement with the requested identifier."""


class BandViolationError(ValueError):
    """Input matrices have spectrum outside the configured band."""


class UnitalityError(ValueError):
    """A statement that requires unital maps was given a non-unital one."""


@dataclass(frozen=True)
class StatementConfig:
    """Everything a statement needs besides the matrices themselves."""

    statement_id: str
    band: SpectralBand = SpectralBand(1.0, 2.0)
    sigma: MeanDescriptor = GEOMETRIC
    tau: MeanDescriptor = GEOMETRIC
    phi: MapDescriptor = field(default_factory=identity_map)
    psi: MapDescriptor = field(default_factory=identity_map)
    f: ScalarFunction = IDENTITY
    g: ScalarFunction = IDENTITY
    p: float = 1.0
    q: float = 1.0
    dim: int = 2
    n_matrices: int = 3


@dataclass(frozen=True)
class Verdict:
    """Outcome of one statement evaluation."""

    statement_id: str
    holds: bool
    gap_min_eig: float
    gap_det: float
    lhs: SymMatrix
    rhs: SymMatrix
    constants_used: object
    tol: float


@dataclass(frozen=True)
class TrialViolation:
    trial_index: int
    matrices: tuple
    gap_min_eig: float
    gap_det: float


@dataclass(frozen=True)
class TrialReport:
    statement_id: str
    trials: int
    counted: int
    rejected: int
    violations: int
    worst_margin: float | None
    seed: int
    witnesses: tuple
    hypothesis_violations: tuple


@dataclass(frozen=True)
class StatementInfo:
    """Catalog entry: identifier, short description, input shape, builder."""

    statement_id: str
    summary: str
    multi: bool
    maps_used: tuple
    requires_unital: bool
    build: Callable


def _favg(mats):
    return SymMatrix(sum(m.data for m in mats) / len(mats))


def _scaled(c: float, m: SymMatrix) -> SymMatrix:
    return SymMatrix(c * m.data)


def _power(mat: SymMatrix, p: float) -> SymMatrix:
    return apply_scalar(mat, lambda t: t**p)


def _fn_power(mat: SymMatrix, fn: ScalarFunction, p: float) -> SymMatrix:
    return apply_scalar(mat, lambda t: fn(t) ** p)


def _require_positive(value: float, name: str):
    if not value > 0.0:
        raise ValueError(f"{name} must be positive, got {value!r}")


def _require_nonnegative(value: float, name: str):
    if value < 0.0:
        raise ValueError(f"{name} must be nonnegative, got {value!r}")


# Builders. Each returns (lhs, rhs, constants_used).

def _build_ando(cfg, mats):
    a, b = mats
    lhs = apply_map(cfg.phi, mean(cfg.sigma, a, b))
    rhs = mean(cfg.sigma, apply_map(cfg.phi, a), apply_map(cfg.phi, b))
    return lhs, rhs, None


def _build_ps11(cfg, mats):
    a, b = mats
    coeff = _const.polya_szego_coeff(cfg.band)
    lhs = mean(GEOMETRIC, apply_map(cfg.phi, a), apply_map(cfg.phi, b))
    rhs = _scaled(coeff, apply_map(cfg.phi, mean(GEOMETRIC, a, b)))
    return lhs, rhs, coeff


def _two_sided_cores(cfg, mats, variant):
    """Cores for the map-vs-mean order variants: 'outside' applies the map
    to each matrix and takes the mean of the images, 'inside' applies the
    map to the mean."""
    a, b = mats
    if variant[0] == "outside":
        left = mean(cfg.sigma, apply_map(cfg.phi, a), apply_map(cfg.phi, b))
    else:
        left = apply_map(cfg.phi, mean(cfg.sigma, a, b))
    if variant[1] == "outside":
        right = mean(cfg.tau, apply_map(cfg.psi, a), apply_map(cfg.psi, b))
    else:
        right = apply_map(cfg.psi, mean(cfg.tau, a, b))
    return left, right


def _build_t22(variant):
    def build(cfg, mats):
        left_core, right_core = _two_sided_cores(cfg, mats, variant)
        scalar = float(cfg.f(cfg.band.M)) * float(cfg.g(1.0 / cfg.band.m))
        lhs = apply_scalar(left_core, cfg.f)
        rhs = _scaled(scalar, apply_scalar(right_core, cfg.g))
        return lhs, rhs, scalar

    return build


def _build_c23(variant):
    def build(cfg, mats):
        _require_positive(cfg.p, "exponent p")
        left_core, right_core = _two_sided_cores(cfg, mats, variant)
        scalar = (float(cfg.f(cfg.band.M)) * float(cfg.g(1.0 / cfg.band.m))) ** cfg.p
        lhs = _fn_power(left_core, cfg.f, cfg.p)
        rhs = _scaled(scalar, _fn_power(right_core, cfg.g, cfg.p))
        return lhs, rhs, scalar

    return build


def _build_c_multi(cfg, mats):
    scalar = float(cfg.f(cfg.band.M)) * float(cfg.g(1.0 / cfg.band.m))
    lhs = apply_scalar(apply_map(cfg.phi, _favg(mats)), cfg.f)
    g_images = [apply_map(cfg.psi, m) for m in mats]
    rhs = _scaled(scalar, apply_scalar(alm_mean(g_images), cfg.g))
    return lhs, rhs, scalar


def _build_ragm(cfg, mats):
    coeff = cfg.band.ratio
    lhs = _favg(mats)
    rhs = _scaled(coeff, alm_mean(mats))
    return lhs, rhs, coeff


def _build_yamazaki(cfg, mats):
    coeff = _const.yamazaki_coeff(cfg.band, len(mats))
    lhs = _favg(mats)
    rhs = _scaled(coeff, alm_mean(mats))
    return lhs, rhs, coeff


def _build_c27(cfg, mats):
    _require_nonnegative(cfg.p, "exponent p")
    _require_nonnegative(cfg.q, "exponent q")
    a, b = mats
    scalar = cfg.band.M**cfg.p * cfg.band.m ** (-cfg.q)
    lhs = _power(mean(GEOMETRIC, apply_map(cfg.phi, a), apply_map(cfg.phi, b)), cfg.p)
    rhs = _scaled(scalar, _power(apply_map(cfg.psi, mean(GEOMETRIC, a, b)), cfg.q))
    return lhs, rhs, scalar


def _build_mond2(cfg, mats):
    a, b = mats
    alpha = _const.mp_alpha(cfg.sigma.h, cfg.band)
    lhs = mean(cfg.sigma, apply_map(cfg.phi, a), apply_map(cfg.phi, b))
    rhs = _scaled(alpha, apply_map(cfg.phi, mean(cfg.sigma, a, b)))
    return lhs, rhs, alpha


def _build_mp_gamma(cfg, mats):
    a, b = mats
    consts = _const.mp_gamma(cfg.f, cfg.g, cfg.sigma.h, cfg.band)
    lhs = apply_scalar(mean(cfg.sigma, apply_map(cfg.phi, a), apply_map(cfg.phi, b)), cfg.f)
    rhs = _scaled(consts.gamma, apply_scalar(apply_map(cfg.phi, mean(cfg.sigma, a, b)), cfg.g))
    return lhs, rhs, consts


def _build_hoa(cfg, mats):
    a, b = mats
    coeff = _const.kantorovich(cfg.band)
    lhs = mean(ARITHMETIC, apply_map(cfg.phi, a), apply_map(cfg.phi, b))
    rhs = _scaled(coeff, apply_map(cfg.phi, mean(cfg.sigma, a, b)))
    return lhs, rhs, coeff


def _build_t210(cfg, mats):
    a, b = mats
    coeff = _const.kantorovich(cfg.band)
    fa = apply_scalar(apply_map(cfg.phi, a), cfg.f)
    fb = apply_scalar(apply_map(cfg.phi, b), cfg.f)
    lhs = mean(cfg.tau, fa, fb)
    rhs = _scaled(coeff, apply_scalar(apply_map(cfg.phi, mean(cfg.sigma, a, b)), cfg.f))
    return lhs, rhs, coeff


def _build_q2(force_p=None):
    def build(cfg, mats):
        p = cfg.p if force_p is None else force_p
        _require_nonnegative(p, "exponent p")
        a, b = mats
        coeff = _const.kantorovich(cfg.band)
        lhs = _favg([_power(a, p), _power(b, p)])
        rhs = _scaled(coeff, _power(mean(GEOMETRIC, a, b), p))
        return lhs, rhs, coeff

    return build


def _build_big_q(cfg, mats):
    a, b = mats
    coeff = _const.kantorovich(cfg.band)
    lhs = _power(mean(ARITHMETIC, a, b), 2.0)
    rhs = _scaled(coeff, _power(mean(GEOMETRIC, a, b), 2.0))
    return lhs, rhs, coeff


def _build_aahh(cfg, mats):
    a, b = mats
    lhs = apply_scalar(mean(cfg.sigma, a, b), cfg.f)
    rhs = apply_scalar(mean(ARITHMETIC, a, b), cfg.f)
    return lhs, rhs, None


def _build_add_reverse(cfg, mats):
    a, b = mats
    lhs = apply_scalar(mean(ARITHMETIC, a, b), cfg.f)
    # A # B + |I - A^(-1/2) B A^(-1/2)| / 2 conjugated back by A^(1/2) is a
    # single spectral transform of C = A^(-1/2) B A^(-1/2).
    half = apply_scalar(a, np.sqrt)
    inv_half = apply_scalar(a, lambda t: 1.0 / np.sqrt(t), domain_min=PD_FLOOR)
    c = SymMatrix(inv_half.data @ b.data @ inv_half.data)
    core = apply_scalar(c, lambda t: np.sqrt(t) + 0.5 * np.abs(1.0 - t))
    corrected = SymMatrix(half.data @ core.data @ half.data)
    rhs = apply_scalar(corrected, cfg.f)
    return lhs, rhs, None


_CATALOG: dict = {}


def _register(statement_id, summary, build, multi=False, maps_used=(), requires_unital=False):
    _CATALOG[statement_id] = StatementInfo(
        statement_id=statement_id,
        summary=summary,
        multi=multi,
        maps_used=tuple(maps_used),
        requires_unital=requires_unital,
        build=build,
    )


_register(
    "ando",
    "positive maps are subadditive across operator means: Phi(A s B) <= Phi(A) s Phi(B)",
    _build_ando,
    maps_used=("phi",),
)
_register(
    "ps-1.1",
    "geometric-mean reverse: Phi(A) # Phi(B) <= ((M+m)/(2 sqrt(Mm))) Phi(A # B)",
    _build_ps11,
    maps_used=("phi",),
)
for _variant, _letter in (
    (("outside", "outside"), "a"),
    (("outside", "inside"), "b"),
    (("inside", "outside"), "c"),
    (("inside", "inside"), "d"),
):
    _register(
        f"t22-{_letter}",
        "two-function reverse f("
        + ("mean of images" if _variant[0] == "outside" else "image of mean")
        + ") <= f(M) g(1/m) g("
        + ("mean of images" if _variant[1] == "outside" else "image of mean")
        + ")",
        _build_t22(_variant),
        maps_used=("phi", "psi"),
        requires_unital=True,
    )
    _register(
        f"c23-{_letter}",
        "p-th power variant of the two-function reverse",
        _build_c23(_variant),
        maps_used=("phi", "psi"),
        requires_unital=True,
    )
_register(
    "c-multi",
    "multi-matrix reverse: f(Phi(avg)) <= f(M) g(1/m) g(geo-mean of Psi images)",
    _build_c_multi,
    multi=True,
    maps_used=("phi", "psi"),
    requires_unital=True,
)
_register(
    "ragm",
    "crude reverse arithmetic-geometric comparison with ratio M/m",
    _build_ragm,
    multi=True,
)
_register(
    "yamazaki",
    "reverse arithmetic-geometric comparison with coefficient K^((n-1)/2)",
    _build_yamazaki,
    multi=True,
)
_register(
    "c27",
    "power-exponent reverse (Phi(A) # Phi(B))^p <= M^p m^(-q) (Psi(A # B))^q",
    _build_c27,
    maps_used=("phi", "psi"),
    requires_unital=True,
)
_register(
    "mond2",
    "calibrated reverse Phi(A) s Phi(B) <= alpha Phi(A s B)",
    _build_mond2,
    maps_used=("phi",),
    requires_unital=True,
)
_register(
    "mp-gamma",
    "two-function calibrated reverse f(Phi(A) s Phi(B)) <= gamma g(Phi(A s B))",
    _build_mp_gamma,
    maps_used=("phi",),
    requires_unital=True,
)
_register(
    "hoa",
    "arithmetic mean of images vs K times image of an intermediate mean",
    _build_hoa,
    maps_used=("phi",),
    requires_unital=True,
)
_register(
    "t210",
    "f-image means: f(Phi(A)) t f(Phi(B)) <= K f(Phi(A s B))",
    _build_t210,
    maps_used=("phi",),
    requires_unital=True,
)
_register(
    "q2",
    "power comparison (A^p + B^p)/2 <= K (A # B)^p; a theorem only for p in [0, 1]",
    _build_q2(),
)
_register(
    "q2sq",
    "the p = 2 instance of q2, which fails for some inputs",
    _build_q2(force_p=2.0),
)
_register(
    "Q",
    "squared arithmetic vs Kantorovich-scaled squared geometric mean; fails for some inputs",
    _build_big_q,
)
_register(
    "aahh",
    "f of a smaller mean vs f of the arithmetic mean, for operator monotone f",
    _build_aahh,
)
_register(
    "add-reverse",
    "arithmetic mean vs geometric mean plus half the conjugated residual |I - C|",
    _build_add_reverse,
)


def catalog() -> tuple:
    """All statement descriptors, in registration order."""
    return tuple(_CATALOG.values())


def statement_ids() -> tuple:
    return tuple(_CATALOG.keys())


def get_statement(statement_id: str) -> StatementInfo:
    try:
        return _CATALOG[statement_id]
    except KeyError:
        known = ", ".join(_CATALOG)
        raise UnknownStatementError(
            f"unknown statement {statement_id!r}; known ids: {known}"
        ) from None


def _dominated_by_arithmetic(h, tol: float = 1e-12) -> bool:
    t = np.geomspace(1e-4, 1e4, 1000)
    with np.errstate(all="ignore"):
        vals = np.asarray(h(t), dtype=float)
    return bool(np.isfinite(vals).all() and (vals <= (1.0 + t) / 2.0 + tol).all())


def unitality_violations(cfg: StatementConfig) -> tuple:
    """Labels for non-unital maps in roles that require unitality."""
    info = get_statement(cfg.statement_id)
    if not info.requires_unital:
        return ()
    labels = []
    for role in info.maps_used:
        the_map = getattr(cfg, role)
        if not is_unital(the_map, dim=cfg.dim):
            labels.append(f"{role} ({the_map.describe()}) is not unital")
    return tuple(labels)


def hypothesis_violations(cfg: StatementConfig) -> tuple:
    """Labels for violated mathematical hypotheses of the statement.

    These are the conditions under which the statement is a theorem; a
    nonempty result means trials would be testing the statement outside its
    advertised scope.  Checks are sampled probes, not proofs.
    """
    info = get_statement(cfg.statement_id)
    sid = info.statement_id
    labels = []
    if sid == "mp-gamma":
        if not increasing_on(cfg.g, cfg.band.m, cfg.band.M):
            labels.append("g is not increasing on the band")
        if not midpoint_concave(cfg.g, cfg.band.m, cfg.band.M):
            labels.append("g is not concave on the band")
    elif sid == "hoa":
        if not is_between_harmonic_arithmetic(cfg.sigma.h):
            labels.append("sigma is not between the harmonic and arithmetic means")
    elif sid == "t210":
        if not is_operator_monotone(cfg.f):
            labels.append("f is not operator monotone")
        if not is_between_harmonic_arithmetic(cfg.sigma.h):
            labels.append("sigma is not between the harmonic and arithmetic means")
        if not is_between_harmonic_arithmetic(cfg.tau.h):
            labels.append("tau is not between the harmonic and arithmetic means")
    elif sid == "aahh":
        if not is_operator_monotone(cfg.f):
            labels.append("f is not operator monotone")
        if not _dominated_by_arithmetic(cfg.sigma.h):
            labels.append("sigma is not dominated by the arithmetic mean")
    elif sid == "add-reverse":
        if not is_operator_monotone(cfg.f):
            labels.append("f is not operator monotone")
    elif sid == "c-multi":
        if not is_operator_monotone(cfg.g):
            labels.append("g is not operator monotone")
    return tuple(labels)


def check(
    cfg: StatementConfig,
    matrices: Sequence[SymMatrix],
    tol: float | None = None,
    skip_band_check: bool = False,
    enforce_hypotheses: bool = True,
) -> Verdict:
    """Evaluate one statement on explicit matrices.

    Band membership is validated unless ``skip_band_check`` is set (the
    published witnesses need that: at four printed decimals their spectra
    drift outside the nominal bands).  With ``enforce_hypotheses`` the
    unitality requirements are errors; the falsifier disables that and
    records violated hypotheses on the witness instead.
    """
    info = get_statement(cfg.statement_id)
    mats = [m if isinstance(m, SymMatrix) else SymMatrix(m) for m in matrices]
    if info.multi:
        if len(mats) < 2:
            raise ValueError(f"statement {info.statement_id!r} needs at least two matrices")
    elif len(mats) != 2:
        raise ValueError(f"statement {info.statement_id!r} takes exactly two matrices")
    dim = mats[0].dim
    for m in mats[1:]:
        if m.dim != dim:
            raise ValueError("all input matrices must share one dimension")
    if not skip_band_check:
        report = validate_band(mats, cfg.band)
        if not report.passed:
            raise BandViolationError(report.offending_summary())
    if enforce_hypotheses:
        bad = unitality_violations(cfg)
        if bad:
            raise UnitalityError("; ".join(bad))
    lhs, rhs, consts = info.build(cfg, mats)
    verdict = loewner_leq(lhs, rhs, tol)
    return Verdict(
        statement_id=info.statement_id,
        holds=verdict.holds,
        gap_min_eig=verdict.gap_min_eig,
        gap_det=verdict.gap_det,
        lhs=lhs,
        rhs=rhs,
        constants_used=consts,
        tol=verdict.tol_used,
    )


def run_trials(cfg: StatementConfig, trials: int, seed: int) -> TrialReport:
    """Randomized verification: draw in-band matrices, evaluate, tally.

    Non-unital maps in unital roles raise; violated mathematical
    hypotheses reject every trial up front (the report says why) so a
    clean run always means the statement was tested inside its scope.
    Matrices are pinned to the band edges with probability one half each,
    which keeps the constants honest for roughly half the draws.
    """
    if trials < 0:
        raise ValueError("trial count must be nonnegative")
    if seed < 0:
        raise ValueError("seed must be nonnegative")
    info = get_statement(cfg.statement_id)
    bad_unital = unitality_violations(cfg)
    if bad_unital:
        raise UnitalityError("; ".join(bad_unital))
    hyp = hypothesis_violations(cfg)
    if hyp:
        return TrialReport(
            statement_id=info.statement_id,
            trials=trials,
            counted=0,
            rejected=trials,
            violations=0,
            worst_margin=None,
            seed=seed,
            witnesses=(),
            hypothesis_violations=hyp,
        )
    n_inputs = cfg.n_matrices if info.multi else 2
    if info.multi and n_inputs < 2:
        raise ValueError("n_matrices must be at least 2")
    violations = []
    worst = np.inf
    for i in range(trials):
        rng = np.random.default_rng([seed, i])
        mats = []
        for _ in range(n_inputs):
            pinned = bool(rng.random() < 0.5)
            mats.append(random_spd(cfg.dim, cfg.band, pinned=pinned, rng=rng))
        verdict = check(cfg, mats, skip_band_check=False, enforce_hypotheses=False)
        worst = min(worst, verdict.gap_min_eig)
        if not verdict.holds:
            violations.append(
                TrialViolation(
                    trial_index=i,
                    matrices=tuple(mats),
                    gap_min_eig=verdict.gap_min_eig,
                    gap_det=verdict.gap_det,
                )
            )
    return TrialReport(
        statement_id=info.statement_id,
        trials=trials,
        counted=trials,
        rejected=0,
        violations=len(violations),
        worst_margin=float(worst) if trials > 0 else None,
        seed=seed,
        witnesses=tuple(violations),
        hypothesis_violations=(),
    )
