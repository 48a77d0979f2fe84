"""Known violation instances for the falsifiable catalog statements.

The matrices are stored to the four decimal places at which they were
published.  At that precision their spectra drift slightly outside the
nominal bands (reproduce them with the band check skipped); the violations
themselves are robust and the reference gap determinants are reproduced to
the tolerances recorded here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .symmat import SpectralBand, SymMatrix

__all__ = ["KnownWitness", "KNOWN_WITNESSES", "YAMAZAKI_SHARPNESS_BAND", "YAMAZAKI_SHARPNESS_N"]


@dataclass(frozen=True)
class KnownWitness:
    """A published violating pair with its nominal band and reference gap."""

    statement_id: str
    matrices: tuple
    band: SpectralBand
    p: float | None
    reference_det: float
    det_tolerance: float


_SQUARED_PAIR = (
    SymMatrix([[0.0688, -0.1082], [-0.1082, 0.1998]]),
    SymMatrix([[0.7489, 0.1237], [0.1237, 0.4212]]),
)

_POWER_TWO_PAIR = (
    SymMatrix([[1.3096, 0.4414], [0.4414, 0.6204]]),
    SymMatrix([[0.7062, 1.1641], [1.1641, 2.1050]]),
)


KNOWN_WITNESSES = {
    "Q": KnownWitness(
        statement_id="Q",
        matrices=_SQUARED_PAIR,
        band=SpectralBand(1.0, 2.0),
        p=None,
        reference_det=-0.0014,
        det_tolerance=2e-3,
    ),
    "q2sq": KnownWitness(
        statement_id="q2sq",
        matrices=_POWER_TWO_PAIR,
        band=SpectralBand(0.4, 3.0),
        p=None,
        reference_det=-0.4111,
        det_tolerance=5e-3,
    ),
    "q2": KnownWitness(
        statement_id="q2",
        matrices=_POWER_TWO_PAIR,
        band=SpectralBand(0.4, 3.0),
        p=2.0,
        reference_det=-0.4111,
        det_tolerance=5e-3,
    ),
}

#: Band and matrix count at which the multi-matrix reverse constant stays a
#: strict overestimate: the coefficient is (9/8)^2 = 1.265625 against the
#: crude ratio bound M/m = 2.
YAMAZAKI_SHARPNESS_BAND = SpectralBand(1.0, 2.0)
YAMAZAKI_SHARPNESS_N = 5
