"""Two-photon polarization Bell statistics and mode-rotation entropy.

Single-photon basis order is (H, V) -> indices (0, 1); the joint basis is
HH, HV, VH, VV.  A polarization analyzer at angle theta transmits

    |+> =  cos(theta)|H> + sin(theta)|V>
    |-> = -sin(theta)|H> + cos(theta)|V>

and in the rotated frame index 0 means the + port, index 1 the - port.
For the polarization-entangled pair (|HH> + |VV>)/sqrt(2) analyzed at
(theta_a, theta_b) the joint statistics depend only on theta_a - theta_b:

    P(+) = P(-) = 1/2 on each side
    P(++) = P(--) = cos^2(theta_a - theta_b)/2
    P(+-) = P(-+) = sin^2(theta_a - theta_b)/2
    E = cos(2(theta_a - theta_b))

The four-station CHSH arrangement spaces the analyzer angles in an
arithmetic sequence (a, b, a', b') = (0, t, 2t, 3t), which gives
S(t) = 3cos(2t) - cos(6t) with |S| peaking at 2*sqrt(2) near t = pi/8.

The mode-rotation scan applies the two-mode rotation

    a+ -> cos(phi) a+ + sin(phi) b+,   b+ -> -sin(phi) a+ + cos(phi) b+

to the two-photon state |1,1>, producing
cos(2phi)|1,1> + (sin(2phi)/sqrt(2))(|0,2> - |2,0>), whose mode-bipartition
entropy swings between 0 and log2(3) limits with plateaus at 1 and 1.5 bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from ._common import require_finite, scan_grid
from .results import ScanResult
from .states import (
    BasisLabel,
    PureState,
    apply_local_unitary,
    partial_trace,
    renyi_entropy,
    von_neumann_entropy,
)

__all__ = [
    "AnalyzerSettings",
    "ChshSettings",
    "epr_state",
    "analyzer_basis",
    "analyzer_matrix",
    "transformed_epr_state",
    "detection_probabilities",
    "correlation",
    "chsh_sum",
    "chsh_sum_general",
    "chsh_scan",
    "mode_rotation_state",
    "mode_rotation_entropy_scan",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AnalyzerSettings:
    """Analyzer angles (radians) for the two sides of a pair experiment."""

    theta_a: float
    theta_b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "theta_a", require_finite("theta_a", self.theta_a))
        object.__setattr__(self, "theta_b", require_finite("theta_b", self.theta_b))

    def wrapped(self) -> tuple[float, float]:
        """Angles reduced to [0, 2*pi), for reporting only."""
        return (self.theta_a % TWO_PI, self.theta_b % TWO_PI)


@dataclass(frozen=True)
class ChshSettings:
    """Base separation angle for the arithmetic four-station arrangement."""

    separation: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "separation", require_finite("separation", self.separation))

    def station_angles(self) -> tuple[float, float, float, float]:
        t = self.separation
        return (0.0, t, 2.0 * t, 3.0 * t)


def epr_state() -> PureState:
    """(|HH> + |VV>)/sqrt(2) over factors photon_A, photon_B."""
    basis = BasisLabel(("photon_A", "photon_B"), (2, 2))
    amps = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    return PureState(basis, amps)


def analyzer_basis(theta: float) -> tuple[PureState, PureState]:
    """Transmitted and rejected single-photon states of an analyzer at theta."""
    theta = require_finite("theta", theta)
    basis = BasisLabel(("photon",), (2,))
    plus = PureState(basis, np.array([math.cos(theta), math.sin(theta)]))
    minus = PureState(basis, np.array([-math.sin(theta), math.cos(theta)]))
    return plus, minus

def analyzer_matrix(theta: float) -> np.ndarray:
    """Change-of-basis matrix into the analyzer frame (rows are <+| and <-|)."""
    plus, minus = analyzer_basis(theta)
    return np.vstack([plus.amplitudes.conj(), minus.amplitudes.conj()])


def transformed_epr_state(settings: AnalyzerSettings) -> PureState:
    """The entangled pair re-expressed in both analyzer frames.

    Built by rotating each factor of epr_state() into its analyzer frame;
    the amplitudes collapse to the closed pattern
    (cos t, sin t, -sin t, cos t)/sqrt(2) with t = theta_a - theta_b.
    """
    state = epr_state()
    state = apply_local_unitary(state, "photon_A", analyzer_matrix(settings.theta_a))
    state = apply_local_unitary(state, "photon_B", analyzer_matrix(settings.theta_b))
    return state


def detection_probabilities(settings: AnalyzerSettings) -> dict[str, float]:
    """Single and joint port probabilities at the given analyzer angles.

    Keys: 'a+', 'a-', 'b+', 'b-' for singles and '++', '+-', '-+', '--'
    for joints.  Singles are marginals of the joints and the joints sum
    to one.
    """
    amps = transformed_epr_state(settings).amplitudes.reshape(2, 2)
    joint = np.abs(amps) ** 2
    probs = {
        "++": float(joint[0, 0]),
        "+-": float(joint[0, 1]),
        "-+": float(joint[1, 0]),
        "--": float(joint[1, 1]),
    }
    probs["a+"] = probs["++"] + probs["+-"]
    probs["a-"] = probs["-+"] + probs["--"]
    probs["b+"] = probs["++"] + probs["-+"]
    probs["b-"] = probs["+-"] + probs["--"]
    return probs


def correlation(settings: AnalyzerSettings) -> float:
    """E = P(++) + P(--) - P(+-) - P(-+); equals cos(2(theta_a - theta_b))."""
    p = detection_probabilities(settings)
    return p["++"] + p["--"] - p["+-"] - p["-+"]


def chsh_sum_general(
    theta_a: float, theta_b: float, theta_a2: float, theta_b2: float
) -> float:
    """S = E(a,b) - E(a,b') + E(a',b) + E(a',b') for four free angles."""
    return (
        correlation(AnalyzerSettings(theta_a, theta_b))
        - correlation(AnalyzerSettings(theta_a, theta_b2))
        + correlation(AnalyzerSettings(theta_a2, theta_b))
        + correlation(AnalyzerSettings(theta_a2, theta_b2))
    )


def chsh_sum(settings: ChshSettings) -> float:
    """CHSH sum of the arithmetic arrangement; closed form 3cos(2t) - cos(6t)."""
    a, b, a2, b2 = settings.station_angles()
    return chsh_sum_general(a, b, a2, b2)


def chsh_scan(theta_min: float, theta_max: float, steps: int) -> ScanResult:
    """Scan the CHSH sum and pair entropy over the separation angle.

    Columns: theta, S, entropy.  The entropy column is the one-photon
    entropy of the analyzed pair, recomputed at every angle.
    """
    grid = scan_grid("theta", theta_min, theta_max, steps)
    rows = []
    for theta in grid:
        s_value = chsh_sum(ChshSettings(theta))
        state = transformed_epr_state(AnalyzerSettings(theta, 0.0))
        entropy = von_neumann_entropy(partial_trace(state, "photon_A"))
        rows.append((float(theta), s_value, entropy))
    return ScanResult("theta", ("theta", "S", "entropy"), tuple(rows))


# Ladder operators on a 3-level mode; photon number is conserved by the
# rotation, so occupations 0..2 hold the full two-photon sector exactly.
_MODE_LEVELS = 3


def _two_mode_rotation(phi: float) -> np.ndarray:
    lower = np.diag(np.sqrt(np.arange(1, _MODE_LEVELS)), k=1)
    eye = np.eye(_MODE_LEVELS)
    a = np.kron(lower, eye)
    b = np.kron(eye, lower)
    generator = a @ b.conj().T - a.conj().T @ b
    return expm(phi * generator)


def mode_rotation_state(phi: float) -> PureState:
    """Two-mode rotation of |1,1> by phi over factors mode_a, mode_b."""
    phi = require_finite("phi", phi)
    basis = BasisLabel(("mode_a", "mode_b"), (_MODE_LEVELS, _MODE_LEVELS))
    start = np.zeros(basis.dim)
    start[1 * _MODE_LEVELS + 1] = 1.0
    return PureState(basis, _two_mode_rotation(phi) @ start)


def mode_rotation_entropy_scan(phi_min: float, phi_max: float, steps: int) -> ScanResult:
    """Mode-bipartition entropy of the rotated |1,1> state over phi.

    Columns: phi, entropy_vn, entropy_renyi2.  Both entropies share zeros
    and maxima; the von Neumann column hits 1.0 at phi = pi/4 and peaks
    at 1.5 bits at phi = pi/8.
    """
    grid = scan_grid("phi", phi_min, phi_max, steps)
    rows = []
    for phi in grid:
        rho = partial_trace(mode_rotation_state(phi), "mode_a")
        rows.append((float(phi), von_neumann_entropy(rho), renyi_entropy(rho, 2.0)))
    return ScanResult("phi", ("phi", "entropy_vn", "entropy_renyi2"), tuple(rows))
