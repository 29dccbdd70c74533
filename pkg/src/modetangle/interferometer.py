"""Four-momentum-mode atom interferometer with Bragg mirrors and splitters.

A pair of counter-propagating atoms enters in the momentum superposition
(|p,-p> + |p',-p'>)/sqrt(2).  Each side passes a mirror-and-splitter
sequence whose adjustable phase is phi_a (side A) or phi_b (side B).
With d = phi_a - phi_b the output amplitudes over the exit ports are

    c(A+,B+) = -i e^{+i phi_b} (e^{+i d} + 1) / (2 sqrt(2))
    c(A+,B-) =                 (e^{+i d} - 1) / (2 sqrt(2))
    c(A-,B+) =                 (e^{-i d} - 1) / (2 sqrt(2))
    c(A-,B-) = -i e^{-i phi_b} (e^{-i d} + 1) / (2 sqrt(2))

so the joint click probabilities are (1 +- cos d)/4 and the two-station
correlation is E = cos(phi_a - phi_b).  Writing the half-difference as t
(phi step 2t per station) reproduces the Bell curve S(t) = 3cos(2t) - cos(6t).
Port index 0 is the + exit, index 1 the - exit on each station.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._common import require_finite, scan_grid
from .results import ScanResult
from .states import BasisLabel, PureState, partial_trace, von_neumann_entropy

__all__ = [
    "BraggPhases",
    "MomentumLabels",
    "interferometer_input",
    "bragg_output",
    "joint_probabilities",
    "momentum_correlation",
    "momentum_chsh_scan",
]


@dataclass(frozen=True)
class BraggPhases:
    """Adjustable mirror phases (radians) on the two interferometer sides."""

    phi_a: float
    phi_b: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "phi_a", require_finite("phi_a", self.phi_a))
        object.__setattr__(self, "phi_b", require_finite("phi_b", self.phi_b))

    @property
    def difference(self) -> float:
        return self.phi_a - self.phi_b


@dataclass(frozen=True)
class MomentumLabels:
    """Names for the two input momenta and the four exit ports."""

    p: str = "p"
    p_prime: str = "p_prime"
    outputs: tuple[str, str, str, str] = ("A+", "A-", "B+", "B-")

    def __post_init__(self) -> None:
        outputs = tuple(self.outputs)
        object.__setattr__(self, "outputs", outputs)
        if not self.p or not self.p_prime or self.p == self.p_prime:
            raise ValueError("input momentum labels must be distinct and non-empty")
        if len(outputs) != 4 or len(set(outputs)) != 4:
            raise ValueError("exactly four distinct output labels are required")


def interferometer_input() -> PureState:
    """(|p,-p> + |p',-p'>)/sqrt(2) over factors atom_1, atom_2."""
    basis = BasisLabel(("atom_1", "atom_2"), (2, 2))
    amps = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
    return PureState(basis, amps)


def bragg_output(phases: BraggPhases) -> PureState:
    """Exit-port state over factors station_A, station_B (ports +,- each)."""
    d = phases.difference
    phase_b = np.exp(1j * phases.phi_b)
    scale = 1.0 / (2.0 * math.sqrt(2.0))
    amps = scale * np.array(
        [
            -1j * phase_b * (np.exp(1j * d) + 1.0),
            np.exp(1j * d) - 1.0,
            np.exp(-1j * d) - 1.0,
            -1j * np.conj(phase_b) * (np.exp(-1j * d) + 1.0),
        ]
    )
    return PureState(BasisLabel(("station_A", "station_B"), (2, 2)), amps)


def joint_probabilities(phases: BraggPhases) -> dict[str, float]:
    """Click probabilities for the four port pairs; they sum to one."""
    joint = np.abs(bragg_output(phases).amplitudes.reshape(2, 2)) ** 2
    return {
        "A+B+": float(joint[0, 0]),
        "A+B-": float(joint[0, 1]),
        "A-B+": float(joint[1, 0]),
        "A-B-": float(joint[1, 1]),
    }


def momentum_correlation(phases: BraggPhases) -> float:
    """E = P(A+B+) + P(A-B-) - P(A+B-) - P(A-B+); equals cos(phi_a - phi_b)."""
    p = joint_probabilities(phases)
    return p["A+B+"] + p["A-B-"] - p["A+B-"] - p["A-B+"]


def momentum_chsh_scan(t_min: float, t_max: float, steps: int) -> ScanResult:
    """Bell scan over the station half-angle t (phase difference 2t).

    Columns: vartheta, S, entropy_in, entropy_out.  S comes from four
    correlation evaluations at stations (0, t, 2t, 3t) in half-angle
    units; both entropy columns stay at 1 bit.
    """
    grid = scan_grid("vartheta", t_min, t_max, steps)
    entropy_in = von_neumann_entropy(partial_trace(interferometer_input(), "atom_1"))
    rows = []
    for t in grid:
        s_value = (
            _station_correlation(0.0, t)
            - _station_correlation(0.0, 3.0 * t)
            + _station_correlation(2.0 * t, t)
            + _station_correlation(2.0 * t, 3.0 * t)
        )
        out = bragg_output(BraggPhases(2.0 * t, 0.0))
        entropy_out = von_neumann_entropy(partial_trace(out, "station_A"))
        rows.append((float(t), s_value, entropy_in, entropy_out))
    return ScanResult(
        "vartheta", ("vartheta", "S", "entropy_in", "entropy_out"), tuple(rows)
    )


def _station_correlation(alpha: float, beta: float) -> float:
    # Station settings live in half-angle units; the phase knob is twice that.
    return momentum_correlation(BraggPhases(2.0 * alpha, 2.0 * beta))
