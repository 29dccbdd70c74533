"""Heralded conversion of mode entanglement into particle entanglement.

The input is the two-mode state (|2,0> + |1,1> + |0,2>)/sqrt(3).  A
coincidence selection keeps the one-quantum-per-mode term, leaving the
particle-factored product written |a>|b> below.  An ancilla photon then
drives a conditional switch of the confining potential: in the branch
where its detection registered, the potential turns anharmonic and the
occupied modes deform to |a'>, |b'>.  The unresolved ancilla leaves the
pair in the superposition

    psi = harmonic_amp * |a>|b> + anharmonic_amp * |a'>|b'>

Each particle needs only the plane spanned by its original mode and the
deformed one, so the pair state lives in a 2x2 frame: per particle,
basis index 0 is the original mode and index 1 the orthogonal direction
the deformed mode leans into, with overlap s = <a|a'> taken from the
oscillator model.  With t = sqrt(1 - s^2) the unnormalized amplitudes are

    [h + a*s1*s2,  a*s1*t2,  a*t1*s2,  a*t1*t2]       (h, a = branch amps)

and norm^2 = |h|^2 + |a|^2 + 2 Re(conj(h) a) s1 s2.  How much particle
entanglement survives is set by the branch balance and the overlaps.

Monte-Carlo trials model the screened ancilla: the photon lands on the
retained half-screen with a configured probability, registers with
efficiency eta, and a clock-synchronized AND gate (when on) aborts every
cycle without a registration, so only faithfully converted pairs are
delivered.  With the gate off, lost-photon cycles deliver the
unconverted product and drag the mean fidelity below one.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._common import require_finite
from .oscillator import (
    AdiabaticBudget,
    ModeAssignment,
    OscillatorModel,
    adiabatic_check,
    build_model,
    default_mode_assignment,
    mode_overlap,
)
from .states import BasisLabel, PureState, fidelity, partial_trace, von_neumann_entropy

__all__ = [
    "ProjectionError",
    "PhysicsPreconditionError",
    "AncillaConfig",
    "ConversionConfig",
    "ConversionOutcome",
    "CampaignResult",
    "initial_mode_state",
    "select_middle_term",
    "ancilla_branch_amplitudes",
    "final_state_from_overlaps",
    "assemble_final_state",
    "particle_entanglement_entropy",
    "run_trial",
    "run_campaign",
    "outcome_json_line",
    "render_outcome_log",
    "campaign_summary",
]

ROOT_HALF = 1.0 / math.sqrt(2.0)
AMPLITUDE_TOL = 1e-12
PROJECTION_TOL = 1e-15

PARTICLE_BASIS = BasisLabel(("photon_1", "photon_2"), (2, 2))


class ProjectionError(ValueError):
    """Selected component has zero weight in the input state."""


class PhysicsPreconditionError(RuntimeError):
    """A configured physical validity check failed; refusing to run."""


@dataclass(frozen=True)
class AncillaConfig:
    """Ancilla photon amplitudes and detector efficiency.

    alpha and beta are the two screen-path amplitudes (|alpha|^2 +
    |beta|^2 = 1); detect_amp is the amplitude of the
    registration branch of the final superposition, |detect_amp| <= 1.
    """

    alpha: complex = ROOT_HALF
    beta: complex = ROOT_HALF
    detect_amp: complex = ROOT_HALF
    eta: float = 1.0

    def __post_init__(self) -> None:
        alpha = complex(self.alpha)
        beta = complex(self.beta)
        detect = complex(self.detect_amp)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "detect_amp", detect)
        if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > AMPLITUDE_TOL:
            raise ValueError("|alpha|^2 + |beta|^2 must equal 1")
        if abs(detect) > 1.0 + AMPLITUDE_TOL:
            raise ValueError(f"|detect_amp| must not exceed 1, got {abs(detect)}")
        eta = require_finite("eta", self.eta)
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {eta}")
        object.__setattr__(self, "eta", eta)


@dataclass(frozen=True)
class ConversionConfig:
    """Full configuration of a conversion run.

    clock_period must exceed travel_plus_register_time + and_gate_time so
    the abort decision for one cycle lands before the next one starts.
    An optional adiabatic budget gates whole campaigns.
    """

    anharmonicity_on: float = 0.1
    truncation: int = 64
    assignment: ModeAssignment = None  # type: ignore[assignment]
    ancilla: AncillaConfig = None  # type: ignore[assignment]
    clock_period: float = 10.0
    travel_plus_register_time: float = 3.0
    and_gate_time: float = 1.0
    landing_prob: float = 0.5
    abort_gate_on: bool = True
    adiabatic_budget: AdiabaticBudget | None = None

    def __post_init__(self) -> None:
        if self.assignment is None:
            object.__setattr__(self, "assignment", default_mode_assignment())
        if self.ancilla is None:
            object.__setattr__(self, "ancilla", AncillaConfig())
        g = require_finite("anharmonicity_on", self.anharmonicity_on)
        if g < 0.0:
            raise ValueError(f"anharmonicity_on must be non-negative, got {g}")
        object.__setattr__(self, "anharmonicity_on", g)
        landing = require_finite("landing_prob", self.landing_prob)
        if not 0.0 <= landing <= 1.0:
            raise ValueError(f"landing_prob must lie in [0, 1], got {landing}")
        object.__setattr__(self, "landing_prob", landing)
        for name in ("clock_period", "travel_plus_register_time", "and_gate_time"):
            value = require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)
        budget = self.travel_plus_register_time + self.and_gate_time
        if self.clock_period <= budget:
            raise ValueError(
                "clock_period must exceed travel_plus_register_time + and_gate_time "
                f"({self.clock_period} <= {budget})"
            )


@dataclass(frozen=True, eq=False)
class ConversionOutcome:
    """Record of one trial; delivered fields are None when nothing ships."""

    trial_id: int
    photon_detected: bool
    registered: bool
    aborted: bool
    delivered_state: PureState | None
    particle_entropy: float | None
    fidelity_to_target: float | None

    def __post_init__(self) -> None:
        if self.registered and not self.photon_detected:
            raise ValueError("a registration requires a landed photon")
        if self.aborted and self.delivered_state is not None:
            raise ValueError("an aborted trial cannot deliver a state")
        delivered = self.delivered_state is not None
        if delivered != (self.particle_entropy is not None):
            raise ValueError("particle_entropy must accompany a delivered state")
        if delivered != (self.fidelity_to_target is not None):
            raise ValueError("fidelity_to_target must accompany a delivered state")


def initial_mode_state() -> PureState:
    """(|2,0> + |1,1> + |0,2>)/sqrt(3) over factors mode_a, mode_b."""
    basis = BasisLabel(("mode_a", "mode_b"), (3, 3))
    amps = np.zeros(9)
    amps[2 * 3 + 0] = 1.0  # |2,0>
    amps[1 * 3 + 1] = 1.0  # |1,1>
    amps[0 * 3 + 2] = 1.0  # |0,2>
    return PureState(basis, amps / math.sqrt(3.0))


def select_middle_term(state: PureState) -> PureState:
    """Keep the one-quantum-per-mode component and relabel per particle.

    Returns the product state in the 2x2 particle frame (both particles
    in their original mode), carrying the phase of the selected
    amplitude.  Raises ProjectionError when that component is absent.
    """
    dims = state.basis.factor_dims
    if len(dims) != 2 or min(dims) < 2:
        raise ValueError("selection needs a two-mode state reaching occupation 1 on each mode")
    amp = complex(state.normalized().amplitudes.reshape(dims)[1, 1])
    if abs(amp) < PROJECTION_TOL:
        raise ProjectionError("input has no one-quantum-per-mode component")
    phase = amp / abs(amp)
    amps = np.array([phase, 0.0, 0.0, 0.0], dtype=complex)
    return PureState(PARTICLE_BASIS, amps)


def ancilla_branch_amplitudes(config: AncillaConfig) -> tuple[complex, complex]:
    """Amplitudes (harmonic_amp, anharmonic_amp) of the two final branches.

    The registration branch carries detect_amp; the complementary
    no-registration branch carries sqrt(1 - |detect_amp|^2) with the
    conventional zero phase.
    """
    anharmonic = complex(config.detect_amp)
    harmonic = complex(math.sqrt(max(0.0, 1.0 - abs(anharmonic) ** 2)))
    return harmonic, anharmonic


def final_state_from_overlaps(
    harmonic_amp: complex,
    anharmonic_amp: complex,
    overlap_1: float,
    overlap_2: float,
) -> PureState:
    """Normalized pair state for given branch amplitudes and mode overlaps.

    overlap_i = <original|deformed> for particle i, in [0, 1].  The
    degenerate case where the two branches cancel is rejected.
    """
    h = complex(harmonic_amp)
    a = complex(anharmonic_amp)
    if abs(abs(h) ** 2 + abs(a) ** 2 - 1.0) > 1e-9:
        raise ValueError("branch amplitudes must satisfy |h|^2 + |a|^2 = 1")
    s1, t1 = _overlap_pair("overlap_1", overlap_1)
    s2, t2 = _overlap_pair("overlap_2", overlap_2)
    amps = np.array(
        [h + a * s1 * s2, a * s1 * t2, a * t1 * s2, a * t1 * t2], dtype=complex
    )
    norm = np.linalg.norm(amps)
    if norm < 1e-9:
        raise ValueError("branches cancel; the final state is degenerate")
    return PureState(PARTICLE_BASIS, amps / norm)


def _overlap_pair(name: str, s: float) -> tuple[float, float]:
    s = require_finite(name, s)
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {s}")
    return s, math.sqrt(max(0.0, 1.0 - s * s))


def assemble_final_state(
    harmonic_amp: complex,
    anharmonic_amp: complex,
    model: OscillatorModel,
    assignment: ModeAssignment,
) -> PureState:
    """Pair state with the mode overlaps read off an oscillator model."""
    level_1 = assignment.level_of("photon_1")
    level_2 = assignment.level_of("photon_2")
    return final_state_from_overlaps(
        harmonic_amp,
        anharmonic_amp,
        mode_overlap(model, level_1),
        mode_overlap(model, level_2),
    )


def particle_entanglement_entropy(state: PureState) -> float:
    """Entropy (bits) of one particle of a pair state."""
    return von_neumann_entropy(partial_trace(state, state.basis.factor_names[0]))


@dataclass(frozen=True, eq=False)
class _TrialContext:
    """Per-campaign precomputation; trials only consume random draws."""

    target: PureState
    target_entropy: float
    target_fidelity: float
    unconverted: PureState
    unconverted_entropy: float
    unconverted_fidelity: float


def _build_context(config: ConversionConfig) -> _TrialContext:
    model = build_model(config.anharmonicity_on, config.truncation)
    for _, level in config.assignment.pairs:
        if level >= config.truncation:
            raise ValueError(f"assigned level {level} outside truncation")
    harmonic_amp, anharmonic_amp = ancilla_branch_amplitudes(config.ancilla)
    unconverted = select_middle_term(initial_mode_state())
    target = assemble_final_state(
        harmonic_amp, anharmonic_amp, model, config.assignment
    )
    return _TrialContext(
        target=target,
        target_entropy=particle_entanglement_entropy(target),
        target_fidelity=fidelity(target, target),
        unconverted=unconverted,
        unconverted_entropy=particle_entanglement_entropy(unconverted),
        unconverted_fidelity=fidelity(unconverted, target),
    )


def _sample_trial(
    ctx: _TrialContext, config: ConversionConfig, trial_id: int, rng: np.random.Generator
) -> ConversionOutcome:
    landed = bool(rng.random() < config.landing_prob)
    registered = bool(landed and rng.random() < config.ancilla.eta)
    aborted = bool(config.abort_gate_on and not registered)
    if registered:
        delivered = ctx.target
        entropy: float | None = ctx.target_entropy
        fid: float | None = ctx.target_fidelity
    elif landed and not config.abort_gate_on:
        # loss slipped through: the potential never switched
        delivered = ctx.unconverted
        entropy = ctx.unconverted_entropy
        fid = ctx.unconverted_fidelity
    else:
        delivered = None
        entropy = None
        fid = None
    return ConversionOutcome(
        trial_id=trial_id,
        photon_detected=landed,
        registered=registered,
        aborted=aborted,
        delivered_state=delivered,
        particle_entropy=entropy,
        fidelity_to_target=fid,
    )


def run_trial(
    config: ConversionConfig, rng_seed: int | np.random.SeedSequence, trial_id: int = 0
) -> ConversionOutcome:
    """One seeded trial of the screened-ancilla conversion."""
    ctx = _build_context(config)
    return _sample_trial(ctx, config, trial_id, np.random.default_rng(rng_seed))


@dataclass(frozen=True, eq=False)
class CampaignResult:
    """Aggregate statistics plus the ordered outcome log."""

    n_trials: int
    delivered_rate: float
    abort_rate: float
    mean_entropy: float | None
    min_fidelity: float | None
    outcomes: tuple[ConversionOutcome, ...]


def run_campaign(
    config: ConversionConfig, n_trials: int, rng_seed: int
) -> CampaignResult:
    """Run seeded trials and aggregate delivery statistics.

    Each trial gets its own generator spawned from the master seed, so
    identical (config, n_trials, rng_seed) reproduce the log exactly.  A
    configured adiabatic budget that fails its check refuses to run.
    """
    n_trials = int(n_trials)
    if n_trials < 1:
        raise ValueError(f"n_trials must be at least 1, got {n_trials}")
    if config.adiabatic_budget is not None:
        check = adiabatic_check(config.adiabatic_budget)
        if not check.passed:
            r1, r2 = check.margins
            raise PhysicsPreconditionError(
                "adiabatic budget fails its separation-of-scales check "
                f"(margins r1={r1:.6g}, r2={r2:.6g}, "
                f"threshold {config.adiabatic_budget.ratio_threshold:.6g})"
            )
    ctx = _build_context(config)
    seeds = np.random.SeedSequence(rng_seed).spawn(n_trials)
    outcomes = tuple(
        _sample_trial(ctx, config, i, np.random.default_rng(seeds[i]))
        for i in range(n_trials)
    )
    delivered = [o for o in outcomes if o.delivered_state is not None]
    aborted = sum(1 for o in outcomes if o.aborted)
    mean_entropy = (
        float(np.mean([o.particle_entropy for o in delivered])) if delivered else None
    )
    min_fidelity = (
        min(o.fidelity_to_target for o in delivered) if delivered else None
    )
    return CampaignResult(
        n_trials=n_trials,
        delivered_rate=len(delivered) / n_trials,
        abort_rate=aborted / n_trials,
        mean_entropy=mean_entropy,
        min_fidelity=min_fidelity,
        outcomes=outcomes,
    )


def _state_payload(state: PureState | None) -> dict | None:
    if state is None:
        return None
    return {
        "factors": list(state.basis.factor_names),
        "dims": list(state.basis.factor_dims),
        "amplitudes": [[z.real, z.imag] for z in state.amplitudes],
    }


def outcome_json_line(outcome: ConversionOutcome) -> str:
    """One-line JSON record with a stable key order."""
    payload = {
        "trial_id": outcome.trial_id,
        "photon_detected": outcome.photon_detected,
        "registered": outcome.registered,
        "aborted": outcome.aborted,
        "particle_entropy": outcome.particle_entropy,
        "fidelity_to_target": outcome.fidelity_to_target,
        "delivered_state": _state_payload(outcome.delivered_state),
    }
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def render_outcome_log(outcomes: Sequence[ConversionOutcome]) -> str:
    return "\n".join(outcome_json_line(o) for o in outcomes) + "\n"


def campaign_summary(result: CampaignResult, config: ConversionConfig, seed: int) -> dict:
    """JSON-ready summary of a campaign and the knobs that produced it."""
    return {
        "n_trials": result.n_trials,
        "seed": int(seed),
        "delivered_rate": result.delivered_rate,
        "abort_rate": result.abort_rate,
        "mean_entropy": result.mean_entropy,
        "min_fidelity": result.min_fidelity,
        "eta": config.ancilla.eta,
        "abort_gate_on": config.abort_gate_on,
        "anharmonicity_on": config.anharmonicity_on,
        "landing_prob": config.landing_prob,
        "truncation": config.truncation,
    }
