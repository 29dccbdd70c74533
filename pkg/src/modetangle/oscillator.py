"""Quartic-anharmonic oscillator in a truncated number basis.

The Hamiltonian is H = diag(n + 1/2) + (g/4) X^4 with X = (a + a+)/sqrt(2),
in units hbar = m = omega = 1, where g >= 0 is the anharmonicity.  X is
built at twice the requested truncation and its fourth power is cropped
back, so every retained matrix element of X^4 is exact and the truncated
H is the true projection of the full operator (X^4 only reaches four
levels up, well inside the doubled basis).

First-order perturbation theory gives the diagonal shift
<n|X^4|n> = (3/4)(2n^2 + 2n + 1), hence

    E_n ~= n + 1/2 + (3g/16)(2n^2 + 2n + 1)

which serves as the small-g oracle.  Eigenvectors are sign-fixed so the
overlap with the corresponding harmonic level is non-negative.

The adiabatic budget checks the separation of scales

    hbar/delta_e  <<  hbar/h_tilde  <<  t_meas

as two ratios r1 = delta_e/h_tilde and r2 = t_meas*h_tilde/hbar, both of
which must reach the configured threshold.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._common import require_finite

__all__ = [
    "OscillatorModel",
    "ModeAssignment",
    "AdiabaticBudget",
    "AdiabaticCheck",
    "position_operator",
    "build_model",
    "first_order_energy",
    "perturbation_strength",
    "mode_overlap",
    "map_modes_to_eigenfunctions",
    "default_mode_assignment",
    "adiabatic_check",
    "budget_from_model",
]

MIN_TRUNCATION = 8


def position_operator(dim: int) -> np.ndarray:
    """X = (a + a+)/sqrt(2) in the number basis, dimension dim."""
    off = np.sqrt(np.arange(1, dim) / 2.0)
    return np.diag(off, k=1) + np.diag(off, k=-1)


@dataclass(frozen=True, eq=False)
class OscillatorModel:
    """Diagonalized truncated model; immutable after construction.

    eigenvalues are ascending; eigenvectors[:, n] is level n expressed in
    the harmonic number basis, sign-fixed so eigenvectors[n, n] >= 0.
    """

    anharmonicity: float
    truncation: int
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    x_squared: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        for name in ("eigenvalues", "eigenvectors", "x_squared"):
            arr = np.asarray(getattr(self, name))
            arr = arr.copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    def energy(self, n: int) -> float:
        return float(self.eigenvalues[self._check_level(n)])

    def eigenstate(self, n: int) -> np.ndarray:
        return self.eigenvectors[:, self._check_level(n)]

    def x_squared_expectation(self, n: int) -> float:
        """<n(g)|X^2|n(g)>; equals n + 1/2 at zero anharmonicity."""
        v = self.eigenstate(n)
        return float(np.real(v @ self.x_squared @ v))

    def _check_level(self, n: int) -> int:
        n = int(n)
        if not 0 <= n < self.truncation:
            raise ValueError(f"level {n} outside truncation {self.truncation}")
        return n


def build_model(anharmonicity: float, truncation: int = 64) -> OscillatorModel:
    """Diagonalize H = diag(n + 1/2) + (g/4) X^4 at the given truncation."""
    g = require_finite("anharmonicity", anharmonicity)
    if g < 0.0:
        raise ValueError(f"anharmonicity must be non-negative, got {g}")
    n = int(truncation)
    if n < MIN_TRUNCATION:
        raise ValueError(f"truncation must be at least {MIN_TRUNCATION}, got {n}")

    x_big = position_operator(2 * n)
    x2_big = x_big @ x_big
    x4 = (x2_big @ x2_big)[:n, :n]
    x2 = x2_big[:n, :n]
    h = np.diag(np.arange(n) + 0.5) + 0.25 * g * x4
    eigenvalues, eigenvectors = np.linalg.eigh(h)
    # one global sign per column: keep the harmonic-level component >= 0
    signs = np.sign(np.diag(eigenvectors))
    signs[signs == 0.0] = 1.0
    eigenvectors = eigenvectors * signs
    return OscillatorModel(g, n, eigenvalues, eigenvectors, x2)


def first_order_energy(n: int, anharmonicity: float) -> float:
    """Small-g oracle E_n = n + 1/2 + (3g/16)(2n^2 + 2n + 1)."""
    g = require_finite("anharmonicity", anharmonicity)
    n = int(n)
    if n < 0:
        raise ValueError(f"level must be non-negative, got {n}")
    return n + 0.5 + (3.0 * g / 16.0) * (2.0 * n * n + 2.0 * n + 1.0)


def perturbation_strength(n: int, anharmonicity: float) -> float:
    """Diagonal element <n|(g/4)X^4|n>, the first-order level shift."""
    return first_order_energy(n, anharmonicity) - (int(n) + 0.5)


def mode_overlap(model: OscillatorModel, n: int) -> float:
    """Overlap <n_harmonic|n(g)>, non-negative by the sign convention."""
    return float(model.eigenvectors[n, model._check_level(n)])


@dataclass(frozen=True)
class ModeAssignment:
    """Binding of particle labels to oscillator levels, one level each."""

    pairs: tuple[tuple[str, int], ...]

    def __post_init__(self) -> None:
        pairs = tuple((str(p), int(n)) for p, n in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        particles = [p for p, _ in pairs]
        levels = [n for _, n in pairs]
        if not pairs:
            raise ValueError("assignment must bind at least one particle")
        if len(set(particles)) != len(particles):
            raise ValueError("each particle may be assigned only once")
        if len(set(levels)) != len(levels):
            raise ValueError(f"levels must be distinct, got {levels}")
        if any(n < 0 for n in levels):
            raise ValueError("levels must be non-negative")

    def level_of(self, particle: str) -> int:
        for p, n in self.pairs:
            if p == particle:
                return n
        raise KeyError(f"no level assigned to {particle!r}")

    def levels(self) -> dict[str, int]:
        return dict(self.pairs)

    def invert(self) -> dict[int, str]:
        return {n: p for p, n in self.pairs}


def map_modes_to_eigenfunctions(assignment: dict[str, int]) -> ModeAssignment:
    """Validated particle-to-level binding (duplicate levels rejected)."""
    return ModeAssignment(tuple(assignment.items()))


def default_mode_assignment() -> ModeAssignment:
    """photon_1 -> level 1, photon_2 -> level 2."""
    return map_modes_to_eigenfunctions({"photon_1": 1, "photon_2": 2})


@dataclass(frozen=True)
class AdiabaticBudget:
    """Raw scales for the separation-of-timescales check (hbar = 1 units)."""

    delta_e: float
    h_tilde: float
    t_meas: float
    ratio_threshold: float = 10.0

    def __post_init__(self) -> None:
        for name in ("delta_e", "h_tilde", "t_meas", "ratio_threshold"):
            value = require_finite(name, getattr(self, name))
            if value <= 0.0:
                raise ValueError(f"{name} must be positive, got {value}")
            object.__setattr__(self, name, value)


@dataclass(frozen=True)
class AdiabaticCheck:
    passed: bool
    margins: tuple[float, float]


def adiabatic_check(budget: AdiabaticBudget) -> AdiabaticCheck:
    """Both scale ratios must reach the threshold for a pass.

    r1 = delta_e / h_tilde (level spacing dominates the perturbation),
    r2 = t_meas * h_tilde (measurement slow against the induced dynamics).
    """
    r1 = budget.delta_e / budget.h_tilde
    r2 = budget.t_meas * budget.h_tilde
    passed = bool(r1 >= budget.ratio_threshold and r2 >= budget.ratio_threshold)
    return AdiabaticCheck(passed, (r1, r2))


def budget_from_model(
    model: OscillatorModel,
    assignment: ModeAssignment,
    t_meas: float,
    ratio_threshold: float = 10.0,
) -> AdiabaticBudget:
    """Derive a budget from a diagonalized model and a two-level binding.

    delta_e is the gap between the two assigned perturbed levels; h_tilde
    is the larger first-order shift of the pair.  Needs a non-zero
    anharmonicity, otherwise there is no perturbation to budget.
    """
    levels = sorted(n for _, n in assignment.pairs)
    if len(levels) != 2:
        raise ValueError("budget derivation expects exactly two assigned levels")
    if model.anharmonicity <= 0.0:
        raise ValueError("budget derivation needs a positive anharmonicity")
    delta_e = abs(model.energy(levels[1]) - model.energy(levels[0]))
    h_tilde = max(
        perturbation_strength(levels[0], model.anharmonicity),
        perturbation_strength(levels[1], model.anharmonicity),
    )
    return AdiabaticBudget(delta_e, h_tilde, t_meas, ratio_threshold)
