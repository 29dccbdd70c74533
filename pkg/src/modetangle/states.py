"""Labeled tensor-product pure states and bipartite entanglement measures.

Amplitudes are dense complex vectors in row-major order over the factor
dimensions (first factor varies slowest).  Reduced density matrices come
from an exact partial trace.  All entropies are base-2 (bits).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "LabelingError",
    "BasisMismatchError",
    "BasisLabel",
    "PureState",
    "ReducedDensityMatrix",
    "tensor",
    "partial_trace",
    "apply_local_unitary",
    "von_neumann_entropy",
    "renyi_entropy",
    "fidelity",
]

# Tensor factors beyond this are out of scope for the intended experiments.
MAX_FACTORS = 4

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
EIGENVALUE_FLOOR = -1e-12
UNITARITY_TOL = 1e-10
ZERO_NORM_TOL = 1e-15


class LabelingError(ValueError):
    """Duplicate, unknown, or malformed tensor-factor label."""


class BasisMismatchError(ValueError):
    """Two states do not share the same labeled basis."""


@dataclass(frozen=True)
class BasisLabel:
    """Ordered, named tensor factors with their local dimensions."""

    factor_names: tuple[str, ...]
    factor_dims: tuple[int, ...]

    def __post_init__(self) -> None:
        names = tuple(self.factor_names)
        dims = tuple(int(d) for d in self.factor_dims)
        object.__setattr__(self, "factor_names", names)
        object.__setattr__(self, "factor_dims", dims)
        if len(names) == 0:
            raise LabelingError("a basis needs at least one factor")
        if len(names) > MAX_FACTORS:
            raise LabelingError(f"at most {MAX_FACTORS} tensor factors are supported")
        if len(names) != len(dims):
            raise LabelingError("factor_names and factor_dims differ in length")
        if len(set(names)) != len(names):
            raise LabelingError(f"duplicate factor name in {names}")
        if any(not isinstance(n, str) or not n for n in names):
            raise LabelingError("factor names must be non-empty strings")
        if any(d < 2 for d in dims):
            raise LabelingError("every factor dimension must be at least 2")

    @property
    def dim(self) -> int:
        """Total Hilbert-space dimension (product of factor dims)."""
        return int(np.prod(self.factor_dims))

    def axis(self, name: str) -> int:
        """Position of the named factor; LabelingError if absent."""
        try:
            return self.factor_names.index(name)
        except ValueError:
            raise LabelingError(
                f"unknown factor {name!r}; have {self.factor_names}"
            ) from None


@dataclass(frozen=True, eq=False)
class PureState:
    """A pure state as a complex amplitude vector over a labeled basis.

    Construction does not normalize; use normalized() to get a unit
    vector.  Instances are treated as immutable.
    """

    basis: BasisLabel
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != self.basis.dim:
            raise ValueError(
                f"amplitude vector has length {amps.size}, basis dim is {self.basis.dim}"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def normalized(self) -> "PureState":
        """Unit-norm copy; rejects the zero vector."""
        n = self.norm
        if n < ZERO_NORM_TOL:
            raise ValueError("cannot normalize a zero-norm state")
        return PureState(self.basis, self.amplitudes / n)


@dataclass(frozen=True, eq=False)
class ReducedDensityMatrix:
    """Hermitian, unit-trace, positive-semidefinite matrix on one factor.

    Validated on construction: Hermiticity and trace to tight tolerance,
    eigenvalues no lower than -1e-12.
    """

    entries: np.ndarray
    dim: int = field(init=False)

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"density matrix must be square, got shape {m.shape}")
        if np.max(np.abs(m - m.conj().T)) > HERMITICITY_TOL:
            raise ValueError("density matrix is not Hermitian within tolerance")
        tr = float(np.real(np.trace(m)))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValueError(f"density matrix trace {tr} is not 1 within tolerance")
        spectrum = np.linalg.eigvalsh(m)
        if spectrum[0] < EIGENVALUE_FLOOR:
            raise ValueError(
                f"density matrix has eigenvalue {spectrum[0]} below {EIGENVALUE_FLOOR}"
            )
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "dim", int(m.shape[0]))
        object.__setattr__(self, "_spectrum", spectrum)

    def eigenvalues(self) -> np.ndarray:
        """Ascending real eigenvalues, with tiny negatives clamped to 0."""
        spectrum = np.array(getattr(self, "_spectrum"))
        spectrum[(spectrum < 0.0) & (spectrum >= EIGENVALUE_FLOOR)] = 0.0
        return spectrum


def tensor(states: Sequence[PureState] | Iterable[PureState]) -> PureState:
    """Tensor product of labeled states; factor names must be disjoint."""
    states = list(states)
    if not states:
        raise ValueError("tensor() needs at least one state")
    names: tuple[str, ...] = ()
    dims: tuple[int, ...] = ()
    amps = np.array([1.0 + 0.0j])
    for s in states:
        overlap = set(names) & set(s.basis.factor_names)
        if overlap:
            raise LabelingError(f"duplicate factor name across product: {sorted(overlap)}")
        names = names + s.basis.factor_names
        dims = dims + s.basis.factor_dims
        amps = np.kron(amps, s.amplitudes)
    return PureState(BasisLabel(names, dims), amps)


def partial_trace(state: PureState, keep: str) -> ReducedDensityMatrix:
    """Trace out every factor except `keep`.

    The state is normalized first, so the result always has unit trace.
    """
    axis = state.basis.axis(keep)
    dims = state.basis.factor_dims
    psi = state.normalized().amplitudes.reshape(dims)
    psi = np.moveaxis(psi, axis, 0).reshape(dims[axis], -1)
    return ReducedDensityMatrix(psi @ psi.conj().T)


def apply_local_unitary(state: PureState, factor: str, matrix: np.ndarray) -> PureState:
    """Apply a unitary matrix to a single factor, leaving labels unchanged.

    The matrix acts on amplitudes as given (no implicit conjugation), so a
    change of basis to frame vectors {e_i} takes rows conj(e_i).
    """
    axis = state.basis.axis(factor)
    d = state.basis.factor_dims[axis]
    u = np.asarray(matrix, dtype=complex)
    if u.shape != (d, d):
        raise ValueError(f"matrix shape {u.shape} does not match factor dim {d}")
    if np.max(np.abs(u @ u.conj().T - np.eye(d))) > UNITARITY_TOL:
        raise ValueError("matrix is not unitary within tolerance")
    psi = state.amplitudes.reshape(state.basis.factor_dims)
    psi = np.moveaxis(np.tensordot(u, psi, axes=([1], [axis])), 0, axis)
    return PureState(state.basis, psi.reshape(-1))


def _clamped_probabilities(rho: ReducedDensityMatrix) -> np.ndarray:
    lam = rho.eigenvalues()
    return lam[lam > 0.0]


def von_neumann_entropy(rho: ReducedDensityMatrix) -> float:
    """S = -sum(p log2 p) over the spectrum, in bits."""
    p = _clamped_probabilities(rho)
    s = float(-np.sum(p * np.log2(p)))
    return s if s > 0.0 else 0.0


def renyi_entropy(rho: ReducedDensityMatrix, alpha: float) -> float:
    """Order-alpha Renyi entropy log2(sum p^alpha) / (1 - alpha), in bits.

    alpha must be positive and not equal to 1 (the von Neumann limit is
    its own function).
    """
    alpha = float(alpha)
    if not np.isfinite(alpha) or alpha <= 0.0:
        raise ValueError(f"Renyi order must be positive, got {alpha}")
    if alpha == 1.0:
        raise ValueError("Renyi order 1 is the von Neumann limit; use von_neumann_entropy")
    p = _clamped_probabilities(rho)
    s = float(np.log2(np.sum(p**alpha)) / (1.0 - alpha))
    return s if s > 0.0 else 0.0


def fidelity(a: PureState, b: PureState) -> float:
    """|<a|b>|^2 for unit-normalized inputs over the same labeled basis."""
    if a.basis != b.basis:
        raise BasisMismatchError(
            f"states live on different bases: {a.basis} vs {b.basis}"
        )
    va = a.normalized().amplitudes
    vb = b.normalized().amplitudes
    return float(np.abs(np.vdot(va, vb)) ** 2)
