"""Pure and mixed quantum states: construction, validation, purity, and
seeded random generators.

States are plain numpy arrays — vectors for pure states, square matrices for
density matrices — validated by the functions here rather than wrapped in
classes.
"""

from __future__ import annotations

import numpy as np

from .linalg import as_complex_matrix
from .tolerances import TOLS


def basis_state(dim: int, index: int) -> np.ndarray:
    """Standard basis vector |index⟩ in a ``dim``-dimensional space."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    if not 0 <= index < dim:
        raise ValueError("bad subsystem index")
    vec = np.zeros(dim, dtype=complex)
    vec[index] = 1.0
    return vec


def validate_pure_state(vec, atol: float = TOLS.state_norm) -> np.ndarray:
    """Coerce to a complex vector and check unit norm within ``atol``."""
    v = np.asarray(vec, dtype=complex)
    if v.ndim != 1 or v.size < 1:
        raise ValueError("shape mismatch")
    if not np.all(np.isfinite(v.real)) or not np.all(np.isfinite(v.imag)):
        raise ValueError("matrix entries must be finite")
    if abs(np.linalg.norm(v) - 1.0) > atol:
        raise ValueError("not normalized")
    return v


def projector(vec) -> np.ndarray:
    """Rank-1 projector |v⟩⟨v| onto a unit vector."""
    v = validate_pure_state(vec)
    return np.outer(v, v.conj())


def validate_density_matrix(
    rho,
    *,
    hermitian_atol: float = TOLS.hermitian,
    psd_atol: float = TOLS.psd,
    trace_atol: float = TOLS.trace,
) -> np.ndarray:
    """Coerce and validate a density matrix.

    Checks, in order: squareness, hermiticity (entrywise within
    ``hermitian_atol``), positive semidefiniteness (eigenvalues above
    ``-psd_atol``), and unit trace (within ``trace_atol``).

    Returns:
        The validated matrix as a complex ndarray.
    """
    m = as_complex_matrix(rho)
    if m.shape[0] != m.shape[1]:
        raise ValueError("shape mismatch")
    if np.max(np.abs(m - m.conj().T), initial=0.0) > hermitian_atol:
        raise ValueError("not hermitian")
    eigenvalues = np.linalg.eigvalsh((m + m.conj().T) / 2)
    if eigenvalues.min(initial=0.0) < -psd_atol:
        raise ValueError("not positive semidefinite")
    if abs(np.trace(m).real - 1.0) > trace_atol or abs(np.trace(m).imag) > trace_atol:
        raise ValueError("trace not one")
    return m


def purity(rho) -> float:
    """tr(ρ²) — equals 1 exactly for pure states, 1/dim for maximally mixed."""
    m = as_complex_matrix(rho)
    return float(np.real(np.trace(m @ m)))


def is_pure(rho, gap: float = TOLS.pure_purity_gap) -> bool:
    """Whether purity(rho) ≥ 1 − gap."""
    return purity(rho) >= 1.0 - gap


def maximally_mixed(dim: int) -> np.ndarray:
    """The state I/dim."""
    if dim < 1:
        raise ValueError("dimension must be positive")
    return np.eye(dim, dtype=complex) / dim


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_density_matrix(
    dim: int, rng: np.random.Generator, rank: int | None = None
) -> np.ndarray:
    """Random density matrix GG†/tr(GG†) with G a dim×rank Ginibre matrix.

    ``rank`` defaults to ``dim`` (full rank, almost surely).
    """
    if rank is None:
        rank = dim
    if not 1 <= rank <= dim:
        raise ValueError("rank must be between 1 and dim")
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return m / np.trace(m).real
