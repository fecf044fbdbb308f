"""Quantum channel representations and operations.

A channel is stored by its Kraus operators (:class:`KrausSet`) with the Choi
matrix (:class:`ChoiMatrix`) derived on demand and cached. The Choi
convention used throughout is input-major and unnormalized:

    C = Σᵢⱼ |i⟩⟨j| ⊗ Φ(|i⟩⟨j|),    tr_out(C) = I_{d_in},  tr(C) = d_in,

so row index ``i * d_out + m`` pairs input basis index ``i`` with output
basis index ``m``, and ``C = Σ_k vec(E_k) vec(E_k)†`` with
``vec(E) = E.T.reshape(-1)``.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from functools import cached_property

import numpy as np

from .linalg import as_complex_matrix, dagger, eig_hermitian, partial_trace
from .tolerances import TOLS


def _vec(op: np.ndarray) -> np.ndarray:
    """Vectorize a d_out×d_in operator into length d_in·d_out, input-major."""
    return op.T.reshape(-1)


def _unvec(v: np.ndarray, d_in: int, d_out: int) -> np.ndarray:
    return v.reshape(d_in, d_out).T


def _frozen_copy(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class KrausSet:
    """A trace-preserving set of Kraus operators, all of shape d_out × d_in.

    Raises:
        ValueError: "shape mismatch" if the operators disagree in shape;
            "not trace preserving" if Σᵢ Eᵢ†Eᵢ deviates from the identity by
            more than ``atol`` in any entry.
    """

    operators: tuple
    atol: InitVar[float] = TOLS.trace_preserving

    def __post_init__(self, atol: float):
        ops = tuple(_frozen_copy(as_complex_matrix(op)) for op in self.operators)
        if not ops:
            raise ValueError("kraus set must be nonempty")
        shape = ops[0].shape
        if any(op.shape != shape for op in ops):
            raise ValueError("shape mismatch")
        total = sum(dagger(op) @ op for op in ops)
        if np.max(np.abs(total - np.eye(shape[1]))) > atol:
            raise ValueError("not trace preserving")
        object.__setattr__(self, "operators", ops)

    @property
    def d_in(self) -> int:
        return self.operators[0].shape[1]

    @property
    def d_out(self) -> int:
        return self.operators[0].shape[0]

    def __len__(self) -> int:
        return len(self.operators)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Choi matrix of a channel, validated as CP and TP on construction.

    Raises:
        ValueError: "shape mismatch" if the matrix side is not d_in·d_out;
            "not completely positive" if the matrix is not Hermitian PSD
            (eigenvalues below ``-psd_atol``); "not trace preserving" if the
            partial trace over the output factor deviates from I_{d_in}.
    """

    d_in: int
    d_out: int
    matrix: np.ndarray
    psd_atol: InitVar[float] = TOLS.psd
    tp_atol: InitVar[float] = TOLS.trace_preserving

    def __post_init__(self, psd_atol: float, tp_atol: float):
        if self.d_in < 1 or self.d_out < 1:
            raise ValueError("shape mismatch")
        m = as_complex_matrix(self.matrix)
        side = self.d_in * self.d_out
        if m.shape != (side, side):
            raise ValueError("shape mismatch")
        if np.max(np.abs(m - m.conj().T)) > max(psd_atol, TOLS.hermitian_check):
            raise ValueError("not completely positive")
        if np.linalg.eigvalsh((m + m.conj().T) / 2).min() < -psd_atol:
            raise ValueError("not completely positive")
        reduced = partial_trace(m, [self.d_in, self.d_out], keep={0})
        if np.max(np.abs(reduced - np.eye(self.d_in))) > tp_atol:
            raise ValueError("not trace preserving")
        object.__setattr__(self, "matrix", _frozen_copy(m))


def kraus_to_choi(k: KrausSet) -> ChoiMatrix:
    """Choi matrix Σ_k vec(E_k) vec(E_k)† of a Kraus set."""
    vecs = np.stack([_vec(op) for op in k.operators])
    c = np.einsum("kv,kw->vw", vecs, vecs.conj())
    return ChoiMatrix(k.d_in, k.d_out, c)


def choi_to_kraus(c: ChoiMatrix, cutoff: float = TOLS.kraus_rank_cutoff) -> KrausSet:
    """Minimal Kraus set from the spectral decomposition of a Choi matrix.

    Eigenvalues above ``cutoff`` each contribute one operator √λ·unvec(v),
    ordered by decreasing eigenvalue, so the number of operators is the
    numerical rank of the Choi matrix.
    """
    w, v = eig_hermitian(c.matrix)
    ops = [
        _unvec(np.sqrt(w[j]) * v[:, j], c.d_in, c.d_out)
        for j in range(len(w))
        if w[j] > cutoff
    ]
    return KrausSet(tuple(ops))


@dataclass(frozen=True, eq=False)
class Channel:
    """A completely positive trace-preserving map, held as Kraus operators."""

    kraus: KrausSet

    @classmethod
    def from_kraus(cls, operators, atol: float = TOLS.trace_preserving) -> "Channel":
        if isinstance(operators, KrausSet):
            return cls(operators)
        return cls(KrausSet(tuple(operators), atol=atol))

    @classmethod
    def from_choi(cls, choi, d_in: int | None = None, d_out: int | None = None,
                  **choi_kwargs) -> "Channel":
        """Build a channel (with minimal Kraus set) from a Choi matrix.

        ``choi`` may be a :class:`ChoiMatrix` or a raw matrix together with
        ``d_in``/``d_out``.
        """
        if not isinstance(choi, ChoiMatrix):
            if d_in is None or d_out is None:
                raise ValueError("d_in and d_out are required for a raw matrix")
            choi = ChoiMatrix(d_in, d_out, choi, **choi_kwargs)
        return cls(choi_to_kraus(choi))

    @property
    def d_in(self) -> int:
        return self.kraus.d_in

    @property
    def d_out(self) -> int:
        return self.kraus.d_out

    @cached_property
    def choi(self) -> ChoiMatrix:
        return kraus_to_choi(self.kraus)


def identity_channel(dim: int) -> Channel:
    """The channel ρ ↦ ρ."""
    return Channel.from_kraus([np.eye(dim, dtype=complex)])


def apply(ch: Channel, rho) -> np.ndarray:
    """Apply the channel: ρ ↦ Σᵢ Eᵢ ρ Eᵢ†.

    Raises:
        ValueError: "shape mismatch" if ρ is not d_in × d_in.
    """
    rho = as_complex_matrix(rho)
    if rho.shape != (ch.d_in, ch.d_in):
        raise ValueError("shape mismatch")
    out = np.zeros((ch.d_out, ch.d_out), dtype=complex)
    for op in ch.kraus.operators:
        out += op @ rho @ dagger(op)
    return out


def apply_from_choi(choi: ChoiMatrix, rho) -> np.ndarray:
    """Apply a channel through its Choi matrix: Φ(ρ) = tr_in[(ρᵀ ⊗ I) C]."""
    rho = as_complex_matrix(rho)
    if rho.shape != (choi.d_in, choi.d_in):
        raise ValueError("shape mismatch")
    lifted = np.kron(rho.T, np.eye(choi.d_out)) @ choi.matrix
    return partial_trace(lifted, [choi.d_in, choi.d_out], keep={1})


def mix(channels, weights) -> Channel:
    """Convex mixture of channels: Choi(result) = Σᵢ wᵢ · Choi(chᵢ).

    Raises:
        ValueError: "shape mismatch" if the channels' dimensions disagree;
            "not a distribution" if the weights are negative or do not sum
            to 1 within the distribution tolerance.
    """
    channels = list(channels)
    w = np.asarray(weights, dtype=float)
    if not channels or w.ndim != 1 or len(w) != len(channels):
        raise ValueError("shape mismatch")
    dims = (channels[0].d_in, channels[0].d_out)
    if any((ch.d_in, ch.d_out) != dims for ch in channels):
        raise ValueError("shape mismatch")
    if w.min() < 0 or abs(w.sum() - 1.0) > TOLS.distribution:
        raise ValueError("not a distribution")
    c = sum(wi * ch.choi.matrix for wi, ch in zip(w, channels))
    return Channel.from_choi(ChoiMatrix(dims[0], dims[1], c))


def distance(a: Channel, b: Channel) -> float:
    """Frobenius distance between Choi matrices; 0 iff the maps are equal.

    Raises:
        ValueError: "shape mismatch" if dimensions differ.
    """
    if (a.d_in, a.d_out) != (b.d_in, b.d_out):
        raise ValueError("shape mismatch")
    return float(np.linalg.norm(a.choi.matrix - b.choi.matrix))


def is_extremal(k: KrausSet, tol: float = TOLS.extremal_rank) -> bool:
    """Whether a channel with minimal Kraus set ``k`` is extremal.

    Uses the linear-independence criterion: the channel is extremal iff the
    set {Eᵢ†Eⱼ} of all pairwise products is linearly independent. The test
    stacks the vectorized products and compares the numerical rank (singular
    values above ``tol``) against len(k)².
    """
    ops = k.operators
    products = [dagger(a) @ b for a in ops for b in ops]
    stacked = np.stack([p.reshape(-1) for p in products])
    singular_values = np.linalg.svd(stacked, compute_uv=False)
    rank = int(np.sum(singular_values > tol))
    return rank == len(ops) ** 2


def random_channel(
    d_in: int,
    d_out: int,
    rng: np.random.Generator,
    kraus_rank: int | None = None,
) -> Channel:
    """Random channel from a Haar-style isometry.

    A Ginibre matrix of shape (d_out·kraus_rank, d_in) is orthonormalized by
    QR; its d_out-row blocks are the Kraus operators. ``kraus_rank`` defaults
    to d_in·d_out (a generic, full-Choi-rank channel).
    """
    if kraus_rank is None:
        kraus_rank = d_in * d_out
    if kraus_rank < 1 or d_out * kraus_rank < d_in:
        raise ValueError("kraus rank too small")
    g = rng.normal(size=(d_out * kraus_rank, d_in)) + 1j * rng.normal(
        size=(d_out * kraus_rank, d_in)
    )
    q, _ = np.linalg.qr(g)
    ops = [q[b * d_out : (b + 1) * d_out, :] for b in range(kraus_rank)]
    return Channel.from_kraus(ops)
