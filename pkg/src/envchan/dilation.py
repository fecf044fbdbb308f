"""Unitary dilations of channels.

A :class:`Dilation` realizes a channel d_in → d_fin as

    ρ ↦ tr_{initial, env}[ U (ρ ⊗ env_state) U† ]

where U acts on the joint space ordered [initial, final, environment] and
``env_state`` is the fixed initial state of the non-initial factors
(final system ⊗ auxiliary environment). ``d_env = 0`` means there is no
auxiliary environment at all — the final system doubles as the environment —
and is treated as a one-dimensional trivial factor internally.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .channels import Channel, ChoiMatrix, KrausSet
from .linalg import as_complex_matrix, complete_unitary, eig_hermitian, is_unitary
from .states import basis_state, projector, validate_density_matrix
from .tolerances import TOLS


@dataclass(frozen=True, eq=False)
class Dilation:
    """A unitary realization of a channel.

    Attributes:
        d_in: dimension of the initial system (traced out at the end).
        d_fin: dimension of the final system (the channel output).
        d_env: dimension of the auxiliary environment; 0 means absent.
        unitary: matrix of side d_in · d_fin · max(d_env, 1).
        env_state: density matrix over final ⊗ environment, the fixed
            initial state of everything except the channel input.

    Raises:
        ValueError: "not unitary" if ``unitary`` fails the unitarity check;
            "shape mismatch" on any dimension disagreement.
    """

    d_in: int
    d_fin: int
    d_env: int
    unitary: np.ndarray
    env_state: np.ndarray

    def __post_init__(self):
        if self.d_in < 1 or self.d_fin < 1 or self.d_env < 0:
            raise ValueError("shape mismatch")
        side = self.d_in * self.env_side
        u = as_complex_matrix(self.unitary)
        if u.shape != (side, side):
            raise ValueError("shape mismatch")
        if not is_unitary(u):
            raise ValueError("not unitary")
        env = validate_density_matrix(self.env_state)
        if env.shape != (self.env_side, self.env_side):
            raise ValueError("shape mismatch")
        object.__setattr__(self, "unitary", u)
        object.__setattr__(self, "env_state", env)

    @property
    def env_side(self) -> int:
        """Joint dimension of the initialized factors: d_fin · max(d_env, 1)."""
        return self.d_fin * max(self.d_env, 1)


@dataclass(frozen=True, eq=False)
class SpectralComponent:
    """One pure-environment component of a mixed-environment dilation."""

    weight: float
    env_basis_state: np.ndarray
    channel: Channel


def _kraus_vectors(d: Dilation, env_vector: np.ndarray) -> np.ndarray:
    """Vectorized Kraus operators of the dilation run on a pure env vector.

    Returns an array of shape (d_in · d_env_eff, d_in · d_fin): one row per
    traced-out basis pair (a, b), holding vec(E_{a,b}) in the input-major
    convention of the channels module.
    """
    env_eff = max(d.d_env, 1)
    columns = d.unitary @ np.kron(np.eye(d.d_in), env_vector[:, None])
    # columns[(a, m, b), i] = ⟨a m b|U|i, env⟩; Kraus E_{a,b}[m, i].
    t = columns.reshape(d.d_in, d.d_fin, env_eff, d.d_in)
    return np.transpose(t, (0, 2, 3, 1)).reshape(d.d_in * env_eff, d.d_in * d.d_fin)


def channel_from_dilation(d: Dilation) -> Channel:
    """The channel ρ ↦ tr_{initial, env}[ U (ρ ⊗ env_state) U† ].

    The environment state is diagonalized; each eigenvalue above the
    spectral cutoff contributes its family of Kraus operators with weight
    √p. The result carries the minimal Kraus set of the induced Choi matrix.
    """
    weights, vectors = eig_hermitian(d.env_state)
    side = d.d_in * d.d_fin
    choi = np.zeros((side, side), dtype=complex)
    for p, vec in zip(weights, vectors.T):
        if p <= TOLS.env_spectrum_cutoff:
            continue
        rows = _kraus_vectors(d, vec)
        choi += p * np.einsum("kv,kw->vw", rows, rows.conj())
    return Channel.from_choi(ChoiMatrix(d.d_in, d.d_fin, choi))


def stinespring_from_kraus(k: KrausSet) -> Dilation:
    """Pure-environment dilation of a channel given by a minimal Kraus set.

    The environment dimension equals the number of Kraus operators. The
    populated columns of the unitary send |i⟩|0'⟩|0⟩ to
    |0⟩ ⊗ Σ_k (E_k|i⟩) ⊗ |k⟩ and are extended to a full unitary; the
    completion never touches the sector selected by the pure initial state,
    so the induced channel is independent of it.
    """
    d_in, d_out, r = k.d_in, k.d_out, len(k)
    block = d_out * r
    side = d_in * block
    populated = np.zeros((side, d_in), dtype=complex)
    for i in range(d_in):
        joint = np.zeros((d_in, d_out, r), dtype=complex)
        for idx, op in enumerate(k.operators):
            joint[0, :, idx] = op[:, i]
        populated[:, i] = joint.reshape(-1)
    completed = complete_unitary(populated)

    # Place column i of the isometry at input index (i, 0', 0) = i·block and
    # spread the filler columns over the remaining input indices.
    unitary = np.zeros((side, side), dtype=complex)
    filler = iter(range(d_in, side))
    for col in range(side):
        if col % block == 0:
            unitary[:, col] = completed[:, col // block]
        else:
            unitary[:, col] = completed[:, next(filler)]
    env_state = projector(basis_state(block, 0))
    return Dilation(d_in=d_in, d_fin=d_out, d_env=r, unitary=unitary, env_state=env_state)


def decompose_mixed_env(d: Dilation) -> list[SpectralComponent]:
    """Split a dilation into pure-environment components, one per eigenvalue
    of ``env_state`` above the spectral cutoff.

    The weighted mixture of the component channels equals the channel of the
    full dilation; components are ordered by decreasing weight.
    """
    weights, vectors = eig_hermitian(d.env_state)
    components = []
    for p, vec in zip(weights, vectors.T):
        if p <= TOLS.env_spectrum_cutoff:
            continue
        pure = replace(d, env_state=projector(vec))
        components.append(
            SpectralComponent(weight=float(p), env_basis_state=vec, channel=channel_from_dilation(pure))
        )
    return components
