"""The collapse-with-one-mixed-image channel family and its non-realizability
certificate.

The family: a channel from a d-dimensional initial system to a
d_fin-dimensional final system (d, d_fin ≥ 2) that sends every basis state
|i⟩⟨i| with i < d−1 to the same pure state |0'⟩⟨0'|, sends |d−1⟩⟨d−1| to a
truly mixed state ρ', and totally decoheres superpositions:

    (Σᵢ αᵢ|i⟩ + β|d−1⟩)(…)†  ↦  (Σᵢ |αᵢ|²)|0'⟩⟨0'| + |β|² ρ'.

Such channels are valid quantum operations — :func:`implementing_unitary`
exhibits an explicit dilation with a two-dimensional auxiliary environment —
yet they cannot be realized by a unitary on the initial ⊗ final space alone
with the final system initialized in any fixed state, however mixed.
:func:`certify_nonrealizable` mechanizes that argument step by step.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import Channel, apply, distance
from .dilation import Dilation
from .linalg import complete_unitary, dagger, eig_hermitian
from .states import basis_state, projector, purity, validate_density_matrix
from .tolerances import TOLS

NOT_REALIZABLE = "NOT_REALIZABLE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True, eq=False)
class CounterexampleParams:
    """Parameters of a family member.

    Attributes:
        d: initial-system dimension, ≥ 2.
        d_fin: final-system dimension, ≥ 2.
        rho_target: the mixed image of |d−1⟩⟨d−1|, a d_fin × d_fin density
            matrix with purity < 1 − 1e-10; for d = 2 it must additionally
            satisfy ⟨0'|ρ'|0'⟩ > 1e-10.

    Raises:
        ValueError: "target image must be mixed" if rho_target is pure;
            "d=2 requires overlap with |0'⟩" if d == 2 and ⟨0'|ρ'|0'⟩
            vanishes; "shape mismatch" on dimension errors.
    """

    d: int
    d_fin: int
    rho_target: np.ndarray

    def __post_init__(self):
        if int(self.d) != self.d or int(self.d_fin) != self.d_fin:
            raise ValueError("dimensions must be integers")
        if self.d < 2 or self.d_fin < 2:
            raise ValueError("dimensions must be at least 2")
        rho = validate_density_matrix(self.rho_target)
        if rho.shape != (self.d_fin, self.d_fin):
            raise ValueError("shape mismatch")
        if purity(rho) >= 1.0 - TOLS.pure_purity_gap:
            raise ValueError("target image must be mixed")
        if self.d == 2 and rho[0, 0].real <= 1e-10:
            raise ValueError("d=2 requires overlap with |0'⟩")
        object.__setattr__(self, "rho_target", rho)

    @property
    def overlap(self) -> float:
        """⟨0'|ρ'|0'⟩ — the overlap of the mixed image with the pure image."""
        return float(self.rho_target[0, 0].real)


def build_counterexample(p: CounterexampleParams) -> Channel:
    """Construct the family member as a Kraus channel.

    Kraus operators: |0'⟩⟨i| for each collapsing basis state i < d−1, plus
    √λ_k |e_k⟩⟨d−1| for each spectral component ρ' = Σ λ_k |e_k⟩⟨e_k|. The
    set is minimal (the vectorized operators are mutually orthogonal) and
    reproduces the family action formula exactly.
    """
    ops = []
    for i in range(p.d - 1):
        op = np.zeros((p.d_fin, p.d), dtype=complex)
        op[0, i] = 1.0
        ops.append(op)
    lam, vecs = eig_hermitian(p.rho_target)
    for k in range(p.d_fin):
        if lam[k] <= TOLS.env_spectrum_cutoff:
            continue
        op = np.zeros((p.d_fin, p.d), dtype=complex)
        op[:, p.d - 1] = np.sqrt(lam[k]) * vecs[:, k]
        ops.append(op)
    return Channel.from_kraus(ops)


def implementing_unitary(d: int, d_fin: int, alpha: complex, beta: complex) -> Dilation:
    """Explicit dilation of the rank-2 family member with a 2-dim environment.

    The unitary acts on initial ⊗ final ⊗ environment as the identity on
    every joint basis state except

        |d−1⟩|0'⟩|0⟩ ↦ α|d−1⟩|0'⟩|0⟩ + β|d−1⟩|1'⟩|1⟩,

    (with the paired column fixed by unitarity), and the final ⊗ environment
    factors start in |0'⟩|0⟩. The induced channel is the family member with
    ρ' = |α|²|0'⟩⟨0'| + |β|²|1'⟩⟨1'|.

    Raises:
        ValueError: "coefficients must be nonzero" if α or β vanishes;
            "coefficients must be normalized" unless |α|² + |β|² = 1 within
            1e-12.
    """
    if d < 2 or d_fin < 2:
        raise ValueError("dimensions must be at least 2")
    alpha = complex(alpha)
    beta = complex(beta)
    if alpha == 0 or beta == 0:
        raise ValueError("coefficients must be nonzero")
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > TOLS.state_norm:
        raise ValueError("coefficients must be normalized")
    d_env = 2
    block = d_fin * d_env
    side = d * block
    hold = (d - 1) * block          # index of |d−1⟩|0'⟩|0⟩
    flip = (d - 1) * block + 1 * d_env + 1  # index of |d−1⟩|1'⟩|1⟩
    unitary = np.eye(side, dtype=complex)
    unitary[hold, hold] = alpha
    unitary[flip, hold] = beta
    unitary[hold, flip] = -np.conj(beta)
    unitary[flip, flip] = np.conj(alpha)
    env_state = projector(basis_state(block, 0))
    return Dilation(d_in=d, d_fin=d_fin, d_env=d_env, unitary=unitary, env_state=env_state)


@dataclass(frozen=True, eq=False)
class NonRealizabilityCertificate:
    """Outcome of the analytic argument, with an auditable narrative.

    ``claim`` is NOT_REALIZABLE or INCONCLUSIVE. The numeric fields document
    the binding instance of the counting argument: realizing the collapse
    with a rank-``rank_tested`` initialization would force
    ``vectors_required`` orthonormal vectors into the
    ``dimension_available``-dimensional initial space.
    """

    claim: str
    rank_tested: int
    vectors_required: int
    dimension_available: int
    decoherence_contradiction: bool
    d2_branch_used: bool
    narrative: tuple


def certify_nonrealizable(p: CounterexampleParams) -> NonRealizabilityCertificate:
    """Prove that a family member admits no realization by a unitary on
    initial ⊗ final with the final system initialized in a fixed state.

    The argument walks every possible rank r of the initialization:
    r ≥ 2 dies by counting orthonormal vectors (r(d−1) > d) except the
    r = 2, d = 2 case, which dies by the overlap condition; r = 1 (pure)
    dies because total decoherence would force the mixed image to be pure.
    Each deduction is recorded as one narrative line.

    Never raises on family violations: if the parameters somehow fail the
    family's own preconditions the claim is INCONCLUSIVE.
    """
    d, d_fin = p.d, p.d_fin
    target_purity = purity(p.rho_target)

    problems = []
    if target_purity >= 1.0 - TOLS.pure_purity_gap:
        problems.append(
            f"target image has purity {target_purity:.12g} >= 1 - 1e-10: "
            "not truly mixed, the argument does not apply"
        )
    if d == 2 and p.rho_target[0, 0].real <= 1e-10:
        problems.append(
            "d = 2 with <0'|rho'|0'> = 0: the rank-2 branch of the argument "
            "does not apply"
        )
    if problems:
        return NonRealizabilityCertificate(
            claim=INCONCLUSIVE,
            rank_tested=0,
            vectors_required=0,
            dimension_available=d,
            decoherence_contradiction=False,
            d2_branch_used=False,
            narrative=tuple(problems),
        )

    steps = [
        f"family channel: |i><i| -> |0'><0'| for i = 0..{d - 2}, "
        f"|{d - 1}><{d - 1}| -> rho' with purity {target_purity:.12g} < 1, "
        "and superpositions with |" + str(d - 1) + "> totally decohere",
        "a candidate realization is a unitary on the initial (x) final space "
        "with the final system initialized in a fixed state of some rank r",
    ]
    for r in range(2, d_fin + 1):
        if d == 2 and r == 2:
            overlap = p.overlap
            steps.extend(
                [
                    "d = 2: counting is silent for a rank-2 initialization "
                    "(2 vectors fit in a 2-dimensional space), so examine its "
                    "structure directly",
                    "a rank-2 initialization is p|0'><0'| + (1-p)|1'><1'| with "
                    "0 < p < 1; sending |0><0| to the same pure state from both "
                    "eigenvectors forces, up to relabeling, |0>|0'> -> |0>|0'> "
                    "and |0>|1'> -> |1>|0'>",
                    "unitarity then forces the images of |1>|0'> and |1>|1'> "
                    "into the orthogonal complement, so the image of |1><1| "
                    "has no |0'> component: <0'|image|0'> = 0",
                    f"but the family requires <0'|rho'|0'> = {overlap:.12g} != 0 "
                    "— contradiction, so no rank-2 initialization exists",
                ]
            )
            continue
        required = r * (d - 1)
        steps.append(
            f"rank {r}: each initialization eigenvector must carry every "
            f"collapsing basis state to the same pure output, forcing "
            f"{r}*({d}-1) = {required} orthonormal vectors in the "
            f"{d}-dimensional initial space: {required} > {d} — impossible"
        )
    steps.append(
        f"rank 1: with a pure initialization, total decoherence forces the "
        f"joint image of |{d - 1}>|0'> to have no component on the other "
        f"initial basis states, so the image of |{d - 1}><{d - 1}| would be "
        f"pure — contradicting purity(rho') = {target_purity:.12g} < 1"
    )
    steps.append(
        "no initialization of any rank realizes the channel: NOT_REALIZABLE"
    )
    return NonRealizabilityCertificate(
        claim=NOT_REALIZABLE,
        rank_tested=2,
        vectors_required=2 * (d - 1),
        dimension_available=d,
        decoherence_contradiction=True,
        d2_branch_used=(d == 2),
        narrative=tuple(steps),
    )


@dataclass(frozen=True, eq=False)
class FamilyMatch:
    """Result of detecting family membership of an arbitrary channel.

    ``params`` describe the channel after rotating the common pure image to
    |0'⟩ (the family is closed under output rotations, and the certificate
    is basis-independent). ``rotation`` is that output rotation and
    ``choi_distance`` the Frobenius distance to the rebuilt family channel.
    """

    params: CounterexampleParams
    choi_distance: float
    rotation: np.ndarray


def match_family(channel: Channel, atol: float = TOLS.family_match) -> FamilyMatch | None:
    """Detect whether a channel belongs to the family, in any output basis.

    Checks that the images of |i⟩⟨i| for i < d−1 agree with a common pure
    state within ``atol``, that the image of |d−1⟩⟨d−1| is truly mixed, and
    that the whole channel matches the rebuilt family member within ``atol``
    in Choi distance (which covers the total-decoherence requirement).

    Returns None if the channel is not in the family or fails a family
    precondition (e.g. d = 2 with zero overlap).
    """
    d, d_fin = channel.d_in, channel.d_out
    if d < 2 or d_fin < 2:
        return None
    images = [apply(channel, projector(basis_state(d, i))) for i in range(d)]
    lam, vecs = eig_hermitian(images[0])
    if lam[0] < 1.0 - TOLS.family_match:
        return None
    phi = vecs[:, 0]
    pure_image = projector(phi)
    if any(np.linalg.norm(images[i] - pure_image) > atol for i in range(d - 1)):
        return None
    rho_mixed = images[d - 1]
    if purity(rho_mixed) >= 1.0 - TOLS.pure_purity_gap:
        return None

    # Rebuild the family member around (phi, rho_mixed) in the original basis
    # and require global agreement, which checks total decoherence too.
    ops = []
    for i in range(d - 1):
        op = np.zeros((d_fin, d), dtype=complex)
        op[:, i] = phi
        ops.append(op)
    mu, evecs = eig_hermitian(rho_mixed)
    for k in range(d_fin):
        if mu[k] <= TOLS.env_spectrum_cutoff:
            continue
        op = np.zeros((d_fin, d), dtype=complex)
        op[:, d - 1] = np.sqrt(mu[k]) * evecs[:, k]
        ops.append(op)
    candidate = Channel.from_kraus(ops)
    dist = distance(channel, candidate)
    if dist > atol:
        return None

    rotation = dagger(complete_unitary(phi))  # sends phi to |0'>
    rho_canonical = rotation @ rho_mixed @ dagger(rotation)
    try:
        params = CounterexampleParams(d, d_fin, rho_canonical)
    except ValueError:
        return None
    return FamilyMatch(params=params, choi_distance=float(dist), rotation=rotation)
