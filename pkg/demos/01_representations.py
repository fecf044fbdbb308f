"""
Channel representations: Kraus operators and the Choi matrix
=============================================================

A quantum channel can be written as a set of Kraus operators or,
equivalently, as its Choi matrix. This demo builds a qubit dephasing
channel both ways, converts between the representations, applies the
channel to states, and checks extremality.
"""

import numpy as np

from envchan import (
    Channel,
    apply,
    distance,
    is_extremal,
    maximally_mixed,
    mix,
    identity_channel,
    projector,
    basis_state,
)

# A dephasing channel: keep the state with amplitude sqrt(1-p), apply Z
# with amplitude sqrt(p). Superpositions lose coherence, populations stay.
p = 0.25
kraus = [
    np.sqrt(1 - p) * np.eye(2, dtype=complex),
    np.sqrt(p) * np.diag([1.0, -1.0]).astype(complex),
]
dephasing = Channel.from_kraus(kraus)
print("dephasing channel:", dephasing.d_in, "->", dephasing.d_out)
print("number of Kraus operators:", len(dephasing.kraus))

# The Choi matrix is the channel applied to half of a maximally entangled
# pair; it is positive semidefinite with partial trace equal to the
# identity. Its rank equals the minimal number of Kraus operators.
choi = dephasing.choi
print("\nChoi matrix (real part):")
print(np.round(choi.matrix.real, 6))
print("Choi rank:", np.sum(np.linalg.eigvalsh(choi.matrix) > 1e-10))

# Round trip: Choi -> minimal Kraus -> Choi is the same channel.
rebuilt = Channel.from_choi(choi)
print("round-trip distance:", distance(rebuilt, dephasing))

# Action on states. The |+> state loses its off-diagonal coherence by a
# factor 1 - 2p; the basis states are untouched.
plus = (basis_state(2, 0) + basis_state(2, 1)) / np.sqrt(2)
print("\ninput |+><+|:")
print(np.round(projector(plus).real, 6))
print("output:")
print(np.round(apply(dephasing, projector(plus)).real, 6))
print("expected off-diagonal factor:", 1 - 2 * p)

# Extremality: a unitary channel is extremal in the convex set of
# channels; an even coin flip between identity and Z (= dephasing at
# p = 1/2) is not.
print("\nidentity channel extremal?", is_extremal(identity_channel(2).kraus))
coin_flip = mix([identity_channel(2), Channel.from_kraus([kraus[1] / np.sqrt(p)])],
                [0.5, 0.5])
print("even I/Z mixture extremal?", is_extremal(coin_flip.kraus))

# Applying any channel to the maximally mixed state keeps it a valid
# density matrix (here: dephasing is unital, so it is unchanged).
print("\ndephasing(I/2) == I/2?",
      np.allclose(apply(dephasing, maximally_mixed(2)), maximally_mixed(2)))
