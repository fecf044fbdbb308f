"""
Stinespring dilations: channels as unitaries on a larger space
===============================================================

Every channel is a unitary acting jointly on the system and an
environment, followed by discarding everything but the final system.
This demo dilates a qubit amplitude-damping channel, recovers the
channel from its dilation, and decomposes a mixed-environment dilation
into its pure-environment components.
"""

import numpy as np

from envchan import (
    Channel,
    Dilation,
    channel_from_dilation,
    decompose_mixed_env,
    distance,
    mix,
    stinespring_from_kraus,
)

rng = np.random.default_rng(7)

# Amplitude damping: |1> decays to |0> with probability gamma.
gamma = 0.4
damping = Channel.from_kraus([
    np.array([[1, 0], [0, np.sqrt(1 - gamma)]], dtype=complex),
    np.array([[0, np.sqrt(gamma)], [0, 0]], dtype=complex),
])

# Dilate: one environment dimension per Kraus operator, so a qubit
# channel never needs more than a 4-dimensional environment.
dilation = stinespring_from_kraus(damping.kraus)
print("environment dimension:", dilation.d_env)
print("joint unitary shape:", dilation.unitary.shape)

# Tracing the environment back out reproduces the channel exactly.
recovered = channel_from_dilation(dilation)
print("round-trip distance:", distance(recovered, damping))

# A dilation may also start the environment in a *mixed* state. Such a
# dilation is a probabilistic mixture of pure-environment dilations, one
# per eigenvector of the environment state.
def haar_unitary(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))

mixed_env = Dilation(
    d_in=2,
    d_fin=2,
    d_env=0,  # the final system itself serves as the environment
    unitary=haar_unitary(4, rng),
    env_state=np.diag([0.7, 0.3]).astype(complex),
)
components = decompose_mixed_env(mixed_env)
print("\nmixed environment splits into", len(components), "pure components")
for c in components:
    print(f"  weight {c.weight:.3f}")

# Recombining the components as a convex mixture of channels gives back
# the channel of the mixed-environment dilation.
recombined = mix([c.channel for c in components], [c.weight for c in components])
print("decomposition identity distance:",
      distance(recombined, channel_from_dilation(mixed_env)))
