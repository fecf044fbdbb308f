"""
Searching for a mixed-environment realization
==============================================

Whether a given d -> d' channel can be produced by a unitary on the
initial (x) final space with the final system starting in some fixed
(possibly mixed) state is a nonconvex feasibility problem. This demo
runs the multi-restart search on a channel that is realizable by
construction, then on the counterexample family member, and compares
the outcomes.
"""

import numpy as np

from envchan import (
    CounterexampleParams,
    Dilation,
    SearchConfig,
    build_counterexample,
    channel_from_dilation,
    parameter_count,
    search_mixed_env_realization,
)

rng = np.random.default_rng(21)

# The search space: a unitary on the d*d' joint space plus an environment
# spectrum, parameter_count(d, d') real degrees of freedom.
print("search-space dimensions:")
for d, dp in [(2, 2), (3, 2), (2, 3)]:
    print(f"  d={d}, d'={dp}: {parameter_count(d, dp)} parameters")

# A realizable target: pick a random joint unitary and environment
# spectrum, build the channel they induce, then ask the search to find
# *a* realization (not necessarily the same one).
def haar_unitary(dim, rng):
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))

target = channel_from_dilation(Dilation(
    d_in=2, d_fin=2, d_env=0,
    unitary=haar_unitary(4, rng),
    env_state=np.diag([0.8, 0.2]).astype(complex),
))
config = SearchConfig(restarts=10, seed=1)
found = search_mixed_env_realization(target, config)
print("\nrealizable target:")
print("  verdict:", found.verdict)
print("  best residual:", found.best_residual)
print("  restarts used:", len(found.residual_history))
print("  recovered environment spectrum:", np.round(found.best_env_spectrum, 6))

# The counterexample: the same search plateaus far from zero, restart
# after restart — numerical evidence agreeing with the analytic
# certificate.
counterexample = build_counterexample(
    CounterexampleParams(2, 2, np.diag([0.5, 0.5]))
)
blocked = search_mixed_env_realization(counterexample, config)
print("\ncounterexample:")
print("  verdict:", blocked.verdict)
print("  best residual:", blocked.best_residual)
print("  per-restart residuals:",
      [round(r, 4) for r in blocked.residual_history])
