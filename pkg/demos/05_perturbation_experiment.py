"""
The counterexample is not isolated: sampling its neighborhood
==============================================================

Mix the counterexample with small random channel perturbations and run
the realization search on every sample. Near the counterexample the
searcher keeps failing — consistent with a whole ball of non-realizable
channels — while the same experiment around the identity channel finds
realizations every time. Small sample counts keep this demo quick; the
acceptance suite runs the full-size version.
"""

import numpy as np

from envchan import (
    CounterexampleParams,
    SearchConfig,
    build_counterexample,
    identity_channel,
    perturbation_experiment,
)

config = SearchConfig(restarts=12, seed=1)
radius = 0.01
samples = 4

center = build_counterexample(CounterexampleParams(2, 2, np.diag([0.5, 0.5])))
print(f"sampling {samples} channels within mixing radius {radius} "
      "of the counterexample...")
near_ce = perturbation_experiment(center, radius, samples, config)
print("  verdicts:", list(near_ce.verdicts))
print("  best residuals:", [f"{r:.3e}" for r in near_ce.best_residuals])
print("  fraction flagged:", near_ce.fraction_likely_not_realizable)

print(f"\nsame experiment around the identity channel...")
near_id = perturbation_experiment(identity_channel(2), radius, samples, config)
print("  verdicts:", list(near_id.verdicts))
print("  best residuals:", [f"{r:.3e}" for r in near_id.best_residuals])
print("  fraction flagged:", near_id.fraction_likely_not_realizable)

print("\n" + near_ce.note)
