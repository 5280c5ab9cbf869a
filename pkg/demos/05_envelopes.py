"""
Sealed envelopes
================

Alice and Bob hold different aces. Before opening, P(Bob has hearts) = 1/2.
After Alice looks at her own card the probability is 0 or 1. Nothing travels
between them; the update is conditioning.
"""

# %%
from spinframe import RngStream
from spinframe.samplers import run_envelopes

summary = run_envelopes(10_000, RngStream(master_seed=5))
for t in summary.transcripts[:5]:
    print(f"prior {t.prior_prob}  Alice sees {t.observed_card.value}  ->  P(Bob has A_h) = {t.posterior_prob}")
print("fraction of deals with Bob on hearts:", summary.bob_hearts_frequency)
