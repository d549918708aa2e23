"""mmWave generative channel model.

A two-stage generative model for air-to-ground millimeter-wave links: a
link-state classifier followed by a conditional variational autoencoder over
per-link path vectors, plus the evaluation and link-budget tooling around it.
"""

__version__ = "0.1.0"
