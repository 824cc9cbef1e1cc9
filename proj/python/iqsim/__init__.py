"""Subspace IQ-imbalance estimation and compensation for low-IF receivers.

Thin python surface over the C++ core: waveform generation, Jakes fading,
the IQI front-end model, the subspace and blind estimators, output-SIR
metrics and the Monte Carlo sweep harness.
"""

from ._iqsim import *  # noqa: F401,F403
from ._iqsim import __all__, __version__  # noqa: F401
