"""Numerical laboratory for quantum atom optics.

Collective-spin ensembles, Gross-Pitaevskii fields, open-system dynamics,
interferometry statistics, entanglement criteria and ensemble quantum
algorithms, plus a CLI that regenerates the reference curves as data files.
"""

__version__ = "0.1.0"

from . import opensys, quasiprob, spinalg, squeeze, thermo  # noqa: F401
