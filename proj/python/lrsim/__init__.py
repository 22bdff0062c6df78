"""Deterministic simulator for generalized Lindblad rate equations.

Block-diagonal bipartite states evolve under coupled Lindblad-type equations
indexed by a classical label; the label-summed marginal shows the
non-Markovian decay laws (power law, stretched exponential, multiexponential
survival) this package reproduces, together with the gas-collision rate
coefficients that feed the momentum-lattice master equation.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
