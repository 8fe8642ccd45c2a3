"""Polarisation-controlled cavity magnon-polariton toolkit.

Thin python layer over the C++ core: parameter presets, Polder
susceptibilities, two-port cavity fields and energies, perturbative and
input-output coupling models, sweep maps, a macrospin LLG integrator, and
Lorentzian fitting.
"""

from ._cmpol import *  # noqa: F401,F403
from ._cmpol import __doc__ as _core_doc  # noqa: F401
