"""Structure-preserving solver for nonisothermal two-phase flow.

Thin Python surface over the compiled extension: build an initial state with
:func:`preset_initial_state`, advance it with :func:`advance` or :func:`run`,
and inspect conservation and entropy production via
:func:`conserved_quantities` and :func:`entropy_ledger`.  See the project
README for the command line interface and file formats.
"""

from ._chnst import *  # noqa: F401,F403

__version__ = "0.1.0"
