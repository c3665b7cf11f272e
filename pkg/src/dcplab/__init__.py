"""Displacement composition phases, three ways.

Shifting a system in position and then in momentum differs from the reverse
order by a pure phase proportional to the enclosed phase-space area.  This
package measures that phase in three independent pictures and checks they
agree:

- fock: displacement operators on a truncated harmonic-oscillator basis,
- waves: position and spatial-frequency shifts of periodic sampled waves,
- actions: classical action integrals around phase-space polygons,

plus ``interferometer``, a simulator of the unequal-arm fiber/AOM instrument
that measures the wave version as a fringe-phase slope.

The quantum and wave modules both expose ``loop_phase``; import the modules
rather than star-importing names.
"""

from . import actions, fock, interferometer, svgplot, waves

__version__ = "0.1.0"

__all__ = ["actions", "fock", "interferometer", "svgplot", "waves", "__version__"]
