"""Atom-interferometer signal and decoherence estimates for long-range-force
backgrounds: gravitating baths, close fly-bys, and charged cosmic rays, with
Monte Carlo and trajectory-integration oracles behind every closed form."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
