"""Two giant atoms coupled to a waveguide: steady states, dressed-state rates,
entanglement, photon statistics and SLH network checks."""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

import numpy as _np

PI = _np.pi


def nested_model(spacing_over_pi=0.01, rabi=1.5, detuning=0.0):
    """Driven nested pair with kappa*dx = spacing_over_pi * pi."""
    return model(make_layout("nested", spacing_over_pi * PI), DriveSpec(rabi, detuning))  # noqa: F405
