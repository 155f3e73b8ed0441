"""Kinematics, calibration and simulation toolkit for a steerable drilling robot.

The heavy lifting lives in the compiled extension ``_ctsdr``; this package
re-exports its public surface.
"""

from ._ctsdr import *  # noqa: F401,F403
from ._ctsdr import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
