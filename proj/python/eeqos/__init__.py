"""Energy-efficient power control under statistical delay-outage constraints.

Thin wrapper over the C++ core: effective bandwidth/capacity of the
Bernoulli-exponential source over a Nakagami-m block-fading channel, the
minimum-power solver, the analytic delay/queue tail formulas, and the
discrete-time FIFO queue simulator used to validate them.
"""

from eeqos._core import *  # noqa: F401,F403
from eeqos._core import __version__  # noqa: F401
