"""norm0: exact structure of Norm(Gamma0(N))/Gamma0(N).

The computation lives in norm0.core; norm0.qa holds the executable QA gates and
``python -m norm0`` is the command line.
"""

from __future__ import annotations

__version__ = "v0.4.0"
