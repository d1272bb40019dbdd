"""SU(1,1) coherent states and their large-N classical limit."""

from ._cohlim import *  # noqa: F401,F403
from ._cohlim import DomainError, TruncationError, TruncationGuardError  # noqa: F401

__version__ = "0.1.0"
