"""Error types and cost-cap plumbing shared by all modules."""

import os

# Hard limits.  FIELD_SIZE_CAP is structural (dlog tables live in memory);
# the enumeration cap may be raised through the environment for big runs.
FIELD_SIZE_CAP = 1 << 26
DEFAULT_COST_CAP = 10 ** 9

ENV_COST_CAP = "DWORKZETA_COST_CAP"


def get_cost_cap(override=None):
    """Enumeration budget in elementary operations for a single counting call."""
    if override is not None:
        return int(override)
    env = os.environ.get(ENV_COST_CAP)
    if env:
        return int(env)
    return DEFAULT_COST_CAP


class DworkZetaError(Exception):
    """Base class for all library errors."""


class InvalidInputError(DworkZetaError):
    """A precondition on user-supplied data does not hold."""


class CostCapError(DworkZetaError):
    """A computation would exceed its enumeration or memory budget.

    The offending parameter is named so callers can report it structurally.
    """

    def __init__(self, parameter, value, cap):
        self.parameter = parameter
        self.value = value
        self.cap = cap
        super().__init__(f"cost cap exceeded: {parameter}={value} > {cap}")


class CheckFailureError(DworkZetaError):
    """An internal cross-check (oracle equality, certificate, identity) failed."""


class CompletionError(DworkZetaError):
    """Functional-equation completion found zero or several candidates.

    `need_r` suggests the next power sum that would disambiguate.
    """

    def __init__(self, message, need_r=None):
        self.need_r = need_r
        super().__init__(message)
