"""Exception types shared across the package."""


class RngfxError(Exception):
    """Base class for all package errors."""


class ZeroJsrSeed(RngfxError):
    """Raised when a seed would set the shift register to 0.

    0 is the fixed point of the xorshift transition, so a generator
    seeded there emits zeros forever. Rejecting it at construction is
    the only safe behavior.
    """


class NoConvergence(RngfxError):
    """Raised when table construction fails to bracket or refine a root.

    This signals an implementation bug (bad bracket, bad tolerance),
    not a user error.
    """


class CounterSaturation(RngfxError):
    """Raised when an 8-bit preimage counter hits 255.

    The census design assumes multiplicities far below 255 (the maps
    studied here top out at 13). Saturation means that assumption is
    wrong for the supplied map and the census result would be garbage.
    """


class EmptyBin(RngfxError):
    """Raised when a chi-square bin has expected count below 5.

    The chi-square approximation to the statistic's distribution is
    unreliable there; the caller must merge bins or collect more data.
    """


class NoDeviations(RngfxError):
    """Raised when a detection-size estimate is requested for eps == 0."""
