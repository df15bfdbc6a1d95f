"""Exception hierarchy shared across the package."""


class IdealOrderError(Exception):
    """Base class for all domain errors raised by this package."""


class InvalidInputError(IdealOrderError):
    """An argument violates a documented precondition."""


class NotCoprimeError(IdealOrderError):
    """Hensel lifting was asked to lift parts that share a factor mod p."""


class NeedsMorePrecision(IdealOrderError):
    """Two p-adic factors are indistinguishable at the current precision."""

    def __init__(self, k: int, message: str | None = None):
        self.k = k
        super().__init__(message or f"factors indistinguishable at precision k={k}")


class PrecisionExhausted(IdealOrderError):
    """Escalation hit its cap without reaching a decision."""


class FixtureRequired(IdealOrderError):
    """Data beyond what the library can compute on its own is missing."""

    def __init__(self, p: int, detail: str):
        self.p = p
        self.detail = detail
        super().__init__(f"fixture data required for p={p}: {detail}")


class ValidationError(IdealOrderError):
    """A fixture document failed an invariant check."""

    def __init__(self, label: str, check: str):
        self.label = label
        self.check = check
        super().__init__(f"fixture {label!r} failed check: {check}")


class WrongPathError(IdealOrderError):
    """An operation restricted to unramified primes was called on p | disc(g)."""


class NoSuchIdealError(IdealOrderError):
    """A label's index is outside the range valid for its norm."""

    def __init__(self, norm: int, index: int, count: int):
        self.norm = norm
        self.index = index
        self.count = count
        super().__init__(
            f"no ideal {norm}.{index}: valid indices for norm {norm} are 1..{count}"
            if count else f"no ideal {norm}.{index}: no ideal has norm {norm}"
        )
