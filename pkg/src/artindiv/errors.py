"""Exception types shared across the package."""


class ArtinDivError(Exception):
    """Base class; ``reason`` is a one-line machine-parseable tag."""

    reason = "error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.reason)


class CapExceeded(ArtinDivError):
    reason = "cap-exceeded"


class DegreeMismatch(ArtinDivError):
    reason = "degree-mismatch"


class NotASubgroup(ArtinDivError):
    reason = "not-a-subgroup"


class NotNormal(ArtinDivError):
    reason = "not-normal"


class NotAbelian(ArtinDivError):
    reason = "not-abelian"


class NotDivisible(ArtinDivError):
    reason = "not-divisible"


class NotSquarefree(ArtinDivError):
    reason = "not-squarefree"


class InconsistentCharacter(ArtinDivError):
    reason = "inconsistent-character"


class GroupMismatch(ArtinDivError):
    reason = "group-mismatch"


class NotCertified(ArtinDivError):
    reason = "irreducibility-not-certified"


class WitnessNotFound(ArtinDivError):
    reason = "witness-not-found"


class ParseError(ArtinDivError):
    reason = "parse-error"
