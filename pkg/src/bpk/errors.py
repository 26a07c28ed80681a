"""Exception hierarchy.

Every user-facing failure carries a stable ``code`` so the CLI can map it to
an exit status without string matching.
"""


class BPKError(Exception):
    code = "error"


class InvalidNetwork(BPKError):
    code = "InvalidNetwork"


class MissingConsecutivePair(InvalidNetwork):
    code = "MissingConsecutivePair"

    def __init__(self, layer: int):
        self.layer = layer
        super().__init__(
            f"MissingConsecutivePair({layer}): layers {layer} and {layer + 1} "
            "are not connected, so the network has no unique underlying "
            "substructure path"
        )


class BadWidth(InvalidNetwork):
    code = "BadWidth"


class BadPair(InvalidNetwork):
    code = "BadPair"


class PathCountGuardExceeded(BPKError):
    code = "PathCountGuardExceeded"

    def __init__(self, cap: int, what: str = "paths"):
        self.cap = cap
        super().__init__(f"PathCountGuardExceeded({cap}): more than {cap} {what}")


class RankShortfall(BPKError):
    code = "RankShortfall"


class Inconsistent(BPKError):
    """Target vector is not in the span of the given basis."""

    code = "Inconsistent"
