"""Exception hierarchy shared by every module of the package."""


class ApportionmentError(Exception):
    """Base class for all errors raised by parity_apportion."""


class InvalidSignpost(ApportionmentError, ValueError):
    pass


class OutOfRange(ApportionmentError, IndexError):
    """A custom signpost table was queried past its last entry."""


class AdamsHouseTooSmall(ApportionmentError):
    """With a zero first signpost every positive-vote party needs a seat."""

    def __init__(self, house: int, positive_parties: int):
        super().__init__(
            f"house size {house} is smaller than the {positive_parties} parties with votes"
        )
        self.house = house
        self.positive_parties = positive_parties


class TieExplosion(ApportionmentError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} tied solutions exceed the cap of {cap}")
        self.count = count
        self.cap = cap


class MarginalMismatch(ApportionmentError, ValueError):
    pass


class NotEnoughCandidates(ApportionmentError):
    def __init__(self, party: int, wanted: int, available: int):
        super().__init__(f"party {party} needs {wanted} candidates but has {available}")
        self.party = party
        self.wanted = wanted
        self.available = available


class Stuck(ApportionmentError):
    """Parity correction found no same-party replacement for the removed candidate."""

    def __init__(self, party: int, removed: str, party_name: str | None = None):
        label = party_name if party_name is not None else str(party)
        super().__init__(
            f"parity correction is stuck: party {label} has no unelected candidate "
            f"of the under-represented type to replace {removed}"
        )
        self.party = party
        self.party_name = label
        self.removed = removed


class Infeasible(ApportionmentError):
    pass


class NotStrictlyPositive(ApportionmentError, ValueError):
    pass


class NonConvergence(ApportionmentError):
    def __init__(self, residual: float, iterations: int):
        super().__init__(f"no convergence after {iterations} iterations (residual {residual:g})")
        self.residual = residual
        self.iterations = iterations


class TooLarge(ApportionmentError):
    pass
