class ZcgeError(Exception):
    """Base error for zcge."""


class RingMismatch(ZcgeError):
    pass


class NotMonic(ZcgeError):
    pass


class NotUnimodular(ZcgeError):
    pass


class NoSmallRemainder(ZcgeError):
    """No candidate remainder beats the divisor's norm."""


class BudgetExceeded(ZcgeError):
    """Search ran out of states; retry with a larger --budget."""

    def __init__(self, budget: int, spent: int, where: str = "search"):
        super().__init__(f"{where}: budget of {budget} states exhausted after {spent}")
        self.budget = budget
        self.spent = spent


class NotAUnit(ZcgeError):
    pass


class DetNotOne(ZcgeError):
    pass


class NotInvertible(ZcgeError):
    pass


class TooLarge(ZcgeError):
    pass


class SpecError(ZcgeError):
    """Malformed ring, element, word or matrix document."""


class VerificationFailed(ZcgeError):
    pass
