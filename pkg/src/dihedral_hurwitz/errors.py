class HurwitzError(Exception):
    """Base class for every error raised by this package."""


class ContextMismatch(HurwitzError, ValueError):
    pass


class ParseError(HurwitzError, ValueError):
    def __init__(self, message, text="", position=0):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position


class InvalidHurwitzVector(HurwitzError, ValueError):
    """A tuple failed one of the three Hurwitz vector conditions."""

    condition = "Invalid"

    def label(self):
        return self.condition


class IdentityEntry(InvalidHurwitzVector):
    condition = "IdentityEntry"

    def __init__(self, index):
        # 1-based, like the braid generator indices
        self.index = index
        super().__init__(f"entry {index} is the identity")

    def label(self):
        return f"IdentityEntry({self.index})"


class NotGenerating(InvalidHurwitzVector):
    condition = "NotGenerating"

    def __init__(self, subgroup_size, group_order):
        self.subgroup_size = subgroup_size
        self.group_order = group_order
        super().__init__(
            f"entries generate a subgroup of order {subgroup_size}, not {group_order}"
        )

    def label(self):
        return f"NotGenerating({self.subgroup_size})"


class ProductNotIdentity(InvalidHurwitzVector):
    condition = "ProductNotIdentity"

    def __init__(self, product):
        self.product = product
        super().__init__(f"product of the entries is {product}, not e")

    def label(self):
        return f"ProductNotIdentity({self.product})"


class EmptyVector(InvalidHurwitzVector):
    condition = "EmptyVector"

    def __init__(self):
        super().__init__("a Hurwitz vector needs at least one entry")


class NotRealizable(HurwitzError):
    """No Hurwitz vector carries the requested numerical type."""

    def __init__(self, numerical_type, reason):
        self.numerical_type = numerical_type
        self.reason = reason
        super().__init__(f"{numerical_type} is not realizable: {reason}")


class PreconditionError(HurwitzError, ValueError):
    pass


class BudgetExceeded(HurwitzError):
    def __init__(self, required, configured):
        self.required = required
        self.configured = configured
        super().__init__(f"needs {required} states, budget is {configured}")


class InternalReductionFailure(HurwitzError, RuntimeError):
    pass


class OracleInvariantViolation(HurwitzError, AssertionError):
    """An invariant that must hold along every edge of the orbit graph failed."""
