"""Exception hierarchy shared by all modules."""


class TuranError(Exception):
    """Base class for every error raised by this package."""


class HypothesisViolated(TuranError, ValueError):
    """Parameters do not satisfy the hypotheses of a construction."""


class NotPrime(HypothesisViolated):
    def __init__(self, p):
        super().__init__(f"{p} is not prime")
        self.p = p


class NotPrimePower(HypothesisViolated):
    def __init__(self, q):
        super().__init__(f"{q} is not a prime power")
        self.q = q


class SizeLimitExceeded(HypothesisViolated):
    pass


class OrderDoesNotDivide(HypothesisViolated):
    def __init__(self, t, group_order):
        super().__init__(f"subgroup order {t} does not divide {group_order}")
        self.t = t
        self.group_order = group_order


class InvalidSubfield(HypothesisViolated):
    pass


class OutOfRange(TuranError, ValueError):
    pass


class FieldMismatch(TuranError, TypeError):
    pass


class DivisionByZero(TuranError, ZeroDivisionError):
    pass


class ZeroPair(TuranError, ValueError):
    pass


class BadArity(TuranError, ValueError):
    pass


class BudgetExceeded(TuranError):
    def __init__(self, needed, budget):
        super().__init__(f"search needs {needed} steps, budget is {budget}")
        self.needed = needed
        self.budget = budget


class MalformedFile(TuranError, ValueError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


class HeaderMismatch(MalformedFile):
    pass
