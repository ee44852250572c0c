"""Exception hierarchy shared by every stage of the checker."""


class CheckerError(Exception):
    pass


class SortError(CheckerError):
    """A term violates the sorting discipline."""

    def __init__(self, term, expected, actual, message=None):
        self.term = term
        self.expected = expected
        self.actual = actual
        msg = message or f"expected {expected}, got {actual}"
        super().__init__(f"{msg} in {term!r}")


class DivisionByZero(CheckerError, ZeroDivisionError):
    pass


class ParseError(CheckerError):
    def __init__(self, line, column, message):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"{line}:{column}: {message}")


class UnknownPremise(ParseError):
    def __init__(self, step_id, premise_id, line=0, column=0):
        self.step_id = step_id
        self.premise_id = premise_id
        super().__init__(line, column, f"step {step_id} references unknown premise {premise_id}")


class AssumeMismatch(ParseError):
    def __init__(self, assume_id, line=0, column=0):
        self.assume_id = assume_id
        super().__init__(line, column, f"assumption {assume_id} matches no assertion of the problem")


class UnsupportedConstruct(CheckerError):
    pass


class EmptySortRisk(CheckerError):
    def __init__(self, sort_name):
        self.sort_name = sort_name
        super().__init__(f"sort {sort_name} is quantified over but has no non-emptiness witness")


class MissingVariable(CheckerError, KeyError):
    def __init__(self, index):
        self.index = index
        super().__init__(f"no value for variable index {index}")

    def __str__(self):
        return self.args[0]


# -- rule checking ----------------------------------------------------------

class RuleError(CheckerError):
    pass


class PivotNotFound(RuleError):
    def __init__(self, side):
        self.side = side
        super().__init__(f"pivot not found in premise {side}")


class ConclusionMismatch(RuleError):
    def __init__(self, expected, claimed=None):
        # args are already set by BaseException.__new__
        self.expected = expected
        self.claimed = claimed

    def __str__(self):
        # formatted on demand: bulk checking raises many of these
        return f"expected conclusion {self.expected}"


class EmptyPremises(RuleError):
    pass


class NotAnEquality(RuleError):
    pass


class NormalFormMismatch(RuleError):
    def __init__(self, difference):
        self.difference = difference
        super().__init__(f"normal forms differ by {difference}")


class ArityMismatch(RuleError):
    pass


class UnknownRule(RuleError):
    pass


class OpenAssumption(RuleError):
    """A derivation still depends on an undischarged local assumption."""


# -- solver process -----------------------------------------------------------

class SolverSpawnError(CheckerError):
    pass


class SolverOutputUnparsable(CheckerError):
    pass
