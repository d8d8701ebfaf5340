"""Exception hierarchy shared by all laddertool modules."""


class LadderError(Exception):
    """Base class for every error raised by laddertool."""


class LadderValidationError(LadderError):
    """A point set failed the ladder axioms.

    ``violations`` lists every problem found, not just the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations) or "invalid ladder")


class Empty:
    def __str__(self):
        return "Empty: no points"

    def __eq__(self, other):
        return isinstance(other, Empty)

    def __hash__(self):
        return hash("Empty")


class ClosureViolation:
    def __init__(self, first, second, missing):
        self.first = first
        self.second = second
        self.missing = tuple(missing)

    def __str__(self):
        return f"ClosureViolation: {self.first}, {self.second} missing {list(self.missing)}"

    def __eq__(self, other):
        return (isinstance(other, ClosureViolation)
                and (self.first, self.second, self.missing) == (other.first, other.second, other.missing))

    def __hash__(self):
        return hash((self.first, self.second, self.missing))


class EmptyRow:
    def __init__(self, row):
        self.row = row

    def __str__(self):
        return f"EmptyRow: {self.row}"

    def __eq__(self, other):
        return isinstance(other, EmptyRow) and other.row == self.row

    def __hash__(self):
        return hash(("row", self.row))


class EmptyCol:
    def __init__(self, col):
        self.col = col

    def __str__(self):
        return f"EmptyCol: {self.col}"

    def __eq__(self, other):
        return isinstance(other, EmptyCol) and other.col == self.col

    def __hash__(self):
        return hash(("col", self.col))


class NotPathConnected(LadderError):
    pass


class NotTConnected(LadderError):
    pass


class RequiresTGreaterThan2(LadderError):
    pass


class InvalidResidualLadder(LadderError):
    pass


class ComponentNotLadder(LadderError):
    pass


class CapExceeded(LadderError):
    def __init__(self, message, count=None):
        self.count = count
        super().__init__(message)


class DecompositionInvariantFailure(LadderError):
    def __init__(self, invariant, witness=None):
        self.invariant = invariant
        self.witness = witness
        super().__init__(f"{invariant}: witness {witness}")


class SupportNotInLadder(LadderError):
    pass


class AssumptionDViolated(LadderError):
    """Raised when a canonical class is requested for a ladder violating (d).

    Such ladders must be decomposed first (see ``ladder.decompose``).
    """


class NoSuchIndex(LadderError):
    pass


class ParseError(LadderError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + where)
