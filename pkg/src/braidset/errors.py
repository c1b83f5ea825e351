"""Exception hierarchy shared by every module."""

from __future__ import annotations


class BraidSetError(Exception):
    """Base class. ``exit_code`` is what the command line reports."""

    exit_code = 2


class MalformedDocument(BraidSetError):
    pass


class UnknownLabel(BraidSetError):
    pass


class IncompleteTable(BraidSetError):
    pass


class DuplicateEntry(BraidSetError):
    pass


class NotAPermutation(BraidSetError):
    pass


class CarrierOverlap(BraidSetError):
    pass


class PrerequisiteFailed(BraidSetError):
    """An operation needs a property the input does not have."""

    exit_code = 1

    def __init__(self, prerequisite: str, detail: str = ""):
        self.prerequisite = prerequisite
        self.detail = detail
        msg = f"prerequisite failed: {prerequisite}"
        super().__init__(f"{msg} ({detail})" if detail else msg)


class NotRegular(BraidSetError):
    """The ground map Y x X -> X x Y is not a bijection."""

    exit_code = 1


class AxiomViolation(BraidSetError):
    exit_code = 1

    def __init__(self, axiom: str, witness: object = None):
        self.axiom = axiom
        self.witness = witness
        super().__init__(f"axiom {axiom} violated" + (f" at {witness}" if witness is not None else ""))


class TheoremViolation(BraidSetError):
    """An implication failed on an input that satisfies its hypotheses."""

    exit_code = 1

    def __init__(self, report: object):
        self.report = report
        super().__init__(f"theorem check failed on valid hypotheses:\n{report}")


class DegreeExceeded(BraidSetError):
    pass


class BudgetExceeded(BraidSetError):
    exit_code = 3


class SearchBudgetExceeded(BudgetExceeded):
    pass
