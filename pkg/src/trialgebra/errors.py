"""Exception hierarchy shared by every module.

Errors that signal a mathematical fact about the input (not a composition
algebra, not a similarity, no triality solution) derive from
``MathematicalError``; exhausted search budgets derive from ``BudgetExhausted``.
The CLI maps the two families onto distinct exit codes.
"""


class TrialgebraError(Exception):
    pass


class MathematicalError(TrialgebraError):
    pass


class BudgetExhausted(TrialgebraError):
    pass


class FieldMismatch(TrialgebraError, ValueError):
    pass


class SingularMatrix(MathematicalError):
    pass


class NotASimilarity(MathematicalError):
    pass


class NotComposition(MathematicalError):
    pass


class NoAnisotropicPair(MathematicalError):
    pass


class NotFound(BudgetExhausted):
    pass


class NoAnisotropicVector(BudgetExhausted):
    pass


class AlignmentNotFound(BudgetExhausted):
    pass


class MissingUnit(MathematicalError):
    pass


class NotAHomomorphism(MathematicalError):
    pass


class NoSolution(MathematicalError):
    """The triality system has only the zero solution (improper input)."""


class Degenerate(MathematicalError):
    """The triality system has a kernel of dimension >= 2; never valid."""


class NonInvertible(MathematicalError):
    pass


class NotSquare(MathematicalError):
    """The multiplier of a generalized composition algebra is not a square.

    ``partial`` carries the intermediate data computed before the failure.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial
