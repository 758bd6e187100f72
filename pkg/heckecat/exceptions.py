from .utils import dumps


class HeckecatError(Exception):
    pass


class RootDatumError(HeckecatError):
    pass


class TorsionError(RootDatumError):
    pass


class NotAffineError(RootDatumError):
    pass


class RealizationError(HeckecatError):
    pass


class NonExactDivision(RealizationError):
    pass


class ObjectInvariantError(HeckecatError):
    pass


class DecompositionError(HeckecatError):
    pass


class PreconditionError(HeckecatError):
    pass


class CentralPointError(PreconditionError):
    pass


class BudgetExceeded(HeckecatError):

    def __init__(self, msg, partial=None):
        super().__init__(msg)
        self.partial = partial


class UnknownSuite(HeckecatError):
    pass


class VerificationFailed(HeckecatError):

    def __init__(self, payload, *args):
        self.payload = payload
        super().__init__(dumps(payload), *args)
