class UniserialToolsException(Exception):
    """Base class for all errors raised by this package"""


class InputException(UniserialToolsException):
    """Error raised when arguments violate the preconditions of an operation"""


class ParseException(InputException):
    """Error raised when a JSON document does not match its schema"""


class DomainException(UniserialToolsException):
    """Error raised when an input lies outside the modeled mathematics"""


class OutOfScopeException(DomainException):
    """Error raised for inputs handled elsewhere, tagged 'out of modeled scope'"""


class ExtensionRefusedException(DomainException):
    """Error raised when an extension space cannot exist for a Jordan specification"""

    def __init__(self, condition: str, message: str):
        super().__init__(message)
        self.condition = condition

    def to_dict(self) -> dict:
        return {"refused": True, "condition": self.condition, "message": str(self)}


class InconsistencyException(UniserialToolsException):
    """Error raised when a result contradicts the classification theorems"""
