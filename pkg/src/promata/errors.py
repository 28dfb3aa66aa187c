"""Exception types shared across the package."""


class PromataError(Exception):
    """Base class for errors raised by this package."""


class InputDomainError(PromataError, ValueError):
    """A word contains a symbol outside the machine's alphabet."""


class AlphabetMismatchError(PromataError, ValueError):
    """Two objects that must share an alphabet do not."""


class MachineFormatError(PromataError, ValueError):
    """A serialized machine does not match the interchange format."""


class ResourceCapError(PromataError, RuntimeError):
    """A construction or search would exceed its configured resource cap."""
