"""
extras.py
To keep the modules of this project free of circular imports
the exception classes, violation records and the logging set-up
that every gsn_* module shares are placed here
"""

import logging
import os
from dataclasses import dataclass, field

from gsn_constants import LOG_ENV_VAR, LOG_FORMAT, LOGGER_NAMESPACE


class CustomException(Exception):
    """
    Root of every error raised by the kernel
    Callers that only care whether an input was usable catch this one
    """
    pass


class ParseError(CustomException):
    pass


class ValidationError(CustomException):
    """
    Raised by loaders when a data file breaks an invariant
    Carries the name of the first failed invariant and the offending indices
    """

    def __init__(self, invariant: str, indices: tuple = (), detail: str = ""):
        self.invariant = invariant
        self.indices = tuple(indices)
        self.detail = detail
        message = f"{invariant} violated at {self.indices}"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class DivisionByZero(CustomException):
    pass


class NotInternalEdge(CustomException):
    pass


class NotABubble(CustomException):
    pass


class NonPlanarDiagram(CustomException):
    pass


class InadmissibleColoring(CustomException):
    pass


class UnresolvableCrossing(CustomException):
    pass


class BoundaryEdge(CustomException):
    pass


class SameFace(CustomException):
    pass


class BoundaryVertex(CustomException):
    pass


class InadmissibleSurface(CustomException):
    pass


class NotIsomorphic(CustomException):
    """
    Two triangulations, or a state and its image, do not match up
    """
    pass


class GradeMismatch(CustomException):
    pass


class ShapeMismatch(CustomException):
    pass


class NotSplit(CustomException):
    """
    The centre of a tube algebra does not split over the ground field
    """
    pass


@dataclass(frozen=True)
class Violation:
    """
    One failed invariant, as listed by the validate_* routines
    """
    name: str
    indices: tuple = ()
    detail: str = field(default="", compare=False)

    def as_dict(self) -> dict:
        return {"name": self.name,
                "indices": list(self.indices),
                "detail": self.detail}


def raise_first(violations: list) -> None:
    """
    Turn the first entry of a violation list into a ValidationError
    :param violations: list of Violation, possibly empty
    :return: None when the list is empty
    """
    if violations:
        first = violations[0]
        raise ValidationError(first.name, first.indices, first.detail)


def module_logger(name: str) -> logging.Logger:
    return logging.getLogger(LOGGER_NAMESPACE).getChild(name)


def configure_logging(level: str = None) -> logging.Logger:
    """
    Install one stream handler on the gsn logger namespace
    The level comes from the argument, else from GSN_LOG, else WARNING
    :param level: optional level name such as "DEBUG"
    :return: the namespace logger
    """
    logger = logging.getLogger(LOGGER_NAMESPACE)
    name = (level or os.environ.get(LOG_ENV_VAR) or "WARNING").upper()
    logger.setLevel(getattr(logging, name, logging.WARNING))
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    return logger
