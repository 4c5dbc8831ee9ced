#!/usr/bin/env python3
# -*- coding: UTF-8 -*-

"""
Exceptions shared by all qdmgate modules
"""

# typing
from typing import Any, Optional


class QdmGateException(Exception):
    """Base class of all exceptions raised by qdmgate"""
    pass


class ConfigurationError(QdmGateException):
    """
    Invalid simulation configuration or sweep specification

    :param      field:    The offending attribute, None if not field specific
    :type       field:    Optional[str]
    :param      message:  The message
    :type       message:  str
    """
    def __init__(self, field: Optional[str], message: str) -> None:
        self.field = field
        self.message = message
        if field is None:
            super().__init__(message)
        else:
            super().__init__('{}: {}'.format(field, message))


class IntegrationError(QdmGateException):
    """
    Failure of a time integration

    :param      time:     The time in ps at which the integration failed
    :type       time:     float
    :param      message:  The message
    :type       message:  str
    :param      series:   Samples recorded before the failure
    :type       series:   Optional[TimeSeries]
    """
    def __init__(self, time: float, message: str, series: Any = None) -> None:
        self.time = time
        self.message = message
        self.series = series
        super().__init__('t = {:.6g} ps: {}'.format(time, message))


class DomainError(QdmGateException):
    """Argument outside the domain of a pure function"""
    pass
