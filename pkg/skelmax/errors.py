"""Exceptions raised by skelmax operations"""


class SkelmaxError(Exception):
    """Base class, carries a message and the offending values"""

    def __init__(self, message, **context):
        super(SkelmaxError, self).__init__(message)
        self.message = message
        self.context = context

    def __str__(self):
        if not self.context:
            return self.message

        details = ', '.join('{}={}'.format(key, self.context[key]) for key in sorted(self.context))
        return '{} ({})'.format(self.message, details)


class InvalidDeltaError(SkelmaxError):
    pass


class InvalidExponentError(SkelmaxError):
    pass


class FieldError(SkelmaxError):
    pass


class DegenerateBoxError(SkelmaxError):
    pass


class DegenerateWeightError(SkelmaxError):
    pass


class MarginError(SkelmaxError):
    pass


class SupportError(SkelmaxError):
    pass


class UnquantizablePlaneError(SkelmaxError):
    pass


class SelectionError(SkelmaxError):
    pass


class ConfigError(SkelmaxError):
    pass


class InsufficientDataError(SkelmaxError):
    pass
