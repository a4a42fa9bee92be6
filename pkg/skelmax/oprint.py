import sys
import traceback

from skelmax.config import EXIT_INVALID
from skelmax.errors import SkelmaxError


def skelmax_output(func):
    """skelmax output message decorator"""

    def __wrapper(cls, msg, src='skelmax', *args, **kwargs):
        if isinstance(msg, str):
            msg = '==> [{}]: {}'.format(src, msg)
        elif isinstance(msg, SkelmaxError):
            msg = '==> [{}]: {}'.format(src, str(msg))

        return func(cls, msg, *args, **kwargs)
    return __wrapper


class Oprint(object):
    """Printing class for output formatting, writes to stderr"""

    # Colour codes
    header = '\033[95m'
    okblue = '\033[94m'
    okgreen = '\033[92m'
    warning = '\033[93m'
    fail = '\033[91m'
    endc = '\033[0m'
    bold = "\033[1m"

    stream = sys.stderr

    @classmethod
    def disable(cls):
        """Drop colours, e.g. when stderr is not a terminal"""
        cls.header = ''
        cls.okblue = ''
        cls.okgreen = ''
        cls.warning = ''
        cls.fail = ''
        cls.endc = ''
        cls.bold = ''

    @classmethod
    def _write(cls, colour, msg):
        if isinstance(msg, str):
            print(colour + msg + cls.endc, file=cls.stream)
        else:
            print(msg, file=cls.stream)

    @classmethod
    @skelmax_output
    def infog(cls, msg):
        cls._write(cls.okgreen, msg)

    @classmethod
    @skelmax_output
    def info(cls, msg):
        cls._write(cls.okblue, msg)

    @classmethod
    @skelmax_output
    def warn(cls, msg):
        cls._write(cls.warning, msg)

    @classmethod
    @skelmax_output
    def err(cls, msg, exit=True):
        cls._write(cls.fail, msg)
        if not isinstance(msg, str):
            print(traceback.format_exc(), file=cls.stream)

        # Exit on invalid input, the command layer is the only caller
        if exit:
            sys.exit(EXIT_INVALID)


if not getattr(sys.stderr, 'isatty', lambda: False)():
    Oprint.disable()
