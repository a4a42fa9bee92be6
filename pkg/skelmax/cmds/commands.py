from skelmax.config import EXIT_INVALID
from skelmax.errors import SkelmaxError
from skelmax.oprint import Oprint


class CommandInterface(object):
    """The command interface"""
    def __init__(self, obj):
        self._obj = obj

    def run(self):
        raise NotImplementedError


class SampleCommand(CommandInterface):
    """Command for sampling a field"""
    def run(self):
        return self._obj.sample()


class ConstantCommand(CommandInterface):
    """Command for a weight constant"""
    def run(self):
        return self._obj.constant()


class SelectCommand(CommandInterface):
    """Command for face selection"""
    def run(self):
        return self._obj.select()


class CheckCommand(CommandInterface):
    """Command for a verification check"""
    def run(self):
        return self._obj.check()


class ScaleCommand(CommandInterface):
    """Command for a scaling experiment"""
    def run(self):
        return self._obj.scale()


class Dispatcher(object):
    """Command invocation class, input errors become exit code 2"""
    def run(self, command):
        try:
            return command.run()
        except SkelmaxError as e:
            Oprint.err(e, 'skelmax', exit=False)
            return EXIT_INVALID
