import time

from skelmax.config import EXIT_FAIL, EXIT_PASS
from skelmax.oprint import Oprint
from skelmax.output import emit_grid, emit_report
from skelmax.verify.reports import CheckReport


class HarnessBase(object):
    """Base class of the subcommand workers"""

    # Report format when --format is not given
    default_format = 'json'

    def __init__(self, run_config=None):
        self._config = run_config
        self._started = None

    @classmethod
    def init_with_parser(cls, config_parser):
        """alternative constructor taking custom parser"""
        alt_cls = cls()
        alt_cls.config = config_parser
        return alt_cls

    @property
    def config(self):
        return self._config

    @config.setter
    def config(self, config_parser):
        self._config = config_parser

    @property
    def format(self):
        return self._config.get('format') or self.default_format

    def z_set(self):
        """The --z square when given, otherwise the weight's default squares"""
        z = self._config.get('z')
        return None if z is None else [z]

    def start_timer(self):
        self._started = time.perf_counter()

    def elapsed(self):
        if not self._config.get('timing') or self._started is None:
            return None
        return time.perf_counter() - self._started

    def emit(self, report):
        if isinstance(report, CheckReport) and report.seconds is None:
            report.seconds = self.elapsed()
        emit_report(report, self.format, self._config.get('out'))

    def emit_field(self, field):
        emit_grid(field, self.format, self._config.get('out'))

    def finish(self, passed, src='skelmax'):
        """Exit code for a report"""
        if passed:
            Oprint.infog('pass', src)
            return EXIT_PASS

        Oprint.warn('fail', src)
        return EXIT_FAIL
