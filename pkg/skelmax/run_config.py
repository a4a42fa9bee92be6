import os

import jinja2

from skelmax.config import (CHECKS, CONFIG_FLAG_KEYS, CONFIG_TEMPLATE_EXT, CONSTANT_CLASSES, DEFAULT_DELTA,
                            DEFAULT_P, DEFAULT_P_LIST, DEFAULT_SEED, FIELD_OPERATORS, FILE_LOADER_CONFIG_ALLOWED_EXT,
                            RELATIVE_TOLERANCE, REPORT_FORMATS, SELECTION_STRATEGIES, SUBCOMMANDS, THREADS_ENV_VAR,
                            WITNESS_TOLERANCE, BUCKLEY_CONSTANT, SELECTION_CONSTANT, SUFFICIENT_CONSTANT,
                            FAMILY_BOXES, FAMILY_FIELDS, FAMILY_SKELETONS)
from skelmax.config_parser import ConfigParser
from skelmax.convertors.env_var_convertor import EnvVarConvertor
from skelmax.convertors.fraction_convertor import FractionConvertor
from skelmax.errors import ConfigError, InvalidExponentError
from skelmax.file_loader import FileLoader
from skelmax.utils import as_delta, as_exponent, parse_fraction, parse_lattice_point
from skelmax.weights import WeightSpec

# Checks and constant classes that need p > 1
STRICT_P_CHECKS = ['local-domination', 'duality', 'necessary', 'embedding', 'buckley', 'buckley-family']
STRICT_P_CLASSES = ['cubic', 'skeleton', 'skeleton-local', 'nonlinear']


class RunConfig(ConfigParser):
    """
    Run configuration of one command: defaults, then command line flags,
    then the --config file
    """

    def __init__(self, args, environ=None):
        self._args = args
        self._environ = os.environ if environ is None else environ
        self._config = RunConfig.defaults()
        self._config['subcommand'] = self.get_subcommand()
        self.apply_flags()
        self.load_config()
        self.validate()

    @classmethod
    def from_dict(cls, subcommand, values, environ=None):
        """Build from a plain dict of config keys, e.g. in a harness"""
        args = {subcommand: True}
        args.update({CONFIG_FLAG_KEYS[key]: value for key, value in values.items() if key in CONFIG_FLAG_KEYS})
        run_config = cls(args, environ)
        extra = {key: value for key, value in values.items() if key not in CONFIG_FLAG_KEYS}
        if extra:
            run_config.merge(extra)
            run_config.validate()
        return run_config

    @staticmethod
    def defaults():
        return {
            'subcommand': None,
            'check': None,
            'class': None,
            'p': DEFAULT_P,
            'p_list': list(DEFAULT_P_LIST),
            'delta': DEFAULT_DELTA,
            'deltas': None,
            'weight': 'constant',
            'input': None,
            'operator': 'none',
            'strategy': 'greedy',
            'seed': DEFAULT_SEED,
            'samples': None,
            'count': None,
            'threads': None,
            'refinement': None,
            'z': None,
            'n': 2,
            'k': 1,
            'constant': None,
            'out': None,
            'format': None,
            'timing': False,
            'tolerances': {'relative': RELATIVE_TOLERANCE, 'witness': WITNESS_TOLERANCE},
            'constants': {'selection': SELECTION_CONSTANT, 'sufficient': SUFFICIENT_CONSTANT,
                          'buckley': BUCKLEY_CONSTANT},
            'family': {'skeletons': FAMILY_SKELETONS, 'boxes': FAMILY_BOXES, 'fields': FAMILY_FIELDS},
        }

    def get_subcommand(self):
        for name in SUBCOMMANDS:
            if self._args.get(name):
                return name
        return None

    def get_args_value(self, key):
        """Get command line input value"""
        return self._args.get(key, None)

    def apply_flags(self):
        for key, flag in CONFIG_FLAG_KEYS.items():
            value = self.get_args_value(flag)
            if value is not None:
                self._config[key] = value

        if self.get_args_value('--timing'):
            self._config['timing'] = True

    @staticmethod
    def render_template(template, context):
        """Fill template with values from context"""
        path, filename = os.path.split(template)
        return jinja2.Environment(loader=jinja2.FileSystemLoader(path or './')).get_template(filename).render(context)

    def load_config(self):
        """Load the --config file, rendering a jinja2 template first"""
        config_file = self.get_args_value('--config')
        if not config_file:
            return

        if not os.path.isfile(config_file):
            raise ConfigError('Config file does not exist', file=config_file)

        raw = None
        if config_file.endswith(CONFIG_TEMPLATE_EXT):
            try:
                raw = RunConfig.render_template(config_file, self._environ)
            except jinja2.TemplateError as e:
                raise ConfigError('Cannot render config template', file=config_file, reason=str(e))

        file_loader = FileLoader(file_path=config_file, allowed_ext=FILE_LOADER_CONFIG_ALLOWED_EXT, raw=raw)
        env_var_convertor = EnvVarConvertor(self._environ)
        env_var_convertor.successor = FractionConvertor()
        file_loader.successor = env_var_convertor
        _, content = file_loader.process()

        if not isinstance(content, dict):
            raise ConfigError('Config file must hold a mapping', file=config_file)
        self.merge(content)

    def merge(self, content):
        for key, value in content.items():
            if key not in self._config:
                raise ConfigError('Unknown config key', key=key)
            if isinstance(self._config[key], dict) and isinstance(value, dict):
                merged = dict(self._config[key])
                for inner, inner_value in value.items():
                    if inner not in merged:
                        raise ConfigError('Unknown config key', key='{}.{}'.format(key, inner))
                    merged[inner] = inner_value
                self._config[key] = merged
            else:
                self._config[key] = value

    def get(self, key):
        """Get config value by key"""
        return self._config.get(key)

    @property
    def config(self):
        """Get all config as a dict"""
        return self._config

    @property
    def subcommand(self):
        return self._config['subcommand']

    def tolerance(self, name='relative'):
        return self._config['tolerances'][name]

    def constant(self, name):
        """--constant overrides the constant of the running check"""
        if self._config['constant'] is not None:
            return self._config['constant']
        return self._config['constants'][name]

    def validate(self):
        """Normalise values into their types and check them"""
        config = self._config
        if config['subcommand'] not in SUBCOMMANDS:
            raise ConfigError('Unknown subcommand', subcommand=config['subcommand'])

        config['delta'] = as_delta(config['delta'])
        if config['deltas'] is not None:
            deltas = config['deltas']
            if isinstance(deltas, str):
                deltas = [item for item in deltas.split(',') if item.strip()]
            config['deltas'] = [as_delta(delta) for delta in deltas]

        config['p'] = as_exponent(config['p'])
        p_list = config['p_list']
        if isinstance(p_list, str):
            p_list = [item for item in p_list.split(',') if item.strip()]
        config['p_list'] = [as_exponent(p) for p in p_list]

        for key, minimum in [('seed', 0), ('samples', 1), ('count', 1), ('threads', 1), ('refinement', 1),
                             ('n', 1), ('k', 0)]:
            if config[key] is not None:
                config[key] = RunConfig.as_integer(key, config[key], minimum)

        if config['threads'] is None:
            env_threads = self._environ.get(THREADS_ENV_VAR)
            config['threads'] = RunConfig.as_integer(THREADS_ENV_VAR, env_threads, 1) if env_threads else 1

        if not config['k'] < config['n'] <= 3:
            raise ConfigError('Dimensions must satisfy 0 <= k < n <= 3', n=config['n'], k=config['k'])

        if config['z'] is not None:
            config['z'] = parse_lattice_point(config['z'], config['n'])

        if config['constant'] is not None:
            config['constant'] = float(parse_fraction(config['constant']))
            if not config['constant'] > 0:
                raise ConfigError('Constant must be positive', constant=config['constant'])

        if config['format'] is not None and config['format'] not in REPORT_FORMATS:
            raise ConfigError('Unknown report format', format=config['format'], formats=','.join(REPORT_FORMATS))
        if config['operator'] not in FIELD_OPERATORS:
            raise ConfigError('Unknown operator', operator=config['operator'])
        if config['strategy'] not in SELECTION_STRATEGIES:
            raise ConfigError('Unknown selection strategy', strategy=config['strategy'])

        config['weight'] = WeightSpec.parse(config['weight'])
        self.validate_subcommand()

    def validate_subcommand(self):
        config = self._config
        subcommand = config['subcommand']
        strict = False

        if subcommand == 'apconst':
            if config['class'] not in CONSTANT_CLASSES:
                raise ConfigError('--class must be one of {}'.format(', '.join(CONSTANT_CLASSES)),
                                  cls=config['class'])
            strict = config['class'] in STRICT_P_CLASSES

        if subcommand == 'verify':
            if config['check'] not in CHECKS:
                raise ConfigError('--check must be one of {}'.format(', '.join(CHECKS)), check=config['check'])
            strict = config['check'] in STRICT_P_CHECKS
            if config['check'] == 'monotone' and any(p <= 1 for p in config['p_list']):
                raise InvalidExponentError('Every p in p_list must exceed 1', p_list=config['p_list'])

        if strict and config['p'] <= 1:
            raise InvalidExponentError('p must exceed 1 here', p=config['p'])

    @staticmethod
    def as_integer(key, value, minimum):
        try:
            number = parse_fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError('Config value must be an integer', key=key, value=value)

        if number.denominator != 1 or number < minimum:
            raise ConfigError('Config value must be an integer of at least {}'.format(minimum), key=key, value=value)
        return int(number)

    def params(self):
        """Plain description of the run for report digests"""
        config = self._config
        return {
            'subcommand': config['subcommand'],
            'p': config['p'],
            'delta': str(config['delta']),
            'weight': config['weight'].to_descriptor(),
            'seed': config['seed'],
        }
