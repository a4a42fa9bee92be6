from skelmax.config import FRACTION_KEYS
from skelmax.convertors import ConfigStage, Convertor
from skelmax.errors import ConfigError
from skelmax.utils import parse_fraction


class FractionConvertor(ConfigStage, Convertor):
    """
    Normalise fraction valued keys to 'a/b' strings, so 0.125, '1/8' and
    '2/16' all read '1/8'. Lists and comma separated strings are
    normalised item by item.
    """

    def __init__(self, keys=None):
        super(FractionConvertor, self).__init__()
        self._keys = FRACTION_KEYS if keys is None else keys

    def process(self, data):
        return self.convert(data)

    def convert(self, data):
        raw, content = data
        if not isinstance(content, dict):
            return raw, content

        converted = dict(content)
        for key in self._keys:
            if converted.get(key) is None:
                continue
            value = converted[key]
            if isinstance(value, (list, tuple)):
                converted[key] = [self.normalise(key, item) for item in value]
            elif isinstance(value, str) and ',' in value:
                converted[key] = [self.normalise(key, item) for item in value.split(',') if item.strip()]
            else:
                converted[key] = self.normalise(key, value)

        return raw, converted

    @staticmethod
    def normalise(key, value):
        try:
            fraction = parse_fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ConfigError('Config value is not a fraction', key=key, value=value)

        return str(fraction)
