from abc import ABCMeta, abstractmethod


class ConfigParser(metaclass=ABCMeta):
    """Configuration parser ABC"""

    """
    Config parser interface
    All parsers for run configuration will
    need to comply with this interface
    so the command layer can understand it
    """
    @abstractmethod
    def get(self, *args, **kwargs):
        """Get value from config"""
        pass

    @abstractmethod
    def validate(self, *args, **kwargs):
        """Validate config"""
        pass
