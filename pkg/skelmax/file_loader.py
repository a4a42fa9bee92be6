import json
import os

import yaml

from skelmax.config import CONFIG_TEMPLATE_EXT
from skelmax.errors import ConfigError


class FileLoader(object):
    """
    Loading content from yml and json files
    and convert them into json object

    It can only be used at the top of a ConfigStage chain,
    it hands (raw, content) to its successor
    """

    def __init__(self, file_path, allowed_ext=None, raw=None):
        self._file_path = file_path
        self._allowed_ext = allowed_ext
        self._raw = raw
        self._successor = None

    @property
    def successor(self):
        return self._successor

    @successor.setter
    def successor(self, successor):
        self._successor = successor

    def get_ext(self):
        """Get file extension, ignoring a template suffix"""
        name, ext = os.path.splitext(self._file_path)
        if ext == CONFIG_TEMPLATE_EXT:
            name, ext = os.path.splitext(name)
        return ext

    def file_allowed(self):
        """If file type is allowed to load"""
        if self._allowed_ext and self.get_ext() not in self._allowed_ext:
            return False

        return True

    def is_json(self):
        return self.get_ext() == '.json'

    def is_yaml(self):
        return self.get_ext() in ['.yml', '.yaml']

    @staticmethod
    def if_json_loadable(data_str):
        """If string is json loadable"""
        try:
            return json.loads(data_str)
        except ValueError:
            return None

    @staticmethod
    def if_yaml_loadable(data_str):
        """If string is yaml loadable"""
        try:
            return yaml.safe_load(data_str)
        except yaml.YAMLError:
            return None

    @staticmethod
    def to_json(data_str, file_name=None):
        """Convert string to json"""
        content = FileLoader.if_json_loadable(data_str)

        # Try yaml
        if content is None:
            content = FileLoader.if_yaml_loadable(data_str)
            if content is None:
                raise ConfigError('Data is neither valid json nor yaml', file=file_name)

        return content

    def loading_strategy(self):
        """
        Load file into json object
        Returns a tuple raw and json
        """
        if not self.file_allowed():
            raise ConfigError('File type {} is not allowed'.format(self.get_ext()), file=self._file_path)

        raw = self._raw
        if raw is None:
            try:
                with open(self._file_path, 'r') as fh:
                    raw = fh.read()
            except (IOError, OSError) as e:
                raise ConfigError('Cannot read config file', file=self._file_path, reason=e.strerror)

        return raw, FileLoader.to_json(raw, file_name=self._file_path)

    def process(self):
        """Load file into memory"""
        if not self._successor:
            return self.loading_strategy()
        else:
            return self._successor.process_next(self.loading_strategy())
