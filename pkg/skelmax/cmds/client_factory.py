from abc import ABCMeta, abstractmethod


class ClientFactory(metaclass=ABCMeta):
    """Command client ABC"""

    @abstractmethod
    def execute(self):
        """Run the command and return its exit code"""
        pass
