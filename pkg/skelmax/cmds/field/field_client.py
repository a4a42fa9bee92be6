from skelmax.cmds.client_factory import ClientFactory
from skelmax.cmds.commands import Dispatcher, SampleCommand
from skelmax.cmds.field.field_sampler import FieldSampler


class FieldClient(ClientFactory):
    """Field command handler"""

    def __init__(self, run_config):
        self._field = FieldSampler(run_config)
        self._dispatcher = Dispatcher()

    def execute(self):
        return self._dispatcher.run(SampleCommand(self._field))
