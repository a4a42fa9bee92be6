from skelmax.cmds.client_factory import ClientFactory
from skelmax.cmds.commands import Dispatcher, SelectCommand
from skelmax.cmds.select.face_selector import FaceSelector


class SelectClient(ClientFactory):
    """Face selection command handler"""

    def __init__(self, run_config):
        self._selector = FaceSelector(run_config)
        self._dispatcher = Dispatcher()

    def execute(self):
        return self._dispatcher.run(SelectCommand(self._selector))
