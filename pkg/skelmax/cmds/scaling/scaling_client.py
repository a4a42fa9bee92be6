from skelmax.cmds.client_factory import ClientFactory
from skelmax.cmds.commands import Dispatcher, ScaleCommand
from skelmax.cmds.scaling.scaling_runner import ScalingRunner


class ScalingClient(ClientFactory):
    """Scaling experiment command handler"""

    def __init__(self, run_config):
        self._runner = ScalingRunner(run_config)
        self._dispatcher = Dispatcher()

    def execute(self):
        return self._dispatcher.run(ScaleCommand(self._runner))
