from skelmax.cmds.client_factory import ClientFactory
from skelmax.cmds.commands import CheckCommand, Dispatcher
from skelmax.cmds.verify.check_runner import CheckRunner


class VerifyClient(ClientFactory):
    """Verification command handler"""

    def __init__(self, run_config):
        self._runner = CheckRunner(run_config)
        self._dispatcher = Dispatcher()

    def execute(self):
        return self._dispatcher.run(CheckCommand(self._runner))
