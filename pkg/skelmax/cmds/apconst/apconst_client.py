from skelmax.cmds.client_factory import ClientFactory
from skelmax.cmds.commands import ConstantCommand, Dispatcher
from skelmax.cmds.apconst.constant_evaluator import ConstantEvaluator


class ApconstClient(ClientFactory):
    """Weight constant command handler"""

    def __init__(self, run_config):
        self._evaluator = ConstantEvaluator(run_config)
        self._dispatcher = Dispatcher()

    def execute(self):
        return self._dispatcher.run(ConstantCommand(self._evaluator))
