from skelmax.cmds.harness_base import HarnessBase
from skelmax.config import SCALING_REFINEMENT
from skelmax.oprint import Oprint
from skelmax.utils import delta_label
from skelmax.verify.scaling import scaling_experiment


class ScalingRunner(HarnessBase):
    """Fit the delta exponent of the skeleton maximal operator norm"""

    def scale(self):
        config = self.config
        self.start_timer()
        deltas = config.get('deltas') or []
        Oprint.info('Scaling experiment at p = {} over delta {}'.format(
            config.get('p'), ', '.join(delta_label(delta) for delta in deltas) or 'defaults'), 'scaling')
        report = scaling_experiment(config.get('p'), config.get('deltas'), weight=config.get('weight'),
                                    z=config.get('z'), seed=config.get('seed'),
                                    refinement=config.get('refinement') or SCALING_REFINEMENT,
                                    threads=config.get('threads'), k=config.get('k'), n=config.get('n'),
                                    family_options=config.get('family'))
        if report.saturated:
            Oprint.warn('The constant member attains every estimate, see the localized fit', 'scaling')
        self.emit(report)
        return self.finish(report.passed, 'scaling')
