from skelmax.cmds.harness_base import HarnessBase
from skelmax.config import CUBIC_SCALE, DEFAULT_REFINEMENT, EXIT_PASS
from skelmax.geometry import CellLattice
from skelmax.grid import local_grid
from skelmax.oprint import Oprint
from skelmax.operators import CubeFamily
from skelmax.weights import (a1_skeleton, ap_cubic, ap_nonlinear_global, ap_skeleton_global, ap_skeleton_local,
                             default_z_set, make_weight, shared_rho_family, weight_field_for)


class ConstantEvaluator(HarnessBase):
    """Evaluate one weight constant class"""

    @property
    def refinement(self):
        return self.config.get('refinement') or DEFAULT_REFINEMENT

    def cubic(self):
        weight = self.config.get('weight')
        z = default_z_set(weight, self.z_set(), self.config.get('n'))[0]
        w = make_weight(weight, local_grid(z, self.config.get('delta'), self.refinement, scale=CUBIC_SCALE))
        return ap_cubic(w, self.config.get('p'), CubeFamily(w.spec))

    def skeleton(self):
        return ap_skeleton_global(self.config.get('weight'), self.config.get('p'), self.config.get('delta'),
                                  z_set=self.z_set(), refinement=self.refinement, seed=self.config.get('seed'),
                                  k=self.config.get('k'), n=self.config.get('n'))

    def skeleton_local(self):
        """The constant at the greedy radii and their greedy selection"""
        weight = self.config.get('weight')
        delta = self.config.get('delta')
        z = default_z_set(weight, self.z_set(), self.config.get('n'))[0]
        w = weight_field_for(weight, z, delta, self.refinement)
        rho, choices = shared_rho_family(w, CellLattice(z, delta), self.config.get('p'), self.config.get('seed'),
                                         0, self.config.get('k'))[0]
        return ap_skeleton_local(w, rho, choices, self.config.get('p'), delta, self.config.get('k'))

    def a1(self):
        return a1_skeleton(self.config.get('weight'), self.config.get('delta'), z_set=self.z_set(),
                           refinement=self.refinement, seed=self.config.get('seed'), k=self.config.get('k'),
                           lower=True, n=self.config.get('n'))

    def nonlinear(self):
        return ap_nonlinear_global(self.config.get('weight'), self.config.get('p'), self.config.get('delta'),
                                   z_set=self.z_set(), refinement=self.refinement, k=self.config.get('k'),
                                   n=self.config.get('n'))

    def constant(self):
        self.start_timer()
        cls = self.config.get('class')
        Oprint.info('Evaluating the {} constant of {}'.format(cls, self.config.get('weight').to_descriptor()),
                    'apconst')
        report = getattr(self, cls.replace('-', '_'))()
        report.params.update({'weight': self.config.get('weight').to_descriptor(), 'seed': self.config.get('seed')})
        self.emit(report)
        return EXIT_PASS
