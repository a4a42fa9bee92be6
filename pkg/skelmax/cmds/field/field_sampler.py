from skelmax.cmds.harness_base import HarnessBase
from skelmax.config import DEFAULT_REFINEMENT, EXIT_PASS
from skelmax.geometry import CellLattice
from skelmax.grid import local_grid, read_grid_csv
from skelmax.oprint import Oprint
from skelmax.operators import hl_maximal, skeleton_maximal
from skelmax.utils import delta_label
from skelmax.weights import make_weight


class FieldSampler(HarnessBase):
    """Sample a weight on the quadrature grid, optionally through a maximal operator"""

    default_format = 'csv'

    def source(self):
        """The --input grid, otherwise the weight sampled around 7Q_z"""
        if self.config.get('input'):
            return read_grid_csv(self.config.get('input'))

        z = self.config.get('z') or (0,) * self.config.get('n')
        refinement = self.config.get('refinement') or DEFAULT_REFINEMENT
        grid = local_grid(z, self.config.get('delta'), refinement)
        return make_weight(self.config.get('weight'), grid)

    def sample(self):
        self.start_timer()
        f = self.source()
        operator = self.config.get('operator')
        delta = self.config.get('delta')

        if operator == 'skeleton':
            z = self.config.get('z') or (0,) * f.spec.n
            Oprint.info('Skeleton maximal function on the {} lattice of Q_{}'.format(delta_label(delta), z), 'field')
            f = skeleton_maximal(f, delta, CellLattice(z, delta), k=self.config.get('k'),
                                 threads=self.config.get('threads')).to_field()
        elif operator == 'hl':
            Oprint.info('Hardy-Littlewood maximal function', 'field')
            f = hl_maximal(f).to_field()

        self.emit_field(f)
        return EXIT_PASS
