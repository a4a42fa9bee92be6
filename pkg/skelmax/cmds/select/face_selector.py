from skelmax.cmds.harness_base import HarnessBase
from skelmax.oprint import Oprint
from skelmax.selection import random_lattice_family, select_faces, verify_selection_bound


class FaceSelector(HarnessBase):
    """Select one face per skeleton of a seeded lattice family and check the plane loads"""

    def select(self):
        config = self.config
        n = config.get('n')
        z = config.get('z') or (0,) * n
        skeletons, delta = random_lattice_family(config.get('delta'), config.get('seed'), z=z, n=n,
                                                 k=config.get('k'), count=config.get('count'))
        Oprint.info('{} selection over {} skeletons'.format(config.get('strategy'), len(skeletons)), 'select')

        sel = select_faces(skeletons, delta, config.get('strategy'), seed=config.get('seed'))
        report = verify_selection_bound(sel, n=n, k=config.get('k'), constant=config.constant('selection'))
        self.emit(report)
        return self.finish(report.passed, 'select')
