import numpy as np

from skelmax.cmds.harness_base import HarnessBase
from skelmax.config import (BUCKLEY_WEIGHTS, DEFAULT_LIMIT_EXPONENTS, DEFAULT_REFINEMENT, DEFAULT_SAMPLES,
                            NECESSARY_SAMPLES, SELECTION_FAMILY_SIZES)
from skelmax.geometry import CellLattice
from skelmax.grid import SampledField
from skelmax.oprint import Oprint
from skelmax.operators import RhoAssignment, check_local_domination, greedy_rho
from skelmax.selection import select_faces
from skelmax.verify.checks import (buckley_stability, check_ap_embedding, check_buckley, check_necessary_chain,
                                   check_selection, check_sufficient)
from skelmax.verify.duality import check_duality_prop, check_sufficient_local
from skelmax.verify.family import FunctionFamily
from skelmax.verify.reports import worst_report
from skelmax.weights import a1_limit_scan, check_p_monotone, default_z_set, limit_sequence, weight_field_for


class CheckRunner(HarnessBase):
    """Run one verification check and report it"""

    default_format = 'csv'

    @property
    def refinement(self):
        return self.config.get('refinement') or DEFAULT_REFINEMENT

    def square(self):
        return default_z_set(self.config.get('weight'), self.z_set(), self.config.get('n'))[0]

    def instances(self):
        """Seeded random nonnegative fields with their weights on 7Q_z"""
        config = self.config
        z = self.square()
        w = weight_field_for(config.get('weight'), z, config.get('delta'), self.refinement)
        rng = np.random.default_rng(config.get('seed'))
        for _ in range(config.get('samples') or DEFAULT_SAMPLES):
            yield z, SampledField(w.spec, rng.random(w.spec.dims)), w, rng

    def local_domination(self):
        config = self.config
        z, f, w, _ = next(self.instances())
        reports = [check_local_domination(f, w, config.get('p'), z, config.get('delta'), k=config.get('k'),
                                          threads=config.get('threads'), tol=config.tolerance(), dense=dense)
                   for dense in (False, True)]
        return worst_report('local-domination', config.params(), reports, config.tolerance())

    def duality(self):
        config = self.config
        delta = config.get('delta')
        reports = []
        for z, f, w, rng in self.instances():
            perturbed = w.with_values(w.values * rng.uniform(0.5, 2.0, w.spec.dims))
            lattice = CellLattice(z, delta)
            rho = RhoAssignment.random(lattice, rng)
            sel = select_faces(rho.skeletons(config.get('k')), delta, 'greedy')
            reports.append(check_duality_prop(f, perturbed, config.get('p'), rho, sel, z, delta,
                                              tol=config.tolerance()))
        return worst_report('duality', config.params(), reports, config.tolerance())

    def sufficient_local(self):
        config = self.config
        delta = config.get('delta')
        k = config.get('k')
        reports = []
        for z, f, w, _ in self.instances():
            rho = greedy_rho(f, CellLattice(z, delta), delta, k=k)
            sel = select_faces(rho.skeletons(k), delta, 'greedy')
            reports.append(check_sufficient_local(f, w, config.get('p'), rho, sel, z, delta,
                                                  C=config.constant('sufficient'), tol=config.tolerance(), k=k))
        return worst_report('sufficient-local', config.params(), reports, config.tolerance())

    def sufficient(self):
        config = self.config
        z = self.square()
        delta = config.get('delta')
        w = weight_field_for(config.get('weight'), z, delta, self.refinement)
        family = FunctionFamily(w.spec, z, delta, w=w, p=config.get('p'), seed=config.get('seed'),
                                k=config.get('k'), **config.get('family'))
        return check_sufficient(config.get('weight'), config.get('p'), delta, family=family,
                                C=config.constant('sufficient'), z=z, refinement=self.refinement,
                                seed=config.get('seed'), threads=config.get('threads'), k=config.get('k'),
                                tol=config.tolerance(), n=config.get('n'))

    def necessary(self):
        config = self.config
        return check_necessary_chain(config.get('weight'), config.get('p'), config.get('delta'),
                                     samples=config.get('samples') or NECESSARY_SAMPLES, seed=config.get('seed'),
                                     z=self.square(), refinement=self.refinement, k=config.get('k'),
                                     tol=config.tolerance(), n=config.get('n'))

    def embedding(self):
        config = self.config
        return check_ap_embedding(config.get('weight'), config.get('p'), config.get('delta'),
                                  samples=config.get('samples') or NECESSARY_SAMPLES, seed=config.get('seed'),
                                  z=self.square(), refinement=self.refinement, k=config.get('k'),
                                  tol=config.tolerance(), n=config.get('n'))

    def buckley(self):
        config = self.config
        return check_buckley(config.get('weight'), config.get('p'), config.get('delta'),
                             C=config.constant('buckley'), z=config.get('z'),
                             refinement=self.refinement, seed=config.get('seed'), threads=config.get('threads'),
                             tol=config.tolerance(), n=config.get('n'))

    def buckley_family(self):
        config = self.config
        return buckley_stability(BUCKLEY_WEIGHTS, config.get('p'), config.get('delta'),
                                 z=config.get('z'), refinement=self.refinement,
                                 seed=config.get('seed'), threads=config.get('threads'), tol=config.tolerance(),
                                 n=config.get('n'))

    def monotone(self):
        config = self.config
        return check_p_monotone(config.get('weight'), config.get('p_list'), config.get('delta'), z_set=self.z_set(),
                                refinement=self.refinement, seed=config.get('seed'), k=config.get('k'),
                                tol=config.tolerance(), n=config.get('n'))

    def a1_limit(self):
        config = self.config
        return a1_limit_scan(config.get('weight'), config.get('delta'), limit_sequence(DEFAULT_LIMIT_EXPONENTS),
                             z_set=self.z_set(), refinement=self.refinement, k=config.get('k'),
                             tol=config.tolerance(), n=config.get('n'))

    def selection(self):
        config = self.config
        return check_selection(SELECTION_FAMILY_SIZES, families=config.get('samples') or NECESSARY_SAMPLES,
                               seed=config.get('seed'), n=config.get('n'), k=config.get('k'),
                               C=config.constant('selection'), tol=config.tolerance())

    def check(self):
        self.start_timer()
        name = self.config.get('check')
        Oprint.info('Running the {} check'.format(name), 'verify')
        report = getattr(self, name.replace('-', '_'))()
        self.emit(report)
        return self.finish(report.passed, name)
