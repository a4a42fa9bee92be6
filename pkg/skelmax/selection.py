"""
One face per skeleton with bounded coordinate-plane loads
"""

from collections import Counter, OrderedDict

import numpy as np

from skelmax.config import LOAD_REPORT_COLUMNS, SELECTION_CONSTANT
from skelmax.errors import SelectionError
from skelmax.geometry import CellLattice, Skeleton, enumerate_radii, face_orientations
from skelmax.utils import as_delta


class FaceSelection(object):
    """Chosen face index per skeleton and the load of every plane"""

    def __init__(self, skeletons, delta, choices):
        skeletons = list(skeletons)
        choices = [int(choice) for choice in choices]
        if len(skeletons) != len(choices):
            raise SelectionError('One face must be chosen per skeleton', skeletons=len(skeletons), choices=len(choices))

        faces = []
        for skeleton, choice in zip(skeletons, choices):
            if not 0 <= choice < skeleton.face_count:
                raise SelectionError('Face index out of range', face=choice, faces=skeleton.face_count)
            faces.append(skeleton.faces(delta)[choice])

        self._skeletons = skeletons
        self._delta = delta
        self._choices = choices
        self._faces = faces
        self._keys = [face.plane for face in faces]
        self._loads = Counter(self._keys)

    @property
    def skeletons(self):
        return self._skeletons

    @property
    def delta(self):
        return self._delta

    @property
    def choices(self):
        return list(self._choices)

    @property
    def faces(self):
        return list(self._faces)

    @property
    def keys(self):
        return list(self._keys)

    @property
    def loads(self):
        return Counter(self._loads)

    @property
    def u(self):
        return len(self._skeletons)

    @property
    def max_load(self):
        return max(self._loads.values()) if self._loads else 0

    def without(self, index):
        """The same selection with one skeleton removed"""
        keep = [i for i in range(self.u) if i != index]
        return FaceSelection([self._skeletons[i] for i in keep], self._delta, [self._choices[i] for i in keep])

    def __len__(self):
        return self.u


def select_faces(skeletons, delta, strategy='greedy', seed=None):
    """
    greedy: skeletons in index order, each takes the face whose plane has the
    least load so far, ties to the smallest face index.
    random: a uniformly random face per skeleton from the seeded generator.
    """
    skeletons = list(skeletons)
    keys = [[face.plane for face in skeleton.faces(delta)] for skeleton in skeletons]

    if strategy == 'greedy':
        loads = Counter()
        choices = []
        for options in keys:
            best = 0
            for index, key in enumerate(options):
                if loads[key] < loads[options[best]]:
                    best = index
            loads[options[best]] += 1
            choices.append(best)
    elif strategy == 'random':
        rng = np.random.default_rng(seed)
        choices = [int(rng.integers(len(options))) for options in keys]
    else:
        raise SelectionError('Unknown selection strategy', strategy=strategy)

    return FaceSelection(skeletons, delta, choices)


def plane_loads(sel):
    return sel.loads


def selection_exponent(n, k):
    """1 - (n - k)(2n - 1) / (2 n^2)"""
    return 1.0 - (n - k) * (2.0 * n - 1.0) / (2.0 * n * n)


class LoadReport(object):
    """Maximum plane load against C u**exponent"""

    def __init__(self, u, max_load, n, k, constant, loads=None):
        self.u = int(u)
        self.max_load = int(max_load)
        self.n = n
        self.k = k
        self.constant = float(constant)
        self.exponent = selection_exponent(n, k)
        self.threshold = self.constant * self.u ** self.exponent
        self.loads = loads or Counter()

    @property
    def passed(self):
        return self.max_load <= self.threshold

    def to_dict(self):
        return {
            'u': self.u,
            'max_load': self.max_load,
            'exponent': self.exponent,
            'threshold': self.threshold,
            'pass': self.passed,
        }

    def csv_rows(self):
        header = list(LOAD_REPORT_COLUMNS)
        ordered = sorted(self.loads.items(), key=lambda item: (item[0].orientation, item[0].offsets))
        rows = [[str(key), count] for key, count in ordered]
        return header, rows


def verify_selection_bound(sel, u=None, n=None, k=None, constant=SELECTION_CONSTANT):
    if constant <= 0:
        raise SelectionError('Selection constant must be positive', constant=constant)

    u = sel.u if u is None else u
    if u < 1:
        raise SelectionError('Selection bound needs at least one skeleton', u=u)

    first = sel.skeletons[0] if sel.skeletons else None
    n = first.n if n is None else n
    k = first.k if k is None else k
    return LoadReport(u, sel.max_load, n, k, constant, sel.loads)


def orientation_classes(sel):
    """Indices grouped by the coordinate plane their chosen face is parallel to"""
    if not sel.skeletons:
        return OrderedDict()

    first = sel.skeletons[0]
    classes = OrderedDict((orientation, []) for orientation in face_orientations(first.n, first.k))
    for index, face in enumerate(sel.faces):
        classes[tuple(face.orientation)].append(index)
    return classes


def orientation_partition(sel):
    """(vertical, horizontal) index lists for square skeletons in the plane"""
    for skeleton in sel.skeletons:
        if (skeleton.n, skeleton.k) != (2, 1):
            raise SelectionError('Orientation split needs n=2, k=1', n=skeleton.n, k=skeleton.k)

    vertical = [index for index, face in enumerate(sel.faces) if face.vertical]
    horizontal = [index for index, face in enumerate(sel.faces) if not face.vertical]
    return vertical, horizontal


def random_lattice_family(delta, seed, z=(0, 0), n=None, k=1, count=None):
    """
    Skeletons with pairwise distinct centres on the delta lattice of Q_z and
    radii from the delta radius grid. Without a delta, the coarsest lattice
    holding `count` centres is used.
    """
    z = tuple(z)
    n = len(z) if n is None else n
    if len(z) != n:
        z = tuple(z[:n]) + (0,) * max(0, n - len(z))

    if delta is None:
        if count is None:
            raise SelectionError('A lattice family needs a delta or a count')
        m = 2
        while m ** n < count:
            m += 1
        delta = '1/{}'.format(m)

    lattice = CellLattice(z, as_delta(delta))
    count = lattice.u if count is None else int(count)
    if not 1 <= count <= lattice.u:
        raise SelectionError('Family size exceeds the lattice', count=count, u=lattice.u)

    rng = np.random.default_rng(seed)
    cells = rng.choice(lattice.u, size=count, replace=False)
    radii = rng.choice(np.asarray(enumerate_radii(lattice.delta)), size=count)
    return [Skeleton(lattice.centers[cell], r, k) for cell, r in zip(cells, radii)], lattice.delta
