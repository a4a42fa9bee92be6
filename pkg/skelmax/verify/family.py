"""
The fixed test function family used for empirical operator norms
"""

from collections import namedtuple
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from skelmax.config import (DEFAULT_SEED, FAMILY_BOXES, FAMILY_FIELDS, FAMILY_SKELETONS, FAMILY_TRUNCATIONS,
                            FAMILY_VERSION, MAX_PLANE_MODULUS)
from skelmax.geometry import CellLattice, Skeleton, enumerate_radii, face_box_bounds
from skelmax.grid import Box, SampledField, constant_field, indicator_field
from skelmax.utils import as_delta


class FamilyMember(namedtuple('FamilyMember', ['name', 'field', 'periodic'])):
    """A test function; periodic members are normalised over the evaluation square"""
    __slots__ = ()


def plane_modulus(m, cap=MAX_PLANE_MODULUS):
    """Largest power of two q with q**2 <= m, at most cap"""
    q = 1
    while 4 * q * q <= m and 2 * q <= cap:
        q *= 2
    return q


@lru_cache(maxsize=None)
def residue_cover(q, n):
    """
    Smallest residue set T mod q such that every residue vector i has a
    shift s with i + s and i - s in T on every axis. Returns T and the
    (q, q) table good[s, r] = (r + s, r - s both in T).
    """
    shifts = np.arange(q)
    plus = (shifts[None, :] + shifts[:, None]) % q
    minus = (shifts[None, :] - shifts[:, None]) % q
    vectors = [list(vector) for vector in product(range(q), repeat=n)]

    for size in range(1, q + 1):
        for members in combinations(range(q), size):
            allowed = np.zeros(q, dtype=bool)
            allowed[list(members)] = True
            good = allowed[plus] & allowed[minus]
            if all(good[:, vector].all(axis=1).any() for vector in vectors):
                return members, good


def shared_plane_radii(lattice):
    """
    A radius per lattice cell placing every face of its skeleton on a plane
    whose offset, taken mod q, lies in the residue cover. The skeletons then
    share face planes and their union is thinner than with a constant radius.
    """
    m = lattice.m
    q = plane_modulus(m)
    residues, good = residue_cover(q, lattice.n)
    usable = good[:, lattice.indices % q].all(axis=2)
    shifts = np.argmax(usable, axis=0)
    steps = m + (shifts - m) % q
    return steps / float(m), residues


class FunctionFamily(object):
    """
    Members in a fixed order: the constant function, the union of the
    plane-sharing skeletons of every lattice cell, fattened skeleton
    indicators on the centre lattice, random boxes, random fields and
    localized w**(-p'/p). Members are built on demand.
    """
    version = FAMILY_VERSION

    def __init__(self, spec, z, delta, w=None, p=None, seed=DEFAULT_SEED, skeletons=FAMILY_SKELETONS,
                 boxes=FAMILY_BOXES, fields=FAMILY_FIELDS, truncations=FAMILY_TRUNCATIONS, k=1):
        self._spec = spec
        self._z = tuple(int(value) for value in z)
        self._delta = as_delta(delta)
        self._w = w
        self._p = None if p is None else float(p)
        self._seed = seed
        self._skeletons = int(skeletons)
        self._boxes = int(boxes)
        self._fields = int(fields)
        self._truncations = tuple(truncations) if w is not None and p is not None and p > 1 else ()
        self._k = k

    @property
    def spec(self):
        return self._spec

    def _rngs(self):
        skeletons, boxes, fields = np.random.SeedSequence(self._seed).spawn(3)
        return np.random.default_rng(skeletons), np.random.default_rng(boxes), np.random.default_rng(fields)

    def _skeleton_list(self, rng):
        lattice = CellLattice(self._z, self._delta)
        radii = np.asarray(enumerate_radii(self._delta))
        if lattice.u <= self._skeletons:
            cells = np.arange(lattice.u)
        else:
            cells = np.sort(rng.choice(lattice.u, size=self._skeletons, replace=False))
        chosen = rng.choice(radii, size=len(cells))
        return [Skeleton(lattice.centers[cell], r, self._k) for cell, r in zip(cells, chosen)]

    def _random_box(self, rng):
        region = self._spec.bounds
        width = np.asarray(region.upper) - np.asarray(region.lower)
        lower = np.asarray(region.lower) + rng.random(self._spec.n) * width
        sides = float(self._delta) + rng.random(self._spec.n) * (2.0 - float(self._delta))
        upper = np.minimum(lower + sides, region.upper)
        return Box(lower, upper)

    def _union(self):
        lattice = CellLattice(self._z, self._delta)
        radii, _ = shared_plane_radii(lattice)
        lower, upper = face_box_bounds(lattice.centers, radii, float(self._delta), lattice.n, self._k)
        lower = lower.reshape(-1, lattice.n)
        upper = upper.reshape(-1, lattice.n)
        return indicator_field(self._spec, [Box(lo, hi) for lo, hi in zip(lower, upper)])

    def __iter__(self):
        skeleton_rng, box_rng, field_rng = self._rngs()
        yield FamilyMember('constant', constant_field(self._spec, 1.0), True)
        yield FamilyMember('union', self._union(), False)

        for index, skeleton in enumerate(self._skeleton_list(skeleton_rng)):
            boxes = [face.box for face in skeleton.faces(self._delta)]
            yield FamilyMember('skeleton-{}'.format(index), indicator_field(self._spec, boxes), False)

        for index in range(self._boxes):
            box = self._random_box(box_rng)
            yield FamilyMember('box-{}'.format(index), indicator_field(self._spec, [box]), False)

        for index in range(self._fields):
            yield FamilyMember('field-{}'.format(index),
                               SampledField(self._spec, field_rng.random(self._spec.dims)), False)

        if self._truncations:
            inverse = 1.0 / self._w.values
            with np.errstate(under='ignore'):
                dual = (inverse / inverse.max()) ** (1.0 / (self._p - 1.0))
            for t in self._truncations:
                center = [value + 0.5 for value in self._z]
                mask = indicator_field(self._spec, [Box.cube(center, t / 2.0)]).values
                yield FamilyMember('dual-{:g}'.format(t), SampledField(self._spec, dual * mask), False)

    def __len__(self):
        lattice_size = CellLattice(self._z, self._delta).u
        return 2 + min(lattice_size, self._skeletons) + self._boxes + self._fields + len(self._truncations)

    def names(self):
        return [member.name for member in self]
