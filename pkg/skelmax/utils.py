import errno
import hashlib
import json
import math
import os
from fractions import Fraction

from skelmax.errors import InvalidDeltaError, InvalidExponentError, SkelmaxError


"""Common utility functions"""


def mkdir(path, mode=0o777):
    """Wrapper for mkdir"""
    try:
        os.makedirs(path, mode)
    except OSError as e:
        if e.errno != errno.EEXIST:
            raise SkelmaxError('Cannot create directory', path=path, reason=e.strerror)
    return True


def parse_fraction(value):
    """Parse '3/2', '2', 1.5 or a Fraction into a Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError('Not a number: {}'.format(value))
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError('Not a finite number: {}'.format(value))
        return Fraction(value).limit_denominator(1 << 20)

    text = str(value).strip()
    if '/' in text:
        num, den = text.split('/', 1)
        return Fraction(Fraction(num.strip()), Fraction(den.strip()))
    return Fraction(text)


def as_delta(value):
    """
    Validate an eccentricity and return it as Fraction(1, m)
    Accepts '1/8', Fraction(1, 8) or 0.125; a bare 8 is rejected
    """
    try:
        delta = parse_fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InvalidDeltaError('delta must be 1/m', delta=value)

    if delta <= 0 or delta >= 1 or delta.numerator != 1:
        raise InvalidDeltaError('delta must be 1/m', delta=value)

    return delta


def delta_label(delta):
    """Printable 1/m form"""
    return '1/{}'.format(as_delta(delta).denominator)


def as_exponent(value, minimum=1):
    """Parse an exponent p >= minimum into a float"""
    try:
        p = float(parse_fraction(value))
    except (ValueError, ZeroDivisionError):
        raise InvalidExponentError('p must be a number', p=value)

    if not p >= minimum or not math.isfinite(p):
        raise InvalidExponentError('p must be at least {}'.format(minimum), p=value)

    return p


def conjugate(p):
    """Hoelder conjugate p' = p / (p - 1)"""
    if p == 1:
        return math.inf
    return p / (p - 1.0)


def parse_point(value, n=None):
    """Parse '0,0' or a sequence into a tuple of numbers"""
    if isinstance(value, str):
        parts = [item for item in value.replace(' ', '').split(',') if item]
        point = tuple(float(parse_fraction(item)) for item in parts)
    else:
        point = tuple(float(item) for item in value)

    if n is not None and len(point) != n:
        raise SkelmaxError('Point has the wrong dimension', point=value, expected=n)

    return point


def parse_lattice_point(value, n=None):
    """Integer lattice point z"""
    point = parse_point(value, n)
    if any(coordinate != int(coordinate) for coordinate in point):
        raise SkelmaxError('Lattice point must have integer coordinates', z=value)

    return tuple(int(coordinate) for coordinate in point)


def format_real(value):
    """Shortest round-trip decimal"""
    return repr(float(value))


def params_digest(params):
    """Stable short digest of a parameter dict"""
    canonical = json.dumps(params, sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(canonical.encode('utf-8')).hexdigest()[:12]


def relative_gap(lhs, rhs):
    """(rhs - lhs) / max(|rhs|, tiny)"""
    scale = max(abs(rhs), abs(lhs), 1e-300)
    return (rhs - lhs) / scale
