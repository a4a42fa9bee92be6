"""
Report emission: JSON with sorted keys, CSV tables and the check ledger
"""

import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from skelmax.config import LEDGER_COLUMNS
from skelmax.errors import SkelmaxError
from skelmax.grid import write_grid_csv
from skelmax.oprint import Oprint
from skelmax.utils import mkdir


def _default(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, Fraction):
        return str(value)
    if hasattr(value, 'to_descriptor'):
        return value.to_descriptor()
    raise TypeError('Not serializable: {!r}'.format(value))


def to_json(data):
    return json.dumps(data, sort_keys=True, indent=2, default=_default) + '\n'


def to_csv(header, rows, with_header=True):
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    if with_header:
        writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(item)) if isinstance(item, (float, np.floating)) else item for item in row])
    return buffer.getvalue()


def _write(text, path, mode='w'):
    if path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    parent = os.path.dirname(path)
    if parent and not os.path.isdir(parent):
        Oprint.warn('Creating output directory {}'.format(parent))
        mkdir(parent)

    try:
        with open(path, mode) as fh:
            fh.write(text)
    except (IOError, OSError) as e:
        raise SkelmaxError('Cannot write report', path=path, reason=e.strerror)


def is_ledger(header):
    return list(header) == list(LEDGER_COLUMNS)


def emit_report(report, fmt='json', path=None):
    """
    Write a report as JSON or CSV to `path`, stdout when no path is given.
    Ledger rows are appended to an existing ledger file.
    """
    if fmt == 'json':
        text = to_json(report.to_dict())
        _write(text, path)
        return text

    header, rows = report.csv_rows()
    if path is not None and is_ledger(header) and os.path.isfile(path) and os.path.getsize(path) > 0:
        text = to_csv(header, rows, with_header=False)
        _write(text, path, 'a')
        return text

    text = to_csv(header, rows)
    _write(text, path)
    return text


def emit_grid(field, fmt='csv', path=None):
    """A sampled field as a grid CSV, or as JSON with its grid"""
    if fmt == 'csv':
        text = write_grid_csv(field, stream=io.StringIO())
        _write(text, path)
        return text

    spec = field.spec
    data = {
        'origin': list(spec.origin),
        'h': spec.h,
        'dims': list(spec.dims),
        'values': field.values.reshape(-1, order='F').tolist(),
    }
    text = to_json(data)
    _write(text, path)
    return text
