"""
Check, scan and scaling reports

Every report knows its JSON form (`to_dict`) and its CSV form (`csv_rows`).
"""

from collections import namedtuple

from skelmax.config import LEDGER_COLUMNS, RELATIVE_TOLERANCE
from skelmax.utils import format_real, params_digest, relative_gap


class CheckReport(object):
    """One inequality check: lhs <= rhs within a relative tolerance"""

    def __init__(self, check, params, lhs, rhs, tolerance=RELATIVE_TOLERANCE, seconds=None, extras=None,
                 passed=None):
        self.check = check
        self.params = dict(params)
        self.lhs = float(lhs)
        self.rhs = float(rhs)
        self.tolerance = tolerance
        self.seconds = seconds
        self.extras = dict(extras or {})
        self._passed = passed

    @property
    def slack(self):
        return self.rhs - self.lhs

    @property
    def relative_slack(self):
        return relative_gap(self.lhs, self.rhs)

    @property
    def passed(self):
        if self._passed is not None:
            return bool(self._passed)
        return self.lhs <= self.rhs + self.tolerance * abs(self.rhs)

    @property
    def digest(self):
        return params_digest(self.params)

    def ledger_row(self):
        seconds = '' if self.seconds is None else '{:.3f}'.format(self.seconds)
        return [self.check, self.digest, format_real(self.lhs), format_real(self.rhs), format_real(self.slack),
                'true' if self.passed else 'false', seconds]

    def csv_rows(self):
        return list(LEDGER_COLUMNS), [self.ledger_row()]

    def to_dict(self):
        return {
            'check': self.check,
            'params': self.params,
            'params_digest': self.digest,
            'lhs': self.lhs,
            'rhs': self.rhs,
            'slack': self.slack,
            'pass': self.passed,
            'seconds': self.seconds,
            'details': self.extras,
        }


def worst_report(check, params, reports, tolerance=RELATIVE_TOLERANCE, extras=None):
    """
    Fold per-instance reports into one: lhs and rhs of the instance with the
    smallest relative slack, passing only when every instance passes
    """
    reports = list(reports)
    details = dict(extras or {})
    details['instances'] = len(reports)
    details['failures'] = sum(1 for report in reports if not report.passed)
    if not reports:
        details['vacuous'] = True
        return CheckReport(check, params, 0.0, 0.0, tolerance, extras=details, passed=True)

    worst = min(reports, key=lambda report: report.relative_slack)
    details['worst'] = reports.index(worst)
    details.update({key: value for key, value in worst.extras.items() if key not in details})
    return CheckReport(check, params, worst.lhs, worst.rhs, tolerance, extras=details,
                       passed=all(report.passed for report in reports))


class ScanTable(object):
    """Rows of a parameter scan with a pass flag"""

    def __init__(self, name, columns, rows, passed, params=None):
        self.name = name
        self.columns = list(columns)
        self.rows = [list(row) for row in rows]
        self.passed = bool(passed)
        self.params = params or {}

    def column(self, name):
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def to_dict(self):
        data = {'scan': self.name, 'columns': self.columns, 'rows': self.rows, 'pass': self.passed}
        data.update(self.params)
        return data

    def csv_rows(self):
        return self.columns, self.rows


class LocalizedProfile(namedtuple('LocalizedProfile', ['members', 'norms', 'slope'])):
    """Best member that is not periodic per delta, its ratios and their log-log slope"""
    __slots__ = ()


class ScalingReport(object):
    """Empirical norms per delta with a least-squares log-log fit"""

    def __init__(self, p, deltas, norms, slope, intercept, residual, exponent, passed, constants=None,
                 params=None, members=None, profile=None):
        self.p = p
        self.deltas = list(deltas)
        self.norms = [float(value) for value in norms]
        self.slope = float(slope)
        self.intercept = float(intercept)
        self.residual = float(residual)
        self.exponent = float(exponent)
        self.passed = bool(passed)
        self.constants = None if constants is None else [float(value) for value in constants]
        self.params = params or {}
        self.members = list(members) if members else [''] * len(self.norms)
        self.profile = profile

    @property
    def margin(self):
        return self.exponent - self.slope

    @property
    def saturated(self):
        """The constant member attains the estimate at every delta"""
        return all(member == 'constant' for member in self.members)

    def to_dict(self):
        data = {
            'p': self.p,
            'deltas': [str(delta) for delta in self.deltas],
            'norms': self.norms,
            'members': self.members,
            'saturated': self.saturated,
            'slope': self.slope,
            'intercept': self.intercept,
            'residual': self.residual,
            'exponent': self.exponent,
            'margin': self.margin,
            'fitted_constants': self.constants,
            'localized': None if self.profile is None else dict(self.profile._asdict()),
            'bound': 'lower',
            'pass': self.passed,
        }
        data.update(self.params)
        return data

    def csv_rows(self):
        header = ['delta', 'norm', 'member', 'localized_member', 'localized_norm', 'fitted_constant']
        constants = self.constants or [''] * len(self.norms)
        if self.profile is None:
            localized = [('', '')] * len(self.norms)
        else:
            localized = [(name, format_real(value)) for name, value in zip(self.profile.members, self.profile.norms)]
        rows = []
        for delta, norm, member, (name, value), constant in zip(self.deltas, self.norms, self.members, localized,
                                                                constants):
            rows.append([str(delta), format_real(norm), member, name, value,
                         '' if constant == '' else format_real(constant)])
        return header, rows
