import io
import json
import os
import shutil
import sys
import tempfile
from subprocess import PIPE, Popen as popen
from unittest import TestCase

from skelmax import __version__ as VERSION
from skelmax.cli import main
from skelmax.grid import read_grid_csv
from skelmax.oprint import Oprint


class TestHelp(TestCase):
    """Test usage"""
    def test_returns_usage_information(self):
        output = popen([sys.executable, '-m', 'skelmax', '-h'], stdout=PIPE).communicate()[0]
        self.assertTrue(b'Usage:' in output)


class TestVersion(TestCase):
    """Test version"""
    def test_returns_version_information(self):
        output = popen([sys.executable, '-m', 'skelmax', '--version'], stdout=PIPE).communicate()[0]
        self.assertEqual(output.decode('utf-8').strip(), VERSION)


class TestCommands(TestCase):
    def setUp(self):
        self.tmp = tempfile.mkdtemp()
        Oprint.disable()

    def tearDown(self):
        shutil.rmtree(self.tmp)

    def path(self, name):
        return os.path.join(self.tmp, name)

    def test_apconst_report(self):
        out = self.path('reports/skeleton.json')
        code = main(['apconst', '--class=skeleton', '--p=2', '--delta=1/4', '--refinement=1', '--out={}'.format(out)])
        self.assertEqual(code, 0)
        with open(out) as fh:
            data = json.load(fh)
        self.assertAlmostEqual(data['value'] / 0.05, 1.0, places=9)
        self.assertEqual(data['seed'], 7)

    def test_field_grid(self):
        out = self.path('field.csv')
        code = main(['field', '--operator=skeleton', '--delta=1/4', '--refinement=1', '--out={}'.format(out)])
        self.assertEqual(code, 0)
        field = read_grid_csv(out)
        self.assertEqual(field.spec.dims, (4, 4))
        self.assertTrue((abs(field.values - 1.0) < 1e-12).all())

    def test_select_load_table(self):
        out = self.path('loads.csv')
        code = main(['select', '--delta=1/4', '--format=csv', '--out={}'.format(out)])
        self.assertEqual(code, 0)
        with open(out) as fh:
            self.assertEqual(fh.readline().strip(), 'plane_key,count')

    def test_verify_ledger_is_appended(self):
        out = self.path('ledger.csv')
        args = ['verify', '--check=duality', '--samples=2', '--delta=1/4', '--refinement=1', '--out={}'.format(out)]
        self.assertEqual(main(args), 0)
        self.assertEqual(main(args), 0)
        with open(out) as fh:
            lines = fh.read().splitlines()
        self.assertEqual(lines[0], 'check,params_digest,lhs,rhs,slack,pass,seconds')
        self.assertEqual(len(lines), 3)
        self.assertEqual(lines[1], lines[2])

    def test_invalid_delta(self):
        self.assertEqual(main(['field', '--delta=1/3.5']), 2)

    def test_missing_class(self):
        self.assertEqual(main(['apconst']), 2)

    def test_unknown_check(self):
        self.assertEqual(main(['verify', '--check=everything']), 2)

    def test_output_directory_creation_is_reported(self):
        stream = io.StringIO()
        saved, Oprint.stream = Oprint.stream, stream
        try:
            out = self.path('nested/dir/field.csv')
            self.assertEqual(main(['field', '--delta=1/4', '--refinement=1', '--out={}'.format(out)]), 0)
            self.assertIn('Creating output directory {}'.format(os.path.dirname(out)), stream.getvalue())

            stream.seek(0)
            stream.truncate()
            self.assertEqual(main(['field', '--delta=1/4', '--refinement=1', '--out={}'.format(out)]), 0)
            self.assertNotIn('Creating output directory', stream.getvalue())
        finally:
            Oprint.stream = saved
