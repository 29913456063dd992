import io
import json
import os
import tempfile
import unittest
from fractions import Fraction
from unittest.mock import patch

import plslab
from models.data import load_instance, save_instance
from models.dkm import DkmInstance
from models.mufl import MuflInstance
from models.reduction_mufl import build_mufl
from models.sat import parse_wcnf
from models.verbosity import set_quiet
from models import fields

TINY1 = "p wcnf 2 2\n1 1 2 0\n1 -1 2 0\n"


class CliTestCase(unittest.TestCase):
    """Runs plslab.main with captured output inside a scratch directory"""

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.wcnf = self.path('tiny1.wcnf')
        with open(self.wcnf, 'w') as f:
            f.write(TINY1)

    def tearDown(self):
        self.tmp.cleanup()
        with patch('sys.stderr', new_callable=io.StringIO):
            set_quiet(False)

    def path(self, name):
        return os.path.join(self.tmp.name, name)

    def run_cli(self, *argv):
        with patch('sys.stdout', new_callable=io.StringIO) as out, \
                patch('sys.stderr', new_callable=io.StringIO) as err:
            code = plslab.main(list(argv))
        return code, out.getvalue(), err.getvalue()

    def output_fields(self, stdout):
        return dict(line.split('\t', 1) for line in stdout.splitlines() if '\t' in line)


class TestReduceCommand(CliTestCase):
    """Tests for `plslab reduce`"""

    def test_mufl(self):
        """4 facilities and 6 clients, manifest alongside"""
        out = self.path('tiny1.mufl.json')
        code, _stdout, _stderr = self.run_cli('reduce', '--quiet', '--target', 'mufl', '--c', '3/2',
                                              self.wcnf, '--out', out)
        self.assertEqual(code, 0)
        instance = load_instance(out)
        self.assertIsInstance(instance, MuflInstance)
        self.assertEqual(len(instance.facilities), 4)
        self.assertEqual(len(instance.clients), 6)
        with open(out + '.manifest.json') as f:
            manifest = json.load(f)
        self.assertEqual(manifest['subcommand'], 'reduce')
        self.assertEqual(manifest['parameters']['c'], '3/2')
        self.assertEqual(manifest['inputs'], [self.wcnf])

    def test_dkm_to_stdout(self):
        """Without --out the document goes to standard output"""
        code, stdout, _stderr = self.run_cli('reduce', '--quiet', '--target', 'dkm', self.wcnf)
        self.assertEqual(code, 0)
        document = json.loads(stdout)
        self.assertEqual(document[fields.K], 2)
        self.assertEqual(document[fields.META][fields.META_EPS], '1/12')

    def test_output_is_deterministic(self):
        """Same inputs give byte-identical documents"""
        first = self.run_cli('reduce', '--quiet', '--target', 'dkm', self.wcnf)[1]
        second = self.run_cli('reduce', '--quiet', '--target', 'dkm', self.wcnf)[1]
        self.assertEqual(first, second)

    def test_c_out_of_range(self):
        """c = 2 is rejected with a single machine-parsable line"""
        code, stdout, stderr = self.run_cli('reduce', '--quiet', '--c', '2', self.wcnf)
        self.assertEqual(code, 2)
        self.assertEqual(stdout, '')
        self.assertTrue(stderr.startswith('error\tValidationError\t'))
        self.assertEqual(len(stderr.strip().splitlines()), 1)

    def test_parse_error(self):
        """Malformed WCNF exits 2 with a ParseError line"""
        bad = self.path('bad.wcnf')
        with open(bad, 'w') as f:
            f.write("p wcnf 2 1\n1 1 2 3 0\n")
        code, _stdout, stderr = self.run_cli('reduce', '--quiet', bad)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tParseError\t'))

    def test_usage_error(self):
        """Unknown targets are argparse usage errors"""
        with self.assertRaises(SystemExit) as ctx:
            self.run_cli('reduce', '--target', 'tsp', self.wcnf)
        self.assertEqual(ctx.exception.code, 2)

    def test_usage_error_is_one_line(self):
        """Usage errors print a single machine-parsable line"""
        with patch('sys.stdout', new_callable=io.StringIO), \
                patch('sys.stderr', new_callable=io.StringIO) as err:
            with self.assertRaises(SystemExit) as ctx:
                plslab.main(['reduce', '--c'])
        self.assertEqual(ctx.exception.code, 2)
        self.assertTrue(err.getvalue().startswith('error\tUsageError\t'))
        self.assertEqual(len(err.getvalue().strip().splitlines()), 1)

    def test_input_not_utf8(self):
        """Undecodable input is a ParseError"""
        bad = self.path('latin1.wcnf')
        with open(bad, 'wb') as f:
            f.write(b"c caf\xe9\np wcnf 2 2\n1 1 2 0\n1 -1 2 0\n")
        code, _stdout, stderr = self.run_cli('reduce', '--quiet', bad)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tParseError\t'))

    def test_unwritable_output(self):
        """An --out path in a missing directory is an OutputError"""
        out = self.path(os.path.join('missing', 'tiny1.json'))
        code, _stdout, stderr = self.run_cli('reduce', '--quiet', self.wcnf, '--out', out)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tOutputError\t'))
        self.assertEqual(len(stderr.strip().splitlines()), 1)


class TestSolveCommand(CliTestCase):
    """Tests for `plslab solve`"""

    def reduce(self, target):
        out = self.path(f'tiny1.{target}.json')
        self.run_cli('reduce', '--quiet', '--target', target, self.wcnf, '--out', out)
        return out

    def test_mufl_from_all_open(self):
        """Best improvement from all-open ends at cost 9"""
        log = self.path('run.tsv')
        code, stdout, _stderr = self.run_cli('solve', '--quiet', self.reduce('mufl'), '--start', 'all-open',
                                             '--pivot', 'best', '--log', log)
        self.assertEqual(code, 0)
        result = self.output_fields(stdout)
        self.assertEqual(result['cost'], '9')
        self.assertEqual(result['final'], '{~x1,x2}')
        self.assertEqual(result['terminated'], 'local_optimum')
        with open(log) as f:
            self.assertEqual(f.read().splitlines(), ['0\t11\tstart', '1\t10\tclose x1', '2\t9\tclose ~x2'])
        self.assertTrue(os.path.exists(log + '.manifest.json'))
        with open(log + '.manifest.json') as f:
            metrics = json.load(f)['metrics']
        self.assertEqual(metrics['search_steps'], 2)
        self.assertGreater(metrics['cost_evaluations'], 0)

    def test_sat_from_given_start(self):
        """SAT/Flip from 00 reaches weight 2"""
        code, stdout, _stderr = self.run_cli('solve', '--quiet', self.wcnf, '--start', '00')
        self.assertEqual(code, 0)
        result = self.output_fields(stdout)
        self.assertEqual(result['problem'], 'SAT/Flip')
        self.assertEqual(result['cost'], '2')

    def test_dkm_given_labels(self):
        """DKM/Swap accepts comma-separated labels"""
        code, stdout, _stderr = self.run_cli('solve', '--quiet', self.reduce('dkm'), '--start', 'b1,b2')
        self.assertEqual(code, 0)
        self.assertEqual(self.output_fields(stdout)['local_optimum'], 'true')

    def test_zero_step_budget(self):
        """--max-steps 0 returns the start"""
        code, stdout, _stderr = self.run_cli('solve', '--quiet', self.reduce('mufl'), '--start', 'all-open',
                                             '--max-steps', '0')
        self.assertEqual(code, 0)
        result = self.output_fields(stdout)
        self.assertEqual(result['cost'], '11')
        self.assertEqual(result['terminated'], 'step_budget')

    def test_random_start_is_seeded(self):
        """Same seed, same output"""
        instance = self.reduce('dkm')
        first = self.run_cli('solve', '--quiet', instance, '--seed', '42')[1]
        second = self.run_cli('solve', '--quiet', instance, '--seed', '42')[1]
        self.assertEqual(first, second)

    def test_global_options_before_subcommand(self):
        """--seed and --quiet may precede the subcommand"""
        instance = self.reduce('dkm')
        before = self.run_cli('--quiet', '--seed', '7', 'solve', instance)
        after = self.run_cli('solve', '--quiet', instance, '--seed', '7')
        self.assertEqual(before, after)
        self.assertEqual(before[2], '')

    def test_non_numeric_coordinates(self):
        """Coordinates that are not numbers are a ParseError"""
        path = self.reduce('dkm')
        with open(path) as f:
            document = json.load(f)
        document[fields.COORDS] = [['z'], [1]]
        with open(path, 'w') as f:
            json.dump(document, f)
        code, _stdout, stderr = self.run_cli('solve', '--quiet', path)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tParseError\t'))

    def test_infeasible_starts(self):
        """all-open on DKM and wrong-length bit strings are rejected"""
        cases = [
            (self.reduce('dkm'), 'all-open'),
            (self.wcnf, '011'),
            (self.reduce('dkm'), 'x1'),
            (self.reduce('mufl'), 'b1'),
        ]
        for path, start in cases:
            with self.subTest(start=start):
                code, _stdout, stderr = self.run_cli('solve', '--quiet', path, '--start', start)
                self.assertEqual(code, 2)
                self.assertTrue(stderr.startswith('error\tValidationError\t'))


class TestVerifyCommand(CliTestCase):
    """Tests for `plslab verify`"""

    def test_tiny_instance(self):
        """Both targets verify cleanly"""
        for target in ('mufl', 'dkm'):
            with self.subTest(target=target):
                out = self.path(f'report.{target}.json')
                code, stdout, _stderr = self.run_cli('verify', '--quiet', '--target', target, self.wcnf,
                                                     '--out', out)
                self.assertEqual(code, 0)
                self.assertEqual(self.output_fields(stdout)['status'], 'OK')
                with open(out) as f:
                    self.assertEqual(json.load(f)['violations'], [])

    def test_corrupted_instance(self):
        """A perturbed distance exits 1"""
        inst = build_mufl(parse_wcnf(TINY1))
        rows = [list(row) for row in inst.distances]
        rows[0][4] = rows[4][0] = Fraction(1)
        corrupted = MuflInstance(inst.sites, inst.facilities, inst.opening_costs, rows, meta=inst.meta)
        with patch('models.oracle.build_mufl', return_value=corrupted):
            code, stdout, _stderr = self.run_cli('verify', '--quiet', self.wcnf, '--out', self.path('r.json'))
        self.assertEqual(code, 1)
        self.assertIn('violation\tclosed-form-cost', stdout)

    def test_size_cap(self):
        """Exceeding the cap is an error, not a violation"""
        code, _stdout, stderr = self.run_cli('verify', '--quiet', '--size-cap', '3', self.wcnf)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tCapacityError\t'))


class TestEmbedCommand(CliTestCase):
    """Tests for `plslab embed`"""

    def test_writes_coordinates(self):
        """Coordinates land under coords and the bound holds"""
        instance = self.path('tiny1.dkm.json')
        self.run_cli('reduce', '--quiet', '--target', 'dkm', self.wcnf, '--out', instance)
        code, stdout, _stderr = self.run_cli('embed', '--quiet', instance)
        self.assertEqual(code, 0)
        result = self.output_fields(stdout)
        self.assertEqual(result['dimension'], '5')
        self.assertTrue(result['bound'].endswith('OK'))
        embedded = load_instance(instance)
        self.assertIsInstance(embedded, DkmInstance)
        self.assertEqual(len(embedded.coords), 6)

    def test_bound_failure(self):
        """Claiming more variables than the rank supports exits 1"""
        inst = DkmInstance(sites=('a', 'b'), K=1, distances=((0, 1), (1, 0)),
                           meta={fields.META_N: 5, fields.META_M: 5})
        path = self.path('small.json')
        save_instance(path, inst)
        code, stdout, _stderr = self.run_cli('embed', '--quiet', path, '--out', self.path('small.out.json'))
        self.assertEqual(code, 1)
        self.assertTrue(self.output_fields(stdout)['bound'].endswith('FAIL'))

    def test_rejects_mufl(self):
        """Only K-means instances are embedded"""
        instance = self.path('tiny1.mufl.json')
        self.run_cli('reduce', '--quiet', '--target', 'mufl', self.wcnf, '--out', instance)
        code, _stdout, stderr = self.run_cli('embed', '--quiet', instance)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tValidationError\t'))

    def test_not_embeddable(self):
        """A table violating squared-Euclidean structure exits 2"""
        inst = DkmInstance(sites=('a', 'b', 'c'), K=1, distances=((0, 1, 1), (1, 0, 9), (1, 9, 0)))
        path = self.path('bad.json')
        save_instance(path, inst)
        code, _stdout, stderr = self.run_cli('embed', '--quiet', path)
        self.assertEqual(code, 2)
        self.assertTrue(stderr.startswith('error\tEmbeddingError\t'))


class TestOracleCommand(CliTestCase):
    """Tests for `plslab oracle`"""

    def test_small_campaign(self):
        """A seeded campaign passes and writes a report"""
        out = self.path('campaign.json')
        code, stdout, _stderr = self.run_cli('oracle', '--quiet', '--count', '6', '--max-variables', '3',
                                             '--max-clauses', '4', '--workers', '2', '--out', out)
        self.assertEqual(code, 0)
        self.assertEqual(self.output_fields(stdout)['status'], 'OK')
        with open(out) as f:
            self.assertEqual(json.load(f)['runs'], 12)
        self.assertTrue(os.path.exists(out + '.manifest.json'))

    def test_single_target(self):
        """--targets restricts the campaign"""
        code, stdout, _stderr = self.run_cli('oracle', '--quiet', '--count', '3', '--targets', 'mufl',
                                             '--max-variables', '3', '--max-clauses', '3',
                                             '--out', self.path('c.json'))
        self.assertEqual(code, 0)
        self.assertIn('3 (mufl)', self.output_fields(stdout)['runs'])


if __name__ == '__main__':
    unittest.main()
