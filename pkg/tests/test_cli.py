import json

import numpy as np
import pandas as pd
import pytest

from base.errors import ConfigError
from parse_config import DEFAULTS, ConfigParser
from run import EXIT_CONFIG_ERROR, EXIT_IO_ERROR, EXIT_OK, EXIT_SUITE_FAILURE, OPTIONS, SWITCHES, build_parser, main

SQRT2 = np.sqrt(2.0)


def run(*argv):
    return main([str(arg) for arg in argv], create_log_dir=False)


def write_config(path, content):
    path.write_text(json.dumps(content))
    return path


class TestConfig:

    def test_precedence(self):
        config = ConfigParser({'command': 'fig3a', 'theta_count': 10}, {'theta_count': 20, 'seed': None},
                              create_log_dir=False)
        assert config['theta_count'] == 20
        assert config['seed'] == DEFAULTS['seed']
        file_only = ConfigParser({'command': 'fig3a', 'theta_count': 10}, create_log_dir=False)
        assert file_only['theta_count'] == 10

    def test_mdr_names_are_normalized(self):
        config = ConfigParser({'command': 'regions', 'mdr': 'he, OZ'}, create_log_dir=False)
        assert config['mdr'] == ['He', 'Oz']

    def test_theta_grid_contains_pi_over_eight(self):
        grid = ConfigParser({'command': 'fig3a', 'theta_count': 10}, create_log_dir=False).theta_grid()
        assert len(grid) == 11
        assert np.any(grid == np.pi / 8)
        assert np.all(np.diff(grid) > 0)

    def test_from_parsed_flags(self, tmp_path):
        cfg = write_config(tmp_path / 'fig3b.json', {'theta_count': 12, 'seed': 7})
        args = build_parser().parse_args(['fig3b', '-c', str(cfg), '--seed', '9'])
        config = ConfigParser.from_args(args, OPTIONS + SWITCHES, create_log_dir=False)
        assert config['command'] == 'fig3b'
        assert config['theta_count'] == 12
        assert config['seed'] == 9

    @pytest.mark.parametrize("config", [
        {'theta_count': 1},
        {'mdr': ['Xy']},
        {'format': 'xml'},
        {'dims': [1]},
        {'suite': ['prop2']},
        {'not_a_key': 1},
    ])
    def test_invalid(self, config):
        with pytest.raises(ConfigError):
            ConfigParser({'command': 'fig3a', **config}, create_log_dir=False)


class TestExitCodes:

    def test_invalid_flags(self, tmp_path):
        assert run('fig3a', '--theta-count', 1, '-o', tmp_path) == EXIT_CONFIG_ERROR
        assert run('regions', '--mdr', 'xx', '-o', tmp_path) == EXIT_CONFIG_ERROR
        assert run('regions', '--format', 'xml', '-o', tmp_path) == EXIT_CONFIG_ERROR

    def test_unreadable_config(self, tmp_path):
        assert run('regions', '-c', tmp_path / 'missing.json', '-o', tmp_path) == EXIT_CONFIG_ERROR

    def test_invalid_context(self, tmp_path):
        config = write_config(tmp_path / 'config.json', {'delta_a': 0.1, 'delta_b': 0.1, 'abs_c': 1.0})
        assert run('regions', '-c', config, '-o', tmp_path / 'out') == EXIT_CONFIG_ERROR

    def test_output_is_a_file(self, tmp_path):
        blocker = tmp_path / 'blocker'
        blocker.write_text('')
        assert run('max-search', '--restarts', 2, '-o', blocker) == EXIT_IO_ERROR


class TestCommands:

    def test_regions(self, tmp_path):
        config = write_config(tmp_path / 'config.json', {'boundary_points': 1001})
        out = tmp_path / 'out'
        assert run('regions', '-c', config, '--mdr', 'he,oz,b1', '-o', out) == EXIT_OK
        assert sorted(p.name for p in out.iterdir()) == ['region_B1.csv', 'region_He.csv', 'region_Oz.csv']

        he = pd.read_csv(out / 'region_He.csv')
        assert len(he) == 1001
        np.testing.assert_allclose(he.eps * he.eta, 1.0, atol=1e-8)
        b1 = pd.read_csv(out / 'region_B1.csv')
        assert (b1.eps ** 2 + b1.eta ** 2).min() == pytest.approx(1.0, abs=1e-6)
        oz = pd.read_csv(out / 'region_Oz.csv')
        assert (oz.eps ** 2 + oz.eta ** 2).min() == pytest.approx((2 - SQRT2) ** 2, abs=1e-6)

    def test_json_format(self, tmp_path):
        assert run('regions', '--mdr', 'ha', '--format', 'json', '-o', tmp_path) == EXIT_OK
        content = json.loads((tmp_path / 'region_Ha.json').read_text())
        assert list(content) == ['eps', 'eta']
        assert len(content['eps']) == len(content['eta']) == DEFAULTS['boundary_points']

    def test_bounds_table(self, tmp_path):
        assert run('bounds-table', '--gamma-grid', 16, '-o', tmp_path) == EXIT_OK
        table = pd.read_csv(tmp_path / 'bounds_table.csv').set_index('mdr')
        assert list(table.index) == ['He', 'B2', 'B1', 'We', 'Ha', 'Oz']
        assert np.all(np.abs(table.bound - table.reference_bound) <= table.reference_tolerance)
        assert table.loc['He', 'bound'] == pytest.approx(1.0, abs=1e-6)
        assert table.loc['B2', 'chsh_bound'] == pytest.approx(4.0, abs=1e-6)

    def test_fig3a(self, tmp_path):
        assert run('fig3a', '--theta-count', 16, '--mdr', 'he,b2', '--gamma-grid', 16, '-o', tmp_path) == EXIT_OK
        df = pd.read_csv(tmp_path / 'fig3a.csv')
        assert list(df.columns) == ['theta3', 'qm_sum', 'bound_He', 'bound_B2']
        assert len(df) == 16
        row = df.iloc[1]
        assert row.theta3 == pytest.approx(np.pi / 8)
        assert row.qm_sum == pytest.approx(SQRT2, abs=1e-10)
        assert row.bound_He == pytest.approx(1.0, abs=1e-6)
        np.testing.assert_allclose(df.bound_B2, SQRT2, atol=1e-6)
        np.testing.assert_allclose(df.qm_sum, np.cos(2 * df.theta3) + np.sin(2 * df.theta3), atol=1e-10)

    def test_fig3b(self, tmp_path):
        assert run('fig3b', '--theta-count', 16, '--mdr', 'b2', '--gamma-grid', 16, '-o', tmp_path) == EXIT_OK
        df = pd.read_csv(tmp_path / 'fig3b.csv')
        np.testing.assert_allclose(df.bound_B2, 4.0, atol=1e-6)
        np.testing.assert_allclose(df.chsh_sum, SQRT2 * (np.cos(2 * df.theta3) + np.sin(2 * df.theta3) + 1),
                                   atol=1e-10)
        assert np.all(df.qm_quadratic_max == 4.0)

    def test_verify(self, tmp_path):
        args = ('verify', '--suite', 'prop1', '--dims', '2,3', '--trials', 20, '-o', tmp_path)
        assert run(*args) == EXIT_OK
        result = pd.read_csv(tmp_path / 'verify.csv')
        assert list(result.suite) == ['prop1']
        assert result.passed.all()

    def test_verify_negative_control(self, tmp_path):
        args = ('verify', '--suite', 'prop1', '--dims', '3', '--trials', 20, '--negative-control', '-o', tmp_path)
        assert run(*args) == EXIT_SUITE_FAILURE
        assert not pd.read_csv(tmp_path / 'verify.csv').passed.any()

    def test_max_search_is_deterministic(self, tmp_path):
        first, second = tmp_path / 'first', tmp_path / 'second'
        assert run('max-search', '--restarts', 5, '--seed', 7, '-o', first) == EXIT_OK
        assert run('max-search', '--restarts', 5, '--seed', 7, '-o', second) == EXIT_OK
        for name in ('max_search.csv', 'max_search_state.csv'):
            assert (first / name).read_bytes() == (second / name).read_bytes()
        values = pd.read_csv(first / 'max_search.csv').value
        assert values.max() == pytest.approx(SQRT2, abs=1e-6)
