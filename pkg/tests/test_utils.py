import json
import logging
from functools import partial

import numpy as np
import pandas as pd
import pytest

import utils.util
from experiments.common import bell_gammas
from global_config import THREADS_ENV, get_num_threads
from logger.filters import FilterTrialRecords
from mdr_catalog import MdrId
from utils import SuiteTracker, parallel_map, table_to_text, write_tables


class TestSuiteTracker:

    def test_residuals_against_tolerance(self):
        tracker = SuiteTracker(['prop1', 'gamma'], {'prop1': 1e-9, 'gamma': 1e-6})
        tracker.update('prop1', 1e-12)
        tracker.update('prop1', 5e-10)
        tracker.update('gamma', 1e-3)
        assert tracker.passed('prop1')
        assert not tracker.passed('gamma')
        assert not tracker.all_passed()

        result = tracker.result().set_index('suite')
        assert result.loc['prop1', 'trials'] == 2
        assert result.loc['prop1', 'max_residual'] == pytest.approx(5e-10)
        assert result.loc['gamma', 'failures'] == 1
        assert list(result.passed) == [True, False]

    def test_explicit_verdict_and_infinite_residual(self):
        tracker = SuiteTracker(['weighted'], {'weighted': 1e-9})
        tracker.update('weighted', 0.0, failed=True, n=3)
        tracker.update('weighted', np.inf)
        result = tracker.result()
        assert result.loc[0, 'trials'] == 4
        assert result.loc[0, 'failures'] == 4
        assert np.isinf(result.loc[0, 'max_residual'])

    def test_nan_residual_fails(self):
        tracker = SuiteTracker(['lambda'], {'lambda': 1e-8})
        tracker.update('lambda', np.nan)
        assert not tracker.passed('lambda')


class TestTables:

    def test_csv_keeps_full_precision(self):
        df = pd.DataFrame({'theta3': [np.pi / 8], 'value': [np.sqrt(2.0)]})
        text = table_to_text(df, 'csv')
        header, row = text.strip().split('\n')
        assert header == 'theta3,value'
        assert [float(x) for x in row.split(',')] == [np.pi / 8, np.sqrt(2.0)]

    def test_json_maps_columns_to_arrays(self):
        df = pd.DataFrame({'mdr': ['He', 'Oz'], 'bound': [1.0, 2 * np.sqrt(2.0) - 1]})
        content = json.loads(table_to_text(df, 'json'))
        assert content == {'mdr': ['He', 'Oz'], 'bound': [1.0, 2 * np.sqrt(2.0) - 1]}

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            table_to_text(pd.DataFrame({'a': [1]}), 'xml')

    def test_write_tables_leaves_no_temporary_files(self, tmp_path):
        tables = {'fig3a': pd.DataFrame({'a': [1.5]}), 'extra': pd.DataFrame({'b': [2.5]})}
        paths = write_tables(tables, tmp_path / 'out', 'csv')
        assert paths == [tmp_path / 'out' / 'fig3a.csv', tmp_path / 'out' / 'extra.csv']
        assert sorted(p.name for p in (tmp_path / 'out').iterdir()) == ['extra.csv', 'fig3a.csv']

    def test_failed_table_leaves_no_outputs(self, tmp_path, monkeypatch):
        render = utils.util.table_to_text
        calls = []

        def render_then_fail(df, fmt):
            calls.append(fmt)
            if len(calls) == 2:
                raise OSError("disk full")
            return render(df, fmt)

        monkeypatch.setattr(utils.util, 'table_to_text', render_then_fail)
        tables = {'max_search': pd.DataFrame({'a': [1.0]}), 'max_search_state': pd.DataFrame({'b': [2.0]})}
        with pytest.raises(OSError):
            write_tables(tables, tmp_path, 'csv')
        assert list(tmp_path.iterdir()) == []


def test_parallel_map_keeps_order():
    assert parallel_map(lambda x: x * x, range(5), threads=1) == [0, 1, 4, 9, 16]


@pytest.fixture
def ray_cluster():
    ray = pytest.importorskip('ray')
    yield
    ray.shutdown()


def test_parallel_map_accepts_partial_over_workers(ray_cluster):
    assert parallel_map(partial(np.multiply, 3), range(4), threads=2) == [0, 3, 6, 9]


def test_bell_gammas_match_serial_over_workers(ray_cluster, monkeypatch):
    mdrs = [MdrId.HE, MdrId.B1]
    monkeypatch.setenv(THREADS_ENV, '1')
    serial = bell_gammas(mdrs, grid=16, seed=1)
    monkeypatch.setenv(THREADS_ENV, '2')
    distributed = bell_gammas(mdrs, grid=16, seed=1)
    for mdr in mdrs:
        assert distributed[mdr].value == pytest.approx(serial[mdr].value, abs=1e-12)


@pytest.mark.parametrize("value, expected", [(None, 1), ('4', 4), ('0', 1), ('many', 1)])
def test_num_threads(monkeypatch, value, expected):
    if value is None:
        monkeypatch.delenv(THREADS_ENV, raising=False)
    else:
        monkeypatch.setenv(THREADS_ENV, value)
    assert get_num_threads() == expected


def test_trial_records_are_filtered():
    record = logging.LogRecord('suites', logging.DEBUG, __file__, 1, 'residual', None, None)
    assert FilterTrialRecords().filter(record)
    record.trial = 3
    assert not FilterTrialRecords().filter(record)
