import logging
import os
from collections import OrderedDict
from datetime import datetime
from functools import reduce
from operator import getitem
from pathlib import Path

import numpy as np

from base.errors import ConfigError
from global_config import SEED
from logger import setup_logging
from mdr_catalog import MdrId
from utils import TABLE_FORMATS, get_project_root, read_json, write_json

COMMANDS = ('regions', 'fig3a', 'fig3b', 'bounds-table', 'verify', 'max-search')
SUITES = ('prop1', 'weighted', 'gamma', 'lambda', 'maxsearch', 'monogamy')

DEFAULTS = OrderedDict([
    ('command', None),
    ('theta_start', 0.0),
    ('theta_stop', 2 * np.pi),
    ('theta_count', 721),
    ('mdr', [m.value for m in MdrId]),
    ('seed', SEED),
    ('restarts', 50),
    ('out', 'results'),
    ('format', 'csv'),
    ('suite', list(SUITES)),
    ('dims', [2, 3, 4, 5]),
    ('trials', 200),
    ('negative_control', False),
    ('boundary_points', 1000),
    ('region_grid', 0),
    ('delta_a', 1.0),
    ('delta_b', 1.0),
    ('abs_c', 1.0),
    ('gamma_grid', 64),
    ('lambda_trials', 200),
    ('monogamy_samples', 10000),
    ('log_dir', 'saved/log'),
    ('verbosity', 1),
])


def comma_list(value):
    """'he,oz' -> ['he', 'oz']; lists from JSON files pass through"""
    if isinstance(value, str):
        return [item.strip() for item in value.split(',') if item.strip()]
    return list(value)


def int_list(value):
    return [int(item) for item in comma_list(value)]


class ConfigParser:
    def __init__(self, config, modification=None, run_id=None, create_log_dir=True):
        """
        Resolves the run configuration (defaults < config file < command-line flags), validates it and
        sets up the log directory <log_dir>/<command>/<run_id> with the resolved config.json.

         Args:
            config (dict): flat configuration read from a JSON file (may be empty).
            modification (dict, optional): flag values by config key; None values are ignored.
            run_id (str, optional): Identifier for the run. Defaults to None - in this case, timestamp is used
            create_log_dir (bool, optional): Whether to create the log directory and file handlers.
        """
        merged = OrderedDict(DEFAULTS)
        unknown = set(config) - set(DEFAULTS)
        if unknown:
            raise ConfigError("Unknown configuration keys: {}".format(sorted(unknown)))
        merged.update(config)
        self._config = _update_config(merged, modification)
        self._do_some_sanity_checks()

        if run_id is None:  # use timestamp as default run-id
            run_id = datetime.now().strftime(r'%m%d_%H%M%S')
        if create_log_dir:
            self._log_dir = Path(os.path.join(get_project_root(), self.config['log_dir'],
                                              self.config['command'], run_id))
            self._log_dir.mkdir(parents=True, exist_ok=True)
            write_json(self.config, self._log_dir / 'config.json')
        else:
            self._log_dir = None

        setup_logging(self.log_dir)
        self.log_levels = {
            0: logging.WARNING,
            1: logging.INFO,
            2: logging.DEBUG
        }

    @classmethod
    def from_args(cls, args, options=(), run_id=None, create_log_dir=True):
        """
        Initialize this class from parsed cli arguments (an argparse.Namespace). Used in run.py.
        """
        if args.config is not None:
            cfg_path = Path(args.config)
            if not cfg_path.is_absolute() and not cfg_path.is_file():
                cfg_path = get_project_root() / cfg_path
            try:
                config = read_json(cfg_path)
            except (OSError, ValueError) as err:
                raise ConfigError("Cannot read config file {}: {}".format(args.config, err)) from err
        else:
            config = OrderedDict()
        config['command'] = args.command

        # parse custom cli options into dictionary
        modification = {opt.target: getattr(args, _get_opt_name(opt.flags), None) for opt in options}
        return cls(config, modification, run_id=run_id, create_log_dir=create_log_dir)

    def __getitem__(self, name):
        """Access items like ordinary dict."""
        return self.config[name]

    def get_logger(self, name, verbosity=None):
        verbosity = self.config['verbosity'] if verbosity is None else verbosity
        msg_verbosity = 'verbosity option {} is invalid. Valid options are {}.'.format(verbosity,
                                                                                       self.log_levels.keys())
        assert verbosity in self.log_levels, msg_verbosity
        logger = logging.getLogger(name)
        logger.setLevel(self.log_levels[verbosity])
        return logger

    def theta_grid(self):
        """theta3 sweep on [theta_start, theta_stop) with pi/8 appended when it lies inside but off the grid"""
        cfg = self.config
        grid = np.linspace(cfg['theta_start'], cfg['theta_stop'], cfg['theta_count'], endpoint=False)
        special = np.pi / 8
        if cfg['theta_start'] <= special < cfg['theta_stop'] and not np.any(np.isclose(grid, special, rtol=0,
                                                                                          atol=1e-15)):
            grid = np.sort(np.append(grid, special))
        return grid

    @property
    def mdrs(self):
        return [MdrId.parse(name) for name in self.config['mdr']]

    # setting read-only attributes
    @property
    def config(self):
        return self._config

    @property
    def log_dir(self):
        return self._log_dir

    @property
    def out_dir(self):
        return Path(self.config['out'])

    def _do_some_sanity_checks(self):
        cfg = self._config
        try:
            if cfg['command'] not in COMMANDS:
                raise ConfigError("Unknown command {}, expected one of {}".format(cfg['command'], COMMANDS))
            cfg['mdr'] = [MdrId.parse(name).value for name in comma_list(cfg['mdr'])]
            cfg['suite'] = comma_list(cfg['suite'])
            cfg['dims'] = int_list(cfg['dims'])
            for key in ('theta_count', 'restarts', 'trials', 'boundary_points', 'region_grid', 'gamma_grid',
                        'lambda_trials', 'monogamy_samples', 'seed', 'verbosity'):
                cfg[key] = int(cfg[key])
            for key in ('theta_start', 'theta_stop', 'delta_a', 'delta_b', 'abs_c'):
                cfg[key] = float(cfg[key])
        except (TypeError, ValueError) as err:
            raise ConfigError(str(err)) from err

        checks = [
            (cfg['theta_count'] >= 2, "theta_count must be at least 2"),
            (cfg['theta_stop'] > cfg['theta_start'], "theta_stop must exceed theta_start"),
            (cfg['restarts'] >= 1, "restarts must be at least 1"),
            (len(cfg['mdr']) > 0, "mdr selection must not be empty"),
            (cfg['format'] in TABLE_FORMATS, "format must be one of {}".format(TABLE_FORMATS)),
            (cfg['trials'] >= 1, "trials must be at least 1"),
            (len(cfg['dims']) > 0 and all(2 <= n <= 8 for n in cfg['dims']), "dims must lie in [2, 8]"),
            (set(cfg['suite']) <= set(SUITES), "suites must be drawn from {}".format(SUITES)),
            (cfg['boundary_points'] >= 2, "boundary_points must be at least 2"),
            (cfg['gamma_grid'] >= 2, "gamma_grid must be at least 2"),
            (cfg['verbosity'] in (0, 1, 2), "verbosity must be 0, 1 or 2"),
            (min(cfg['delta_a'], cfg['delta_b'], cfg['abs_c']) >= 0, "ensemble data must be nonnegative"),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)


# helper functions to update config dict with custom cli options
def _update_config(config, modification):
    if modification is None:
        return config

    for k, v in modification.items():
        if v is not None:
            if isinstance(v, Path):
                v = v.__str__()
            _set_by_path(config, k, v)
    return config


def _get_opt_name(flags):
    for flg in flags:
        if flg.startswith('--'):
            return flg.replace('--', '').replace('-', '_')
    return flags[0].replace('--', '').replace('-', '_')


def _set_by_path(tree, keys, value):
    """Set a value in a nested object in tree by sequence of keys."""
    keys = keys.split(';')
    _get_by_path(tree, keys[:-1])[keys[-1]] = value


def _get_by_path(tree, keys):
    """Access a nested object in tree by sequence of keys."""
    return reduce(getitem, keys, tree)
