import argparse
import collections
import logging
import sys

import global_config
from base.errors import ConfigError, IdentityViolation
from experiments import EXPERIMENTS
from parse_config import COMMANDS, ConfigParser, comma_list, int_list

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_IO_ERROR = 3

# custom cli options to modify configuration from default values given in json file.
CustomArgs = collections.namedtuple('CustomArgs', 'flags type target')
OPTIONS = [
    CustomArgs(['--seed'], type=int, target='seed'),
    CustomArgs(['-o', '--out'], type=str, target='out'),
    CustomArgs(['--format'], type=str, target='format'),
    CustomArgs(['--mdr'], type=comma_list, target='mdr'),
    CustomArgs(['--theta-count'], type=int, target='theta_count'),
    CustomArgs(['--restarts'], type=int, target='restarts'),
    CustomArgs(['--suite'], type=comma_list, target='suite'),
    CustomArgs(['--dims'], type=int_list, target='dims'),
    CustomArgs(['--trials'], type=int, target='trials'),
    CustomArgs(['--gamma-grid'], type=int, target='gamma_grid'),
    CustomArgs(['-v', '--verbosity'], type=int, target='verbosity'),
    # options added here can be modified by command line flags.
]
# flags without a value; store_true with default None keeps the config file value when absent
SWITCHES = [
    CustomArgs(['--negative-control'], type=bool, target='negative_control'),
]


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-c', '--config', default=None, type=str,
                        help='flat JSON config file (default: None)')
    for opt in OPTIONS:
        common.add_argument(*opt.flags, default=None, type=opt.type)
    for opt in SWITCHES:
        common.add_argument(*opt.flags, default=None, action='store_true')

    parser = argparse.ArgumentParser(description='Measurement-disturbance relations and correlation bounds')
    commands = parser.add_subparsers(dest='command', required=True)
    for command in COMMANDS:
        commands.add_parser(command, parents=[common])
    return parser


def main(argv=None, run_id=None, create_log_dir=True):
    """
    :return: process exit code (0 ok, 1 failed suite or violated identity, 2 invalid configuration, 3 I/O error)
    """
    # argparse itself exits with code 2 on malformed flags
    args = build_parser().parse_args(argv)
    try:
        config = ConfigParser.from_args(args, OPTIONS + SWITCHES, run_id=run_id, create_log_dir=create_log_dir)
    except ConfigError as err:
        logging.getLogger('run').error("Invalid configuration: {}".format(err))
        return EXIT_CONFIG_ERROR
    except OSError as err:
        logging.getLogger('run').error("Cannot create the log directory: {}".format(err))
        return EXIT_IO_ERROR
    logger = config.get_logger('run')

    try:
        experiment = EXPERIMENTS[config['command']](config)
        experiment.run()
    except ConfigError as err:
        logger.error("Invalid configuration: {}".format(err))
        return EXIT_CONFIG_ERROR
    except IdentityViolation as err:
        logger.error("Identity check failed: {}".format(err))
        return EXIT_SUITE_FAILURE
    except OSError as err:
        logger.error("Writing outputs failed: {}".format(err))
        return EXIT_IO_ERROR
    if not experiment.succeeded:
        logger.error("At least one suite failed")
        return EXIT_SUITE_FAILURE
    return EXIT_OK


if __name__ == '__main__':
    global_config.suppress_warnings()
    sys.exit(main())
