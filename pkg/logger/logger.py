import logging
import logging.config
import os
from pathlib import Path

from utils import get_project_root, read_json

__all__ = ['setup_logging']

'''
Library modules log through module-level loggers (logger = logging.getLogger(__name__)); the handlers
below the root logger are configured once per run from logger_config.json, which follows
https://docs.python.org/3/library/logging.config.html#logging-config-dictschema
File handlers are redirected into the log directory of the run.
'''


def setup_logging(save_dir, log_config_path='logger/logger_config.json', default_level=logging.INFO):
    """
    Setup logging configuration
    """
    log_config_path = Path(os.path.join(get_project_root(), log_config_path))
    if log_config_path.is_file():
        config = read_json(log_config_path)

        # modify logging paths based on run config; without a run directory only the console is kept
        for name, handler in list(config['handlers'].items()):
            if 'filename' in handler:
                if save_dir is None:
                    del config['handlers'][name]
                    config['root']['handlers'].remove(name)
                else:
                    handler['filename'] = str(Path(save_dir) / handler['filename'])

        logging.config.dictConfig(config)
    else:
        print("Warning: logging configuration file is not found in {}.".format(log_config_path))
        logging.basicConfig(level=default_level)
