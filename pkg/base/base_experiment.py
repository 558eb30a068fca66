from abc import abstractmethod

from utils import write_tables

__all__ = ['BaseExperiment']


class BaseExperiment:
    """
    Base class for all experiments:
    Computes a set of named result tables and writes them to the output directory of the run
    """
    name = None

    def __init__(self, config):
        self.config = config
        # create a logger with the experiment name and the verbosity specified in the config
        self.logger = config.get_logger(self.name or type(self).__name__)
        self.out_dir = config.out_dir
        self.fmt = config['format']
        self.seed = config['seed']

    @abstractmethod
    def _tables(self):
        """
        Experiment logic

        :return: dict mapping file stem to pandas DataFrame, in output order
        """
        raise NotImplementedError

    @property
    def succeeded(self):
        """Experiments that check properties override this to report failures"""
        return True

    def run(self):
        """
        Full experiment logic: compute every table, then write them together
        """
        tables = self._tables()
        written = write_tables(tables, self.out_dir, self.fmt)
        for path, df in zip(written, tables.values()):
            self.logger.info("Wrote {} ({} rows)".format(path, len(df)))
        return written
