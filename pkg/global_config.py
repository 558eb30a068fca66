SEED = 123
THREADS_ENV = "MDRLAB_THREADS"


####### Configuration of parallelism #######
import logging
import os


def get_num_threads():
    """
    Number of worker processes for sweeps and suites, read from MDRLAB_THREADS (default 1)
    """
    value = os.environ.get(THREADS_ENV, "1")
    try:
        threads = int(value)
    except ValueError:
        logging.getLogger(__name__).warning("Ignoring %s=%r, using a single thread", THREADS_ENV, value)
        return 1
    return max(threads, 1)


####### Configuration of Warning Messages #######
import sys
import re

def suppress_warnings():
    """
    Suppress specific warnings
    """
    if not sys.warnoptions:
        import warnings
        warnings.simplefilter(action='ignore', category=FutureWarning)
        warnings.simplefilter(action='ignore', category=DeprecationWarning)

        # Bounded minimization emits this when the first-entry radius is flat near the optimum
        warnings.filterwarnings(action="ignore",
                                category=RuntimeWarning,
                                message=re.escape("invalid value encountered in sqrt"))
