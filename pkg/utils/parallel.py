import logging

from tqdm import tqdm

from global_config import get_num_threads

__all__ = ['parallel_map']

logger = logging.getLogger(__name__)


def _call(fn, item):
    return fn(item)


def parallel_map(fn, items, threads=None, desc=None):
    """
    Apply fn to every item; the results come back in the order of items.

    With a single thread the items are mapped in-process behind a progress bar, otherwise every item
    becomes a ray task on a local cluster with num_cpus=threads.
    fn may be any picklable callable, including functools.partial objects.
    """
    items = list(items)
    threads = get_num_threads() if threads is None else threads
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in tqdm(items, desc=desc, disable=desc is None, leave=False)]

    import ray
    if not ray.is_initialized():
        ray.init(num_cpus=threads, include_dashboard=False, log_to_driver=False)
    logger.debug("Mapping %d items over %d ray workers", len(items), threads)
    # ray.remote only accepts plain functions and classes
    remote_call = ray.remote(_call)
    fn_ref = ray.put(fn)
    return ray.get([remote_call.remote(fn_ref, item) for item in items])
