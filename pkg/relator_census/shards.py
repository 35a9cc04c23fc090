# relator-census
# shards.py

import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional, Sequence

import tqdm

log = logging.getLogger(__name__)

__all__ = (
    'run_shards', 'run_shards_coro',
)

def _progress(total, desc, enabled):
    return tqdm.tqdm(total=total, desc=desc, ncols=80, leave=False, disable=not enabled)

def run_shards(
    worker: Callable[..., Any],
    shards: Iterable[Sequence],
    progress_bar: bool=False,
    desc: str=None
) -> List[Any]:
    """Run ``worker(*args)`` for every shard in this process.

    Parameters
    ------------
    worker: Callable
        Function evaluated on each shard.
    shards: Iterable[Sequence]
        Positional arguments of each call.
    progress_bar: :class:`bool`
        Enable/Disable progress bar, default to ``False``.
    desc: :class:`str`
        Progress bar label.

    Returns
    --------
    List
        Results in shard order.
    """
    shards = list(shards)
    results = []
    with _progress(len(shards), desc, progress_bar) as bar:
        for args in shards:
            results.append(worker(*args))
            bar.update(1)
    log.debug('Finished %s shards' % len(shards))
    return results

async def run_shards_coro(
    worker: Callable[..., Any],
    shards: Iterable[Sequence],
    workers: Optional[int]=None,
    progress_bar: bool=False,
    desc: str=None
) -> List[Any]:
    """Same as :meth:`run_shards` but the shards run in a process pool driven by asyncio.

    ``worker`` and its arguments must be picklable. Results are returned in
    shard order, whatever order the processes finish in.
    """
    loop = asyncio.get_running_loop()
    shards = list(shards)
    with _progress(len(shards), desc, progress_bar) as bar, \
            ProcessPoolExecutor(max_workers=workers) as executor:

        async def run(args):
            result = await loop.run_in_executor(executor, worker, *args)
            bar.update(1)
            return result

        results = await asyncio.gather(*(run(args) for args in shards))
    log.debug('Finished %s shards on %s workers' % (len(shards), workers or 'default'))
    return list(results)
